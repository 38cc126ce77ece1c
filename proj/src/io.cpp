#include "ccdec/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ccdec::io {

namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::uint64_t> values;
};

[[noreturn]] void fail(std::size_t line, const std::string &what) {
  throw Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ": " + what);
}

std::vector<Line> read_lines(std::istream &in) {
  std::vector<Line> out;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos || text[first] == '#')
      continue;
    Line line{number, {}};
    std::istringstream tokens(text);
    std::string token;
    while (tokens >> token) {
      std::uint64_t v = 0;
      const auto *end = token.data() + token.size();
      const auto [ptr, ec] = std::from_chars(token.data(), end, v);
      if (ec != std::errc() || ptr != end)
        fail(number, "expected a nonnegative integer, got '" + token + "'");
      line.values.push_back(v);
    }
    out.push_back(std::move(line));
  }
  return out;
}

void expect_width(const Line &line, std::size_t width) {
  if (line.values.size() != width)
    fail(line.number, "expected " + std::to_string(width) + " values, got " +
                          std::to_string(line.values.size()));
}

} // namespace

ColorMatrix read_color_matrix(std::istream &in) {
  const auto lines = read_lines(in);
  if (lines.empty())
    throw Error(ErrorCode::ParseError, "missing header \"n r\"");
  expect_width(lines[0], 2);
  const auto n = lines[0].values[0];
  const auto r = lines[0].values[1];
  if (n == 0)
    fail(lines[0].number, "degree must be positive");
  if (n > max_degree())
    throw Error(ErrorCode::DegreeOverflow,
                "degree " + std::to_string(n) + " exceeds the cap " +
                    std::to_string(max_degree()));
  if (lines.size() != n + 1)
    throw Error(ErrorCode::ParseError,
                "expected " + std::to_string(n) + " rows, got " +
                    std::to_string(lines.size() - 1));
  ColorMatrix m(n);
  for (Point a = 0; a < n; ++a) {
    const auto &line = lines[a + 1];
    expect_width(line, n);
    for (Point b = 0; b < n; ++b) {
      if (line.values[b] >= r)
        fail(line.number, "color " + std::to_string(line.values[b]) +
                              " outside [0," + std::to_string(r) + ")");
      m(a, b) = static_cast<Color>(line.values[b]);
    }
  }
  return m;
}

void write_color_matrix(std::ostream &out, const ColorMatrix &m) {
  Color rank = 0;
  for (Color c : m.cells())
    rank = std::max(rank, c + 1);
  out << m.degree() << ' ' << rank << '\n';
  for (Point a = 0; a < m.degree(); ++a) {
    const auto row = m.row(a);
    for (std::size_t b = 0; b < row.size(); ++b)
      out << (b ? " " : "") << row[b];
    out << '\n';
  }
}

std::ifstream open_input(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::ParseError,
                "cannot open '" + path.string() + "' for reading");
  return in;
}

ColorMatrix load_color_matrix(const std::filesystem::path &path) {
  auto in = open_input(path);
  return read_color_matrix(in);
}

void save_color_matrix(const std::filesystem::path &path,
                       const ColorMatrix &m) {
  std::ofstream out(path);
  if (!out)
    throw Error(ErrorCode::InvalidArgument,
                "cannot open '" + path.string() + "' for writing");
  write_color_matrix(out, m);
  if (!out)
    throw Error(ErrorCode::InvalidArgument,
                "write to '" + path.string() + "' failed");
}

PermutationGroupGens read_generators(std::istream &in, std::size_t degree) {
  PermutationGroupGens gens{degree, {}};
  for (const auto &line : read_lines(in)) {
    expect_width(line, degree);
    std::vector<Point> perm(degree);
    for (std::size_t x = 0; x < degree; ++x) {
      if (line.values[x] >= degree)
        fail(line.number, "image " + std::to_string(line.values[x]) +
                              " outside [0," + std::to_string(degree) + ")");
      perm[x] = static_cast<Point>(line.values[x]);
    }
    gens.generators.push_back(std::move(perm));
  }
  return gens;
}

GroupTable read_group_table(std::istream &in) {
  const auto lines = read_lines(in);
  if (lines.empty())
    throw Error(ErrorCode::ParseError, "empty group table");
  const std::size_t g = lines.size();
  GroupTable out;
  out.order = g;
  for (const auto &line : lines) {
    expect_width(line, g);
    std::vector<std::uint32_t> row;
    for (auto v : line.values) {
      if (v >= g)
        fail(line.number, "element " + std::to_string(v) + " outside [0," +
                              std::to_string(g) + ")");
      row.push_back(static_cast<std::uint32_t>(v));
    }
    out.table.push_back(std::move(row));
  }
  return out;
}

Graph read_graph(std::istream &in) {
  const auto lines = read_lines(in);
  if (lines.empty())
    throw Error(ErrorCode::ParseError, "missing header \"n m\"");
  expect_width(lines[0], 2);
  Graph g;
  g.n = lines[0].values[0];
  const auto m = lines[0].values[1];
  if (g.n == 0)
    fail(lines[0].number, "vertex count must be positive");
  if (lines.size() != m + 1)
    throw Error(ErrorCode::ParseError,
                "expected " + std::to_string(m) + " edges, got " +
                    std::to_string(lines.size() - 1));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto &line = lines[i];
    expect_width(line, 2);
    if (line.values[0] >= g.n || line.values[1] >= g.n)
      fail(line.number, "endpoint outside [0," + std::to_string(g.n) + ")");
    g.edges.emplace_back(static_cast<Point>(line.values[0]),
                         static_cast<Point>(line.values[1]));
  }
  return g;
}

nlohmann::json to_json(const Fingerprint &f) {
  return {{"degree", f.degree},
          {"rank", f.rank},
          {"valencies", f.valencies},
          {"fiber_sizes", f.fiber_sizes},
          {"intersection_numbers", f.intersection_numbers}};
}

nlohmann::json decomposition_report(const CC &source,
                                    const TensorDecomposition &d) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto &f : d.factors) {
    std::vector<std::size_t> valencies;
    for (Color c = 0; c < f.rank(); ++c)
      valencies.push_back(f.valency(c));
    std::sort(valencies.begin(), valencies.end());
    factors.push_back({{"degree", f.degree()},
                       {"rank", f.rank()},
                       {"valencies", valencies},
                       {"matrix", f.matrix().to_rows()}});
  }

  nlohmann::json nodes = nlohmann::json::array();
  for (const auto &t : d.trace) {
    nodes.push_back({{"degree", t.degree},
                     {"p_star_size", t.p_star_size},
                     {"p_star_validity", to_string(t.p_star_validity)},
                     {"subsets_tested", t.subsets_tested},
                     {"certificate_size", t.certificate_size},
                     {"recursion_calls", t.recursion_calls},
                     {"left", t.left ? nlohmann::json(*t.left) : nullptr},
                     {"right", t.right ? nlohmann::json(*t.right) : nullptr}});
  }
  const auto &root = d.trace.front();
  return {{"source", to_json(source.fingerprint())},
          {"factors", std::move(factors)},
          {"point_map", d.point_map},
          {"trace",
           {{"p_star_size", root.p_star_size},
            {"subsets_tested", root.subsets_tested},
            {"recursion_calls", root.recursion_calls},
            {"nodes", std::move(nodes)}}}};
}

bool verify_report(const CC &source, const nlohmann::json &report) {
  std::vector<CoherentConfiguration> factors;
  for (const auto &f : report.at("factors")) {
    const auto rows = f.at("matrix").get<std::vector<std::vector<Color>>>();
    factors.push_back(CoherentConfiguration::build(ColorMatrix::from_rows(rows)));
  }
  const auto product = tensor(factors);
  const auto tuples =
      report.at("point_map").get<std::vector<std::vector<Point>>>();
  if (tuples.size() != source.degree() || product.degree() != source.degree())
    return false;
  std::vector<Point> map;
  for (const auto &tuple : tuples) {
    if (tuple.size() != factors.size())
      return false;
    std::size_t index = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (tuple[i] >= factors[i].degree())
        return false;
      index = index * factors[i].degree() + tuple[i];
    }
    map.push_back(static_cast<Point>(index));
  }
  return verify_isomorphism(source, product, map);
}

} // namespace ccdec::io
