#include "ccdec/cli.hpp"

#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "ccdec/constructors.hpp"
#include "ccdec/decomposition.hpp"
#include "ccdec/io.hpp"
#include "ccdec/relation_algebra.hpp"

namespace ccdec {

int exit_code(ErrorCode code) {
  switch (code) {
  case ErrorCode::InvalidDiagonal:
  case ErrorCode::InvalidTranspose:
  case ErrorCode::InvalidIntersectionNumbers:
    return 2;
  case ErrorCode::NotThick:
    return 3;
  case ErrorCode::NotAParabolic:
    return 4;
  case ErrorCode::InvalidArgument:
  case ErrorCode::ParseError:
  case ErrorCode::NotSquare:
  case ErrorCode::NonContiguousColors:
  case ErrorCode::DegreeOverflow:
  case ErrorCode::InvalidGenerator:
  case ErrorCode::InvalidGroupTable:
    return 1;
  case ErrorCode::NotABijection:
  case ErrorCode::HomeMismatch:
  case ErrorCode::ClosureNotARelation:
  case ErrorCode::NotCartesian:
  case ErrorCode::DegreeMismatch:
  case ErrorCode::VerificationFailed:
    return 5;
  }
  return 5;
}

namespace {

const char *yes_no(bool b) { return b ? "yes" : "no"; }

CC load(const std::string &path, Validation mode = Validation::Full) {
  return CC::build(io::load_color_matrix(path), mode);
}

void save(const std::string &path, const CC &cc, std::ostream &out) {
  io::save_color_matrix(path, cc.matrix());
  out << "wrote " << path << ": degree " << cc.degree() << ", rank "
      << cc.rank() << '\n';
}

void print_info(const CC &cc, std::size_t cap, std::ostream &out) {
  out << "degree " << cc.degree() << '\n'
      << "rank " << cc.rank() << '\n'
      << "homogeneous " << yes_no(cc.is_homogeneous()) << '\n'
      << "thick " << yes_no(cc.is_thick()) << '\n'
      << "fibers " << cc.fiber_count() << ':';
  for (std::size_t f = 0; f < cc.fiber_count(); ++f)
    out << ' ' << cc.fiber(f).size();
  out << '\n' << "color valency transpose left_fiber right_fiber\n";
  for (Color c = 0; c < cc.rank(); ++c)
    out << "  " << c << ' ' << cc.valency(c) << ' ' << cc.transpose(c) << ' '
        << cc.left_fiber(c) << ' ' << cc.right_fiber(c) << '\n';
  const auto parabolics = enumerate_parabolics(cc, cap);
  out << "parabolics " << (parabolics.size() >= cap ? ">= " : "")
      << parabolics.size() << '\n'
      << "fingerprint " << io::to_json(cc.fingerprint()).dump() << '\n';
}

void print_summary(const TensorDecomposition &d, std::ostream &out) {
  out << d.factors.size() << (d.factors.size() == 1 ? " factor: " : " factors: ");
  for (std::size_t i = 0; i < d.factors.size(); ++i)
    out << (i ? "; " : "") << "degree " << d.factors[i].degree() << " rank "
        << d.factors[i].rank();
  const auto &root = d.trace.front();
  out << '\n'
      << "p_star_size " << root.p_star_size << ", subsets_tested "
      << root.subsets_tested << ", recursion_calls " << root.recursion_calls
      << '\n';
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err) {
  CLI::App app{"Coherent configurations and their tensor decompositions",
               "ccdec"};
  app.require_subcommand(1);

  std::string file, output, json_out, gens_file;
  std::vector<std::string> inputs;
  std::vector<Color> colors;
  std::size_t degree = 0;
  std::size_t cap = 256;
  std::uint64_t merge_seed = 0;
  bool fast = false;

  auto *validate = app.add_subcommand("validate", "Check the axioms C1-C3");
  validate->add_option("file", file, "Color matrix file")->required();
  validate->add_flag("--fast", fast,
                     "Check one extra pair per color instead of all pairs");

  auto *info = app.add_subcommand("info", "Print structural data");
  info->add_option("file", file, "Color matrix file")->required();
  info->add_option("--cap", cap, "Stop counting parabolics at this many")
      ->capture_default_str();

  auto *decompose =
      app.add_subcommand("decompose", "Maximal tensor decomposition");
  decompose->add_option("file", file, "Color matrix file")->required();
  decompose->add_option("--json", json_out, "Write the full report here");
  auto *seed_opt = decompose->add_option(
      "--merge-seed", merge_seed, "Randomize the merge order with this seed");

  auto *tensor_cmd = app.add_subcommand("tensor", "Tensor product of inputs");
  tensor_cmd->add_option("inputs", inputs, "Color matrix files")
      ->required()
      ->expected(2, -1);
  tensor_cmd->add_option("-o,--output", output)->required();

  auto *quotient_cmd =
      app.add_subcommand("quotient", "Quotient by a parabolic");
  quotient_cmd->add_option("file", file, "Color matrix file")->required();
  quotient_cmd
      ->add_option("--colors", colors,
                   "Colors of the parabolic, reflexive ones included")
      ->required()
      ->delimiter(',');
  quotient_cmd->add_option("-o,--output", output)->required();

  auto *orbital =
      app.add_subcommand("orbital", "Orbitals of a permutation group");
  orbital->add_option("--degree", degree)->required();
  orbital->add_option("--gens", gens_file, "One image list per line")
      ->required();
  orbital->add_option("-o,--output", output)->required();

  auto *group = app.add_subcommand("group-scheme",
                                   "Conjugacy class scheme of a group table");
  group->add_option("table", file, "Multiplication table file")->required();
  group->add_option("-o,--output", output)->required();

  auto *wl = app.add_subcommand("wl", "Coherent closure of a graph");
  wl->add_option("graph", file, "Edge list with an \"n m\" header")
      ->required();
  wl->add_option("-o,--output", output)->required();

  std::vector<const char *> argv{"ccdec"};
  for (const auto &a : args)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*validate) {
      const auto cc = load(file, fast ? Validation::Fast : Validation::Full);
      out << "valid, degree " << cc.degree() << ", rank " << cc.rank()
          << ", thick=" << yes_no(cc.is_thick()) << '\n';
    } else if (*info) {
      print_info(load(file), cap, out);
    } else if (*decompose) {
      const auto cc = load(file);
      DecompositionOptions options;
      if (*seed_opt)
        options.merge_seed = merge_seed;
      const auto d = algorithm_c(cc, options);
      print_summary(d, out);
      if (!json_out.empty()) {
        std::ofstream f(json_out);
        f << io::decomposition_report(cc, d).dump(2) << '\n';
        if (!f)
          throw Error(ErrorCode::InvalidArgument,
                      "cannot write '" + json_out + "'");
      }
    } else if (*tensor_cmd) {
      std::vector<CC> factors;
      for (const auto &path : inputs)
        factors.push_back(load(path));
      save(output, tensor(factors), out);
    } else if (*quotient_cmd) {
      const auto cc = load(file);
      const auto e = as_parabolic(cc, make_relation(cc, colors));
      save(output, quotient(cc, e).configuration, out);
    } else if (*orbital) {
      auto in = io::open_input(gens_file);
      save(output, orbital_configuration(io::read_generators(in, degree)),
           out);
    } else if (*group) {
      auto in = io::open_input(file);
      save(output, conjugacy_class_scheme(io::read_group_table(in)), out);
    } else if (*wl) {
      auto in = io::open_input(file);
      const auto g = io::read_graph(in);
      save(output, wl_closure(graph_coloring(g.n, g.edges)), out);
    }
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception &e) {
    err << "error: internal: " << e.what() << '\n';
    return 5;
  }
  return 0;
}

} // namespace ccdec
