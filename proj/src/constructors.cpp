#include "ccdec/constructors.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <string>

namespace ccdec {

namespace {

constexpr std::size_t max_group_order = 512;

void require_positive(std::size_t n) {
  if (n == 0)
    throw Error(ErrorCode::InvalidArgument, "degree must be positive");
  if (n > max_degree())
    throw Error(ErrorCode::DegreeOverflow,
                "degree " + std::to_string(n) + " exceeds the cap " +
                    std::to_string(max_degree()));
}

std::uint32_t inverse_of(const GroupTable &g, std::uint32_t a) {
  for (std::uint32_t b = 0; b < g.order; ++b)
    if (g.table[a][b] == g.identity)
      return b;
  throw Error(ErrorCode::InvalidGroupTable,
              "element " + std::to_string(a) + " has no inverse");
}

} // namespace

CoherentConfiguration orbital_configuration(const PermutationGroupGens &gens) {
  const std::size_t n = gens.degree;
  require_positive(n);
  for (std::size_t g = 0; g < gens.generators.size(); ++g) {
    const auto &perm = gens.generators[g];
    try {
      check_bijection(perm, n);
    } catch (const Error &) {
      throw Error(ErrorCode::InvalidGenerator,
                  "generator " + std::to_string(g) +
                      " is not a permutation of [0," + std::to_string(n) +
                      ")");
    }
  }

  constexpr Color unset = std::numeric_limits<Color>::max();
  ColorMatrix m(n, unset);
  Color next = 0;
  std::deque<PointPair> queue;
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b) {
      if (m(a, b) != unset)
        continue;
      m(a, b) = next;
      queue.push_back({a, b});
      while (!queue.empty()) {
        const auto p = queue.front();
        queue.pop_front();
        for (const auto &perm : gens.generators) {
          Color &c = m(perm[p.from], perm[p.to]);
          if (c == unset) {
            c = next;
            queue.push_back({perm[p.from], perm[p.to]});
          }
        }
      }
      ++next;
    }
  canonicalize_colors(m);
  return CoherentConfiguration::build(std::move(m), Validation::Fast);
}

GroupTable validate_group_table(GroupTable g) {
  const std::size_t n = g.table.size();
  if (n == 0)
    throw Error(ErrorCode::InvalidGroupTable, "empty group table");
  if (n > max_group_order)
    throw Error(ErrorCode::InvalidGroupTable,
                "group order " + std::to_string(n) + " exceeds " +
                    std::to_string(max_group_order));
  g.order = n;
  for (const auto &row : g.table) {
    if (row.size() != n)
      throw Error(ErrorCode::InvalidGroupTable, "group table is not square");
    for (auto v : row)
      if (v >= n)
        throw Error(ErrorCode::InvalidGroupTable,
                    "entry " + std::to_string(v) + " out of range");
  }
  bool found = false;
  for (std::uint32_t e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (std::uint32_t a = 0; a < n && ok; ++a)
      ok = g.table[e][a] == a && g.table[a][e] == a;
    if (ok) {
      g.identity = e;
      found = true;
    }
  }
  if (!found)
    throw Error(ErrorCode::InvalidGroupTable, "no identity element");
  for (std::uint32_t a = 0; a < n; ++a) {
    const auto b = inverse_of(g, a);
    if (g.table[b][a] != g.identity)
      throw Error(ErrorCode::InvalidGroupTable,
                  "element " + std::to_string(a) + " has no two-sided inverse");
  }
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      const auto ab = g.table[a][b];
      for (std::uint32_t c = 0; c < n; ++c)
        if (g.table[ab][c] != g.table[a][g.table[b][c]])
          throw Error(ErrorCode::InvalidGroupTable,
                      "multiplication is not associative at (" +
                          std::to_string(a) + "," + std::to_string(b) + "," +
                          std::to_string(c) + ")");
    }
  return g;
}

namespace {

// Class index of every element, classes numbered by minimal member.
std::vector<std::uint32_t> conjugacy_classes(const GroupTable &g) {
  constexpr std::uint32_t unset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> cls(g.order, unset);
  std::vector<std::uint32_t> inv(g.order);
  for (std::uint32_t a = 0; a < g.order; ++a)
    inv[a] = inverse_of(g, a);
  std::uint32_t next = 0;
  for (std::uint32_t a = 0; a < g.order; ++a) {
    if (cls[a] != unset)
      continue;
    for (std::uint32_t x = 0; x < g.order; ++x)
      cls[g.table[g.table[x][a]][inv[x]]] = next;
    ++next;
  }
  return cls;
}

} // namespace

CoherentConfiguration conjugacy_class_scheme(const GroupTable &table) {
  const auto g = validate_group_table(table);
  const auto cls = conjugacy_classes(g);
  std::vector<std::uint32_t> inv(g.order);
  for (std::uint32_t a = 0; a < g.order; ++a)
    inv[a] = inverse_of(g, a);
  ColorMatrix m(g.order);
  for (Point a = 0; a < g.order; ++a)
    for (Point b = 0; b < g.order; ++b)
      m(a, b) = cls[g.table[b][inv[a]]];
  canonicalize_colors(m);
  return CoherentConfiguration::build(std::move(m), Validation::Fast);
}

std::vector<std::size_t> conjugacy_class_sizes(const GroupTable &table) {
  const auto g = validate_group_table(table);
  std::vector<std::uint32_t> inv(g.order);
  for (std::uint32_t a = 0; a < g.order; ++a)
    inv[a] = inverse_of(g, a);
  std::vector<bool> done(g.order, false);
  std::vector<std::size_t> sizes;
  for (std::uint32_t a = 0; a < g.order; ++a) {
    if (done[a])
      continue;
    std::size_t size = 0;
    for (std::uint32_t x = 0; x < g.order; ++x) {
      const auto c = g.table[g.table[x][a]][inv[x]];
      if (!done[c]) {
        done[c] = true;
        ++size;
      }
    }
    sizes.push_back(size);
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

CoherentConfiguration wl_closure(const ColorMatrix &initial) {
  const std::size_t n = initial.degree();
  require_positive(n);
  ColorMatrix colors(n);
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b)
      colors(a, b) = initial(a, b) * 2 + (a == b ? 0 : 1);
  Color count = compact_colors(colors);
  for (;;) {
    auto next = kernels::wl_refine_parallel(colors, count);
    const bool stable = next.count == count;
    colors = std::move(next.colors);
    count = next.count;
    if (stable)
      break;
  }
  canonicalize_colors(colors);
  return CoherentConfiguration::build(std::move(colors), Validation::Full);
}

ColorMatrix graph_coloring(std::size_t n,
                           const std::vector<std::pair<Point, Point>> &edges) {
  ColorMatrix m(n, 0);
  for (const auto &[u, v] : edges) {
    if (u >= n || v >= n)
      throw Error(ErrorCode::InvalidArgument,
                  "edge endpoint out of range [0," + std::to_string(n) + ")");
    if (u == v)
      continue;
    m(u, v) = 1;
    m(v, u) = 1;
  }
  return m;
}

CoherentConfiguration trivial_scheme(std::size_t n) {
  require_positive(n);
  ColorMatrix m(n, 1);
  for (Point a = 0; a < n; ++a)
    m(a, a) = 0;
  return CoherentConfiguration::build(std::move(m), Validation::Fast);
}

CoherentConfiguration discrete_configuration(std::size_t n) {
  require_positive(n);
  ColorMatrix m(n);
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b)
      m(a, b) = static_cast<Color>(a * n + b);
  canonicalize_colors(m);
  return CoherentConfiguration::build(std::move(m), Validation::Fast);
}

Relabeled random_relabel(const CoherentConfiguration &cc, std::uint64_t seed) {
  std::vector<Point> perm(cc.degree());
  std::iota(perm.begin(), perm.end(), Point{0});
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  return {relabel(cc, perm), std::move(perm)};
}

GroupTable group_from_permutations(const PermutationGroupGens &gens) {
  const std::size_t n = gens.degree;
  for (const auto &g : gens.generators)
    check_bijection(g, n);
  std::vector<Point> id(n);
  std::iota(id.begin(), id.end(), Point{0});
  // x^(ab) = (x^a)^b
  auto compose = [n](const std::vector<Point> &a, const std::vector<Point> &b) {
    std::vector<Point> c(n);
    for (std::size_t x = 0; x < n; ++x)
      c[x] = b[a[x]];
    return c;
  };
  std::map<std::vector<Point>, std::uint32_t> index{{id, 0}};
  std::vector<std::vector<Point>> elements{id};
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (const auto &g : gens.generators) {
      auto c = compose(elements[i], g);
      if (index.emplace(c, static_cast<std::uint32_t>(elements.size())).second)
        elements.push_back(std::move(c));
      if (elements.size() > max_group_order)
        throw Error(ErrorCode::InvalidGroupTable,
                    "group order exceeds " + std::to_string(max_group_order));
    }
  GroupTable out;
  out.order = elements.size();
  out.identity = 0;
  out.table.assign(out.order, std::vector<std::uint32_t>(out.order));
  for (std::size_t a = 0; a < out.order; ++a)
    for (std::size_t b = 0; b < out.order; ++b)
      out.table[a][b] = index.at(compose(elements[a], elements[b]));
  return out;
}

PermutationGroupGens symmetric_group_action(std::size_t n) {
  PermutationGroupGens gens{n, {}};
  if (n >= 2) {
    std::vector<Point> swap(n), cycle(n);
    std::iota(swap.begin(), swap.end(), Point{0});
    std::swap(swap[0], swap[1]);
    for (std::size_t x = 0; x < n; ++x)
      cycle[x] = static_cast<Point>((x + 1) % n);
    gens.generators = {swap, cycle};
  }
  return gens;
}

GroupTable symmetric_group(std::size_t n) {
  return group_from_permutations(symmetric_group_action(n));
}

GroupTable cyclic_group(std::size_t n) {
  if (n == 0)
    throw Error(ErrorCode::InvalidArgument, "group order must be positive");
  GroupTable g;
  g.order = n;
  g.table.assign(n, std::vector<std::uint32_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      g.table[a][b] = static_cast<std::uint32_t>((a + b) % n);
  return g;
}

GroupTable dihedral_group(std::size_t n) {
  if (n < 3)
    throw Error(ErrorCode::InvalidArgument, "dihedral group needs n >= 3");
  std::vector<Point> rotation(n), reflection(n);
  for (std::size_t x = 0; x < n; ++x) {
    rotation[x] = static_cast<Point>((x + 1) % n);
    reflection[x] = static_cast<Point>((n - x) % n);
  }
  return group_from_permutations({n, {rotation, reflection}});
}

GroupTable quaternion_group() {
  // Element 4*sign + unit, units 1, i, j, k.
  // unit_product[u][v] = (sign, unit) of u·v.
  static constexpr int sign[4][4] = {
      {0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  static constexpr int unit[4][4] = {
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  GroupTable g;
  g.order = 8;
  g.table.assign(8, std::vector<std::uint32_t>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int s = (a / 4 + b / 4 + sign[a % 4][b % 4]) % 2;
      g.table[a][b] = static_cast<std::uint32_t>(4 * s + unit[a % 4][b % 4]);
    }
  return g;
}

GroupTable direct_product(const GroupTable &a, const GroupTable &b) {
  const std::size_t na = a.table.size(), nb = b.table.size();
  GroupTable g;
  g.order = na * nb;
  if (g.order > max_group_order)
    throw Error(ErrorCode::InvalidGroupTable,
                "group order exceeds " + std::to_string(max_group_order));
  g.identity = static_cast<std::uint32_t>(a.identity * nb + b.identity);
  g.table.assign(g.order, std::vector<std::uint32_t>(g.order));
  for (std::size_t x = 0; x < g.order; ++x)
    for (std::size_t y = 0; y < g.order; ++y)
      g.table[x][y] = static_cast<std::uint32_t>(
          a.table[x / nb][y / nb] * nb + b.table[x % nb][y % nb]);
  return g;
}

PermutationGroupGens regular_action(const GroupTable &table) {
  const auto g = validate_group_table(table);
  PermutationGroupGens gens{g.order, {}};
  for (std::uint32_t s = 0; s < g.order; ++s) {
    std::vector<Point> perm(g.order);
    for (std::uint32_t x = 0; x < g.order; ++x)
      perm[x] = g.table[x][s];
    gens.generators.push_back(std::move(perm));
  }
  return gens;
}

} // namespace ccdec
