#pragma once

// Pair-level reference computations. Everything here works on raw color
// matrices and explicit pair sets, with no use of the library's structure
// constants, caches or kernels.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "ccdec/color_matrix.hpp"

namespace oracle {

using ccdec::Color;
using ccdec::ColorMatrix;
using ccdec::Point;

/// n×n boolean matrix, row-major.
struct PairSet {
  std::size_t n = 0;
  std::vector<char> bits;

  explicit PairSet(std::size_t n_) : n(n_), bits(n_ * n_, 0) {}
  bool operator()(std::size_t a, std::size_t b) const { return bits[a * n + b]; }
  char &at(std::size_t a, std::size_t b) { return bits[a * n + b]; }
  friend bool operator==(const PairSet &, const PairSet &) = default;
};

inline Color rank_of(const ColorMatrix &m) {
  Color r = 0;
  for (Color c : m.cells())
    r = std::max(r, c + 1);
  return r;
}

inline PairSet pairs_of(const ColorMatrix &m, const std::set<Color> &colors) {
  PairSet p(m.degree());
  for (Point a = 0; a < m.degree(); ++a)
    for (Point b = 0; b < m.degree(); ++b)
      p.at(a, b) = colors.count(m(a, b)) ? 1 : 0;
  return p;
}

inline PairSet compose(const PairSet &r, const PairSet &s) {
  PairSet out(r.n);
  for (std::size_t a = 0; a < r.n; ++a)
    for (std::size_t c = 0; c < r.n; ++c)
      if (r(a, c))
        for (std::size_t b = 0; b < r.n; ++b)
          if (s(c, b))
            out.at(a, b) = 1;
  return out;
}

/// Colors met by `p`; `exact` is cleared if some met color is only
/// partially covered.
inline std::set<Color> colors_in(const ColorMatrix &m, const PairSet &p,
                                 bool *exact = nullptr) {
  std::set<Color> met;
  for (Point a = 0; a < m.degree(); ++a)
    for (Point b = 0; b < m.degree(); ++b)
      if (p(a, b))
        met.insert(m(a, b));
  if (exact) {
    *exact = true;
    for (Point a = 0; a < m.degree(); ++a)
      for (Point b = 0; b < m.degree(); ++b)
        if (!p(a, b) && met.count(m(a, b)))
          *exact = false;
  }
  return met;
}

inline std::set<Color> dot(const ColorMatrix &m, const std::set<Color> &r,
                           const std::set<Color> &s) {
  return colors_in(m, compose(pairs_of(m, r), pairs_of(m, s)));
}

/// |{γ : c(α,γ) = r, c(γ,β) = s}| at the first pair of color t, 0 if t is
/// absent.
inline std::size_t intersection_number(const ColorMatrix &m, Color r, Color s,
                                       Color t) {
  const std::size_t n = m.degree();
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b)
      if (m(a, b) == t) {
        std::size_t count = 0;
        for (Point g = 0; g < n; ++g)
          count += m(a, g) == r && m(g, b) == s;
        return count;
      }
  return 0;
}

/// Number of β with c(α,β) = s for the first α that has one.
inline std::size_t valency(const ColorMatrix &m, Color s) {
  for (Point a = 0; a < m.degree(); ++a) {
    std::size_t count = 0;
    for (Point b = 0; b < m.degree(); ++b)
      count += m(a, b) == s;
    if (count)
      return count;
  }
  return 0;
}

/// Brute-force check of contiguity and the axioms C1-C3.
inline bool satisfies_axioms(const ColorMatrix &m) {
  const std::size_t n = m.degree();
  if (n == 0)
    return false;
  const Color r = rank_of(m);
  std::vector<char> seen(r, 0), diagonal(r, 0);
  for (Color c : m.cells())
    seen[c] = 1;
  if (std::count(seen.begin(), seen.end(), 0))
    return false;
  for (Point a = 0; a < n; ++a)
    diagonal[m(a, a)] = 1;
  std::vector<std::int64_t> transpose(r, -1);
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b) {
      if (a != b && diagonal[m(a, b)])
        return false;
      auto &t = transpose[m(a, b)];
      if (t == -1)
        t = m(b, a);
      else if (t != m(b, a))
        return false;
    }
  using Counts = std::map<std::pair<Color, Color>, std::size_t>;
  std::vector<std::optional<Counts>> reference(r);
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b) {
      Counts counts;
      for (Point g = 0; g < n; ++g)
        ++counts[{m(a, g), m(g, b)}];
      auto &ref = reference[m(a, b)];
      if (!ref)
        ref = std::move(counts);
      else if (*ref != counts)
        return false;
    }
  return true;
}

/// Reflexive, symmetric, transitive closure by Warshall's algorithm.
inline PairSet equivalence_closure(PairSet p) {
  const std::size_t n = p.n;
  for (std::size_t a = 0; a < n; ++a) {
    p.at(a, a) = 1;
    for (std::size_t b = 0; b < n; ++b)
      if (p(a, b))
        p.at(b, a) = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < n; ++a)
      if (p(a, k))
        for (std::size_t b = 0; b < n; ++b)
          if (p(k, b))
            p.at(a, b) = 1;
  return p;
}

inline bool is_equivalence(const PairSet &p) {
  return equivalence_closure(p) == p;
}

/// Raw tuple coloring of a ⊗ b: color (x, y) becomes x * rank(b) + y.
inline ColorMatrix kronecker(const ColorMatrix &a, const ColorMatrix &b) {
  const std::size_t na = a.degree(), nb = b.degree();
  const Color rb = rank_of(b);
  ColorMatrix out(na * nb);
  for (std::size_t i = 0; i < na * nb; ++i)
    for (std::size_t j = 0; j < na * nb; ++j)
      out(static_cast<Point>(i), static_cast<Point>(j)) =
          a(static_cast<Point>(i / nb), static_cast<Point>(j / nb)) * rb +
          b(static_cast<Point>(i % nb), static_cast<Point>(j % nb));
  return out;
}

/// True iff the two colorings induce the same partition of pairs.
inline bool same_partition(const ColorMatrix &a, const ColorMatrix &b) {
  if (a.degree() != b.degree())
    return false;
  std::map<Color, Color> fwd, back;
  for (std::size_t i = 0; i < a.cells().size(); ++i) {
    const Color x = a.cells()[i], y = b.cells()[i];
    auto [f, fi] = fwd.emplace(x, y);
    auto [g, gi] = back.emplace(y, x);
    if (f->second != y || g->second != x)
      return false;
  }
  return true;
}

/// Matrix conjugation: result(perm[a], perm[b]) = m(a, b).
inline ColorMatrix permute(const ColorMatrix &m, const std::vector<Point> &perm) {
  ColorMatrix out(m.degree());
  for (Point a = 0; a < m.degree(); ++a)
    for (Point b = 0; b < m.degree(); ++b)
      out(perm[a], perm[b]) = m(a, b);
  return out;
}

inline std::vector<Point> random_permutation(std::size_t n, std::mt19937_64 &rng) {
  std::vector<Point> p(n);
  std::iota(p.begin(), p.end(), Point{0});
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline std::set<Color> random_color_set(Color rank, std::size_t max_size,
                                        std::mt19937_64 &rng) {
  std::uniform_int_distribution<Color> pick(0, rank - 1);
  std::uniform_int_distribution<std::size_t> size(1, max_size);
  std::set<Color> out;
  const auto k = size(rng);
  for (std::size_t i = 0; i < k; ++i)
    out.insert(pick(rng));
  return out;
}

/// Copy of `m` with one cell changed to a different color in [0, rank).
inline ColorMatrix flip_one_cell(const ColorMatrix &m, std::mt19937_64 &rng) {
  const Color r = rank_of(m);
  ColorMatrix out = m;
  std::uniform_int_distribution<std::size_t> cell(0, m.cells().size() - 1);
  std::uniform_int_distribution<Color> shift(1, r - 1);
  auto &c = out.cells()[cell(rng)];
  c = (c + shift(rng)) % r;
  return out;
}

} // namespace oracle
