#include "ccdec/color_matrix.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>

namespace ccdec {

ColorMatrix ColorMatrix::from_rows(const std::vector<std::vector<Color>> &rows) {
  const std::size_t n = rows.size();
  ColorMatrix m(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (rows[a].size() != n)
      throw Error(ErrorCode::NotSquare,
                  "row " + std::to_string(a) + " has " +
                      std::to_string(rows[a].size()) + " entries, expected " +
                      std::to_string(n));
    std::copy(rows[a].begin(), rows[a].end(), m.cells_.begin() + a * n);
  }
  return m;
}

std::vector<std::vector<Color>> ColorMatrix::to_rows() const {
  std::vector<std::vector<Color>> rows(degree_);
  for (std::size_t a = 0; a < degree_; ++a)
    rows[a].assign(cells_.begin() + a * degree_,
                   cells_.begin() + (a + 1) * degree_);
  return rows;
}

Color compact_colors(ColorMatrix &m) {
  constexpr Color unset = std::numeric_limits<Color>::max();
  Color max_color = 0;
  for (Color c : m.cells())
    max_color = std::max(max_color, c);
  std::vector<Color> remap(m.cells().empty() ? 0 : std::size_t{max_color} + 1,
                           unset);
  Color next = 0;
  for (Color &c : m.cells()) {
    if (remap[c] == unset)
      remap[c] = next++;
    c = remap[c];
  }
  return next;
}

Color canonicalize_colors(ColorMatrix &m) {
  const Color rank = compact_colors(m);
  const std::size_t n = m.degree();
  constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();

  // Fibers in order of their minimal point.
  std::vector<std::size_t> fiber_of_diag(rank, unset);
  std::vector<std::size_t> fiber(n);
  std::size_t fibers = 0;
  for (Point a = 0; a < n; ++a) {
    const Color d = m(a, a);
    if (fiber_of_diag[d] == unset)
      fiber_of_diag[d] = fibers++;
    fiber[a] = fiber_of_diag[d];
  }

  struct Key {
    bool irreflexive;
    std::size_t left, right, valency, first;
  };
  std::vector<Key> keys(rank, Key{true, 0, 0, 0, unset});
  std::vector<std::size_t> row_count(rank, 0);
  for (Point a = 0; a < n; ++a) {
    for (Point b = 0; b < n; ++b) {
      const Color c = m(a, b);
      Key &k = keys[c];
      if (k.first == unset) {
        k = Key{a != b, fiber[a], fiber[b], 0, std::size_t{a} * n + b};
      }
      if (k.first / n == a)
        ++row_count[c];
    }
  }
  for (Color c = 0; c < rank; ++c)
    keys[c].valency = row_count[c];

  std::vector<Color> order(rank);
  std::iota(order.begin(), order.end(), Color{0});
  std::sort(order.begin(), order.end(), [&](Color x, Color y) {
    const Key &a = keys[x];
    const Key &b = keys[y];
    return std::tie(a.irreflexive, a.left, a.right, a.valency, a.first) <
           std::tie(b.irreflexive, b.left, b.right, b.valency, b.first);
  });
  std::vector<Color> remap(rank);
  for (Color i = 0; i < rank; ++i)
    remap[order[i]] = i;
  for (Color &c : m.cells())
    c = remap[c];
  return rank;
}

} // namespace ccdec
