#pragma once

#include <span>
#include <vector>

#include "ccdec/types.hpp"

namespace ccdec {

/// Square array of colors; cell(a, b) is the color of the pair (a, b).
class ColorMatrix {
public:
  ColorMatrix() = default;
  explicit ColorMatrix(std::size_t degree, Color fill = 0)
      : degree_(degree), cells_(degree * degree, fill) {}

  /// Throws Error(NotSquare) on ragged or non-square input.
  static ColorMatrix from_rows(const std::vector<std::vector<Color>> &rows);

  std::size_t degree() const noexcept { return degree_; }

  Color operator()(Point a, Point b) const noexcept {
    return cells_[static_cast<std::size_t>(a) * degree_ + b];
  }
  Color &operator()(Point a, Point b) noexcept {
    return cells_[static_cast<std::size_t>(a) * degree_ + b];
  }

  std::span<const Color> row(Point a) const noexcept {
    return {cells_.data() + static_cast<std::size_t>(a) * degree_, degree_};
  }
  const std::vector<Color> &cells() const noexcept { return cells_; }
  std::vector<Color> &cells() noexcept { return cells_; }

  std::vector<std::vector<Color>> to_rows() const;

  friend bool operator==(const ColorMatrix &, const ColorMatrix &) = default;

private:
  std::size_t degree_ = 0;
  std::vector<Color> cells_;
};

/// Renumbers the colors of `m` in place so that they are 0-based contiguous
/// in order of first occurrence (row-major). Returns the number of colors.
Color compact_colors(ColorMatrix &m);

/// Renumbers the colors of a coherent coloring canonically: reflexive colors
/// first, then by (left fiber, right fiber, valency, first occurrence).
/// Fibers are numbered by their minimal point. Expects a contiguous
/// coloring in which every color is either reflexive or irreflexive.
Color canonicalize_colors(ColorMatrix &m);

} // namespace ccdec
