#pragma once

// Data-parallel inner loops. Each kernel has a serial reference version,
// kept for testing and benchmarking, and an OpenMP version that must
// produce identical results.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ccdec/color_matrix.hpp"

namespace ccdec::kernels {

struct PointPair {
  Point from = 0;
  Point to = 0;
  friend bool operator==(const PointPair &, const PointPair &) = default;
};

/// One nonzero intersection number c_{left,right}^t for a fixed t.
struct StructureEntry {
  Color left = 0;
  Color right = 0;
  std::uint32_t count = 0;
  friend auto operator<=>(const StructureEntry &,
                          const StructureEntry &) = default;
};

/// Nonzero entries of c_{rs}^t for one t, sorted by (r, s).
using StructureRow = std::vector<StructureEntry>;

/// Counts |{γ : cell(α,γ) = r, cell(γ,β) = s}| for all (r, s) at one pair.
StructureRow structure_row(const ColorMatrix &m, Color rank, PointPair at);

/// One structure row per witness pair.
std::vector<StructureRow>
structure_rows_serial(const ColorMatrix &m, Color rank,
                      std::span<const PointPair> witnesses);
std::vector<StructureRow>
structure_rows_parallel(const ColorMatrix &m, Color rank,
                        std::span<const PointPair> witnesses);

/// Scans every pair and compares its local counts with the structure row of
/// its color (`rows` indexed by color). Returns the first offending pair in
/// row-major order.
std::optional<PointPair>
find_c3_violation_serial(const ColorMatrix &m, Color rank,
                         std::span<const StructureRow> rows);
std::optional<PointPair>
find_c3_violation_parallel(const ColorMatrix &m, Color rank,
                           std::span<const StructureRow> rows);

struct Refinement {
  ColorMatrix colors;
  Color count = 0;
};

/// One round of two-dimensional Weisfeiler-Leman refinement. The new color
/// of (α,β) is determined by (c(α,β), c(β,α), {{(c(α,γ), c(γ,β))}}), and
/// new colors are numbered in lexicographic order of these signatures.
Refinement wl_refine_serial(const ColorMatrix &colors, Color count);
Refinement wl_refine_parallel(const ColorMatrix &colors, Color count);

int max_threads();

} // namespace ccdec::kernels
