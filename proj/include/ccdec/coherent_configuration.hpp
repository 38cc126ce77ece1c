#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "ccdec/color_matrix.hpp"
#include "ccdec/color_set.hpp"
#include "ccdec/kernels.hpp"
#include "ccdec/relation.hpp"

namespace ccdec {

using kernels::PointPair;
using kernels::StructureRow;

enum class Validation {
  /// Every pair is checked against its color's intersection numbers.
  Full,
  /// Partial C3 check: one extra witness pair per color.
  Fast,
};

/// Isomorphism-invariant summary. Equal fingerprints are necessary, not
/// sufficient, for isomorphism.
struct Fingerprint {
  std::size_t degree = 0;
  Color rank = 0;
  std::vector<std::size_t> valencies;
  std::vector<std::uint32_t> intersection_numbers;
  std::vector<std::size_t> fiber_sizes;

  friend auto operator<=>(const Fingerprint &, const Fingerprint &) = default;
};

/// Immutable coherent configuration on the points [0, degree).
///
/// Queries are safe to call concurrently; derived tables that are built on
/// first use are guarded internally.
class CoherentConfiguration {
public:
  /// Validates axioms C1-C3 and computes fibers, valencies, supports and
  /// the transpose map. Colors keep the caller's numbering.
  ///
  /// Errors: NotSquare, NonContiguousColors, InvalidDiagonal (C1),
  /// InvalidTranspose (C2), InvalidIntersectionNumbers (C3), DegreeOverflow.
  static CoherentConfiguration build(ColorMatrix matrix,
                                     Validation mode = Validation::Full);

  std::size_t degree() const noexcept { return matrix_.degree(); }
  Color rank() const noexcept { return rank_; }
  const ColorMatrix &matrix() const noexcept { return matrix_; }
  Color cell(Point a, Point b) const noexcept { return matrix_(a, b); }

  /// Identity shared by copies; relations carry it to detect mixing.
  std::uint64_t id() const noexcept { return id_; }

  Color transpose(Color s) const { return transpose_[check(s)]; }
  bool is_reflexive(Color s) const { return reflexive_.contains(check(s)); }
  const ColorSet &reflexive_colors() const noexcept { return reflexive_; }
  ColorSet all_colors() const;

  std::size_t fiber_count() const noexcept { return fibers_.size(); }
  std::size_t fiber_of(Point a) const { return fiber_of_point_.at(a); }
  const std::vector<Point> &fiber(std::size_t f) const { return fibers_.at(f); }
  bool is_homogeneous() const noexcept { return fibers_.size() == 1; }

  std::size_t valency(Color s) const { return valency_[check(s)]; }
  std::size_t left_fiber(Color s) const { return left_fiber_[check(s)]; }
  std::size_t right_fiber(Color s) const { return right_fiber_[check(s)]; }
  /// First pair of color s in row-major order.
  PointPair witness(Color s) const { return witness_[check(s)]; }

  /// c_{rs}^t = |αr ∩ βs*| for any (α,β) of color t.
  std::uint32_t intersection_number(Color r, Color s, Color t) const;
  /// All nonzero c_{rs}^t for a fixed t, sorted by (r, s).
  const StructureRow &structure_row(Color t) const;
  /// Colors t with c_{rs}^t > 0, ascending; empty when supports differ.
  std::span<const Color> products(Color r, Color s) const;

  /// No irreflexive color s with valency(s) = valency(s*) = 1.
  bool is_thick() const;
  /// valency(s) * valency(s*).
  std::size_t d_value(Color s) const {
    return valency(s) * valency(transpose(s));
  }

  Fingerprint fingerprint() const;

  /// Memo of parabolic checks keyed by color set; used by relation-algebra.
  struct ParabolicMemo;
  ParabolicMemo &parabolic_memo() const;

private:
  struct Cache;

  CoherentConfiguration() = default;
  Color check(Color s) const;

  ColorMatrix matrix_;
  Color rank_ = 0;
  std::uint64_t id_ = 0;
  std::vector<Color> transpose_;
  ColorSet reflexive_;
  std::vector<std::size_t> fiber_of_point_;
  std::vector<std::vector<Point>> fibers_;
  std::vector<std::size_t> valency_;
  std::vector<std::size_t> left_fiber_;
  std::vector<std::size_t> right_fiber_;
  std::vector<PointPair> witness_;
  std::shared_ptr<Cache> cache_;
};

struct CoherentConfiguration::ParabolicMemo {
  std::mutex mutex;
  std::unordered_map<ColorSet, bool, ColorSetHash> verdicts;
};

using CC = CoherentConfiguration;

/// Tensor product; points ordered lexicographically in factor points,
/// colors canonically renumbered. Errors: InvalidArgument (no factors),
/// DegreeOverflow.
CoherentConfiguration tensor(std::span<const CoherentConfiguration> factors);

struct Quotient {
  CoherentConfiguration configuration;
  /// Point of the source -> class index (classes ordered by minimal member).
  std::vector<Point> projection;
};

/// Quotient modulo a parabolic. Errors: HomeMismatch.
Quotient quotient(const CoherentConfiguration &cc, const Parabolic &e);

/// Conjugates the color matrix by a point bijection: the new cell at
/// (perm[a], perm[b]) is the old cell at (a, b). Colors are kept.
/// Errors: NotABijection.
CoherentConfiguration relabel(const CoherentConfiguration &cc,
                              std::span<const Point> perm);

/// Throws Error(NotABijection) unless perm is a permutation of [0, n).
void check_bijection(std::span<const Point> perm, std::size_t n);

} // namespace ccdec
