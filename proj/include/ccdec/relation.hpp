#pragma once

#include <cstdint>

#include "ccdec/color_set.hpp"

namespace ccdec {

/// A union of basis relations of one configuration, kept as its color set.
class Relation {
public:
  Relation() = default;
  Relation(ColorSet colors, std::uint64_t home)
      : colors_(std::move(colors)), home_(home) {}

  const ColorSet &colors() const noexcept { return colors_; }
  std::uint64_t home() const noexcept { return home_; }
  bool empty() const noexcept { return colors_.empty(); }
  bool contains(Color c) const noexcept { return colors_.contains(c); }
  std::size_t size() const noexcept { return colors_.size(); }

  friend bool operator==(const Relation &, const Relation &) = default;

private:
  ColorSet colors_;
  std::uint64_t home_ = 0;
};

class Parabolic;

namespace detail {
struct ParabolicAccess {
  static Parabolic make(Relation r);
};
} // namespace detail

/// A relation that has been verified to be an equivalence relation on the
/// points. Only the relation-algebra routines can create one.
class Parabolic {
public:
  const Relation &relation() const noexcept { return relation_; }
  const ColorSet &colors() const noexcept { return relation_.colors(); }
  std::uint64_t home() const noexcept { return relation_.home(); }
  bool contains(Color c) const noexcept { return relation_.contains(c); }
  std::size_t size() const noexcept { return relation_.size(); }

  operator const Relation &() const noexcept { return relation_; }

  friend bool operator==(const Parabolic &, const Parabolic &) = default;

private:
  explicit Parabolic(Relation r) : relation_(std::move(r)) {}
  friend struct detail::ParabolicAccess;

  Relation relation_;
};

inline Parabolic detail::ParabolicAccess::make(Relation r) {
  return Parabolic(std::move(r));
}

} // namespace ccdec
