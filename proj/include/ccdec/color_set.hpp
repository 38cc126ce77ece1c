#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

#include "ccdec/types.hpp"

namespace ccdec {

/// Fixed-universe set of colors stored as a bitset over [0, rank).
class ColorSet {
public:
  ColorSet() = default;
  explicit ColorSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}
  ColorSet(std::size_t universe, std::initializer_list<Color> colors)
      : ColorSet(universe) {
    for (Color c : colors)
      insert(c);
  }

  static ColorSet from_vector(std::size_t universe,
                              const std::vector<Color> &colors) {
    ColorSet s(universe);
    for (Color c : colors)
      s.insert(c);
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }

  bool contains(Color c) const noexcept {
    return c < universe_ && ((words_[c >> 6] >> (c & 63)) & 1u) != 0;
  }
  void insert(Color c) { words_[c >> 6] |= std::uint64_t{1} << (c & 63); }
  void erase(Color c) { words_[c >> 6] &= ~(std::uint64_t{1} << (c & 63)); }

  std::size_t size() const noexcept {
    std::size_t total = 0;
    for (auto w : words_)
      total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }
  bool empty() const noexcept {
    for (auto w : words_)
      if (w != 0)
        return false;
    return true;
  }

  bool is_subset_of(const ColorSet &other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~other.words_[i]) != 0)
        return false;
    return true;
  }
  bool intersects(const ColorSet &other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & other.words_[i]) != 0)
        return true;
    return false;
  }

  ColorSet &operator|=(const ColorSet &other) {
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] |= other.words_[i];
    return *this;
  }
  ColorSet &operator&=(const ColorSet &other) {
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] &= other.words_[i];
    return *this;
  }
  friend ColorSet operator|(ColorSet a, const ColorSet &b) { return a |= b; }
  friend ColorSet operator&(ColorSet a, const ColorSet &b) { return a &= b; }

  template <typename F> void for_each(F &&f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w != 0) {
        const int bit = std::countr_zero(w);
        f(static_cast<Color>(i * 64 + static_cast<std::size_t>(bit)));
        w &= w - 1;
      }
    }
  }

  std::vector<Color> to_vector() const {
    std::vector<Color> out;
    for_each([&](Color c) { out.push_back(c); });
    return out;
  }

  friend bool operator==(const ColorSet &, const ColorSet &) = default;

  /// Orders by cardinality first, then by the ascending color list.
  friend std::strong_ordering canonical_order(const ColorSet &a,
                                              const ColorSet &b) {
    if (auto c = a.size() <=> b.size(); c != 0)
      return c;
    const auto va = a.to_vector();
    const auto vb = b.to_vector();
    return va <=> vb;
  }

  std::size_t hash() const noexcept {
    std::size_t h = universe_;
    for (auto w : words_)
      h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) +
           (h >> 2);
    return h;
  }

private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ColorSetHash {
  std::size_t operator()(const ColorSet &s) const noexcept { return s.hash(); }
};

} // namespace ccdec
