#include "ccdec/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ccdec::kernels {

namespace {

// Dense scratch counters are used while rank^2 stays below this bound.
constexpr std::uint64_t dense_scratch_limit = std::uint64_t{1} << 20;

void collect_keys(const ColorMatrix &m, Color rank, PointPair at,
                  std::vector<std::uint64_t> &keys) {
  const std::size_t n = m.degree();
  keys.resize(n);
  const auto row = m.row(at.from);
  for (Point g = 0; g < n; ++g)
    keys[g] = std::uint64_t{row[g]} * rank + m(g, at.to);
}

StructureRow run_length(std::vector<std::uint64_t> &keys, Color rank) {
  std::sort(keys.begin(), keys.end());
  StructureRow out;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i])
      ++j;
    out.push_back({static_cast<Color>(keys[i] / rank),
                   static_cast<Color>(keys[i] % rank),
                   static_cast<std::uint32_t>(j - i)});
    i = j;
  }
  return out;
}

// Compares the local counts of one pair with `expected`.
class PairChecker {
public:
  PairChecker(std::size_t n, Color rank)
      : rank_(rank),
        dense_(std::uint64_t{rank} * rank <= dense_scratch_limit) {
    keys_.reserve(n);
    if (dense_)
      scratch_.assign(std::size_t{rank} * rank, 0);
  }

  bool matches(const ColorMatrix &m, PointPair at,
               const StructureRow &expected) {
    collect_keys(m, rank_, at, keys_);
    if (!dense_)
      return run_length(keys_, rank_) == expected;

    for (const auto &e : expected)
      scratch_[std::size_t{e.left} * rank_ + e.right] +=
          static_cast<std::int32_t>(e.count);
    bool ok = true;
    for (auto k : keys_)
      if (--scratch_[k] < 0)
        ok = false;
    // Every γ contributes one key and the expected counts also sum to n, so
    // no negative counter means equality.
    for (auto k : keys_)
      scratch_[k] = 0;
    for (const auto &e : expected)
      scratch_[std::size_t{e.left} * rank_ + e.right] = 0;
    return ok;
  }

private:
  Color rank_;
  bool dense_;
  std::vector<std::uint64_t> keys_;
  std::vector<std::int32_t> scratch_;
};

using Signature = std::vector<std::uint64_t>;

void pair_signature(const ColorMatrix &colors, Color count, Point a, Point b,
                    std::vector<std::uint64_t> &keys, Signature &out) {
  const std::size_t n = colors.degree();
  keys.resize(n);
  const auto row = colors.row(a);
  for (Point g = 0; g < n; ++g)
    keys[g] = std::uint64_t{row[g]} * count + colors(g, b);
  std::sort(keys.begin(), keys.end());
  out.clear();
  out.push_back(colors(a, b));
  out.push_back(colors(b, a));
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && keys[j] == keys[i])
      ++j;
    out.push_back(keys[i]);
    out.push_back(j - i);
    i = j;
  }
}

Refinement number_signatures(std::size_t n,
                             const std::vector<Signature> &signatures) {
  std::vector<std::size_t> order(signatures.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return signatures[x] < signatures[y];
  });
  Refinement out{ColorMatrix(n), 0};
  auto &cells = out.colors.cells();
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && signatures[order[i]] != signatures[order[i - 1]])
      ++out.count;
    cells[order[i]] = out.count;
  }
  if (!order.empty())
    ++out.count;
  return out;
}

} // namespace

StructureRow structure_row(const ColorMatrix &m, Color rank, PointPair at) {
  std::vector<std::uint64_t> keys;
  collect_keys(m, rank, at, keys);
  return run_length(keys, rank);
}

std::vector<StructureRow>
structure_rows_serial(const ColorMatrix &m, Color rank,
                      std::span<const PointPair> witnesses) {
  std::vector<StructureRow> rows(witnesses.size());
  std::vector<std::uint64_t> keys;
  for (std::size_t t = 0; t < witnesses.size(); ++t) {
    collect_keys(m, rank, witnesses[t], keys);
    rows[t] = run_length(keys, rank);
  }
  return rows;
}

std::vector<StructureRow>
structure_rows_parallel(const ColorMatrix &m, Color rank,
                        std::span<const PointPair> witnesses) {
  std::vector<StructureRow> rows(witnesses.size());
  const auto count = static_cast<std::ptrdiff_t>(witnesses.size());
#pragma omp parallel
  {
    std::vector<std::uint64_t> keys;
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t t = 0; t < count; ++t) {
      collect_keys(m, rank, witnesses[static_cast<std::size_t>(t)], keys);
      rows[static_cast<std::size_t>(t)] = run_length(keys, rank);
    }
  }
  return rows;
}

std::optional<PointPair>
find_c3_violation_serial(const ColorMatrix &m, Color rank,
                         std::span<const StructureRow> rows) {
  const std::size_t n = m.degree();
  PairChecker checker(n, rank);
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b)
      if (!checker.matches(m, {a, b}, rows[m(a, b)]))
        return PointPair{a, b};
  return std::nullopt;
}

std::optional<PointPair>
find_c3_violation_parallel(const ColorMatrix &m, Color rank,
                           std::span<const StructureRow> rows) {
  const std::size_t n = m.degree();
  constexpr std::uint64_t none = std::numeric_limits<std::uint64_t>::max();
  // Smallest row-major index of an offending pair found so far.
  std::atomic<std::uint64_t> first{none};
  const auto degree = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
  {
    PairChecker checker(n, rank);
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t a = 0; a < degree; ++a) {
      const auto row_start = static_cast<std::uint64_t>(a) * n;
      if (first.load(std::memory_order_relaxed) < row_start)
        continue;
      for (Point b = 0; b < n; ++b) {
        const auto pa = static_cast<Point>(a);
        if (!checker.matches(m, {pa, b}, rows[m(pa, b)])) {
          std::uint64_t idx = row_start + b;
          std::uint64_t cur = first.load();
          while (idx < cur && !first.compare_exchange_weak(cur, idx)) {
          }
          break;
        }
      }
    }
  }
  const auto idx = first.load();
  if (idx == none)
    return std::nullopt;
  return PointPair{static_cast<Point>(idx / n), static_cast<Point>(idx % n)};
}

Refinement wl_refine_serial(const ColorMatrix &colors, Color count) {
  const std::size_t n = colors.degree();
  std::vector<Signature> signatures(n * n);
  std::vector<std::uint64_t> keys;
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b)
      pair_signature(colors, count, a, b, keys, signatures[a * n + b]);
  return number_signatures(n, signatures);
}

Refinement wl_refine_parallel(const ColorMatrix &colors, Color count) {
  const std::size_t n = colors.degree();
  std::vector<Signature> signatures(n * n);
  const auto degree = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
  {
    std::vector<std::uint64_t> keys;
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t a = 0; a < degree; ++a)
      for (Point b = 0; b < n; ++b)
        pair_signature(colors, count, static_cast<Point>(a), b, keys,
                       signatures[static_cast<std::size_t>(a) * n + b]);
  }
  return number_signatures(n, signatures);
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

} // namespace ccdec::kernels
