#include "ccdec/coherent_configuration.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <map>
#include <string>
#include <tuple>

namespace ccdec {

std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::InvalidArgument: return "InvalidArgument";
  case ErrorCode::ParseError: return "ParseError";
  case ErrorCode::NotSquare: return "NotSquare";
  case ErrorCode::NonContiguousColors: return "NonContiguousColors";
  case ErrorCode::InvalidDiagonal: return "InvalidDiagonal";
  case ErrorCode::InvalidTranspose: return "InvalidTranspose";
  case ErrorCode::InvalidIntersectionNumbers: return "InvalidIntersectionNumbers";
  case ErrorCode::DegreeOverflow: return "DegreeOverflow";
  case ErrorCode::NotABijection: return "NotABijection";
  case ErrorCode::NotAParabolic: return "NotAParabolic";
  case ErrorCode::HomeMismatch: return "HomeMismatch";
  case ErrorCode::ClosureNotARelation: return "ClosureNotARelation";
  case ErrorCode::NotCartesian: return "NotCartesian";
  case ErrorCode::DegreeMismatch: return "DegreeMismatch";
  case ErrorCode::NotThick: return "NotThick";
  case ErrorCode::VerificationFailed: return "VerificationFailed";
  case ErrorCode::InvalidGenerator: return "InvalidGenerator";
  case ErrorCode::InvalidGroupTable: return "InvalidGroupTable";
  }
  return "Unknown";
}

std::size_t max_degree() {
  if (const char *env = std::getenv("CCDEC_MAX_DEGREE")) {
    char *end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0)
      return static_cast<std::size_t>(v);
  }
  return 4096;
}

namespace {

// Dense c_{rs}^t table while rank^3 stays below this bound.
constexpr std::uint64_t dense_table_limit = std::uint64_t{1} << 24;

std::atomic<std::uint64_t> next_id{1};

std::string pair_str(Point a, Point b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

} // namespace

struct CoherentConfiguration::Cache {
  std::vector<StructureRow> rows;

  std::once_flag dense_once;
  std::vector<std::uint32_t> dense;

  std::once_flag products_once;
  std::vector<std::uint64_t> product_keys;
  std::vector<Color> product_colors;

  std::unique_ptr<ParabolicMemo> memo = std::make_unique<ParabolicMemo>();
};

CoherentConfiguration CoherentConfiguration::build(ColorMatrix matrix,
                                                   Validation mode) {
  const std::size_t n = matrix.degree();
  if (n == 0)
    throw Error(ErrorCode::InvalidArgument, "degree must be positive");
  if (n > max_degree())
    throw Error(ErrorCode::DegreeOverflow,
                "degree " + std::to_string(n) + " exceeds the cap " +
                    std::to_string(max_degree()));

  Color max_color = 0;
  for (Color c : matrix.cells())
    max_color = std::max(max_color, c);
  if (std::uint64_t{max_color} >= std::uint64_t{n} * n)
    throw Error(ErrorCode::NonContiguousColors,
                "color " + std::to_string(max_color) + " exceeds degree^2");
  const Color rank = max_color + 1;

  CoherentConfiguration cc;
  cc.rank_ = rank;
  cc.id_ = next_id.fetch_add(1);

  constexpr Point none = std::numeric_limits<Point>::max();
  cc.witness_.assign(rank, PointPair{none, none});
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b) {
      auto &w = cc.witness_[matrix(a, b)];
      if (w.from == none)
        w = {a, b};
    }
  for (Color c = 0; c < rank; ++c)
    if (cc.witness_[c].from == none)
      throw Error(ErrorCode::NonContiguousColors,
                  "color " + std::to_string(c) + " does not occur");

  // C1
  cc.reflexive_ = ColorSet(rank);
  for (Point a = 0; a < n; ++a)
    cc.reflexive_.insert(matrix(a, a));
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b)
      if (a != b && cc.reflexive_.contains(matrix(a, b)))
        throw Error(ErrorCode::InvalidDiagonal,
                    "C1: diagonal color " + std::to_string(matrix(a, b)) +
                        " also occurs at " + pair_str(a, b));

  // C2
  cc.transpose_.resize(rank);
  for (Color c = 0; c < rank; ++c)
    cc.transpose_[c] = matrix(cc.witness_[c].to, cc.witness_[c].from);
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b)
      if (matrix(b, a) != cc.transpose_[matrix(a, b)])
        throw Error(ErrorCode::InvalidTranspose,
                    "C2: transpose of color " + std::to_string(matrix(a, b)) +
                        " is not a single color (at " + pair_str(b, a) + ")");

  // Fibers, numbered by minimal point.
  constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> fiber_of_diag(rank, unset);
  cc.fiber_of_point_.resize(n);
  for (Point a = 0; a < n; ++a) {
    auto &f = fiber_of_diag[matrix(a, a)];
    if (f == unset) {
      f = cc.fibers_.size();
      cc.fibers_.emplace_back();
    }
    cc.fiber_of_point_[a] = f;
    cc.fibers_[f].push_back(a);
  }

  // Supports and valencies. Both are consequences of C3.
  cc.left_fiber_.resize(rank);
  cc.right_fiber_.resize(rank);
  cc.valency_.assign(rank, 0);
  for (Color c = 0; c < rank; ++c) {
    cc.left_fiber_[c] = cc.fiber_of_point_[cc.witness_[c].from];
    cc.right_fiber_[c] = cc.fiber_of_point_[cc.witness_[c].to];
  }
  std::vector<std::size_t> row_count(rank, 0);
  for (Point a = 0; a < n; ++a) {
    for (Point b = 0; b < n; ++b) {
      const Color c = matrix(a, b);
      if (cc.left_fiber_[c] != cc.fiber_of_point_[a] ||
          cc.right_fiber_[c] != cc.fiber_of_point_[b])
        throw Error(ErrorCode::InvalidIntersectionNumbers,
                    "C3: color " + std::to_string(c) +
                        " has pairs with different supports (at " +
                        pair_str(a, b) + ")");
      ++row_count[c];
    }
    for (Point b = 0; b < n; ++b) {
      const Color c = matrix(a, b);
      if (row_count[c] == 0)
        continue;
      if (cc.witness_[c].from == a)
        cc.valency_[c] = row_count[c];
      else if (cc.valency_[c] != row_count[c])
        throw Error(ErrorCode::InvalidIntersectionNumbers,
                    "C3: color " + std::to_string(c) +
                        " has non-constant valency (row " + std::to_string(a) +
                        ")");
      row_count[c] = 0;
    }
  }

  auto cache = std::make_shared<Cache>();
  cache->rows = kernels::structure_rows_parallel(matrix, rank, cc.witness_);

  if (mode == Validation::Full) {
    if (auto bad = kernels::find_c3_violation_parallel(matrix, rank,
                                                      cache->rows))
      throw Error(ErrorCode::InvalidIntersectionNumbers,
                  "C3: intersection numbers at " + pair_str(bad->from, bad->to) +
                      " differ from those of color " +
                      std::to_string(matrix(bad->from, bad->to)));
  } else {
    std::vector<PointPair> last(rank);
    for (Point a = 0; a < n; ++a)
      for (Point b = 0; b < n; ++b)
        last[matrix(a, b)] = {a, b};
    for (Color c = 0; c < rank; ++c)
      if (!(last[c] == cc.witness_[c]) &&
          kernels::structure_row(matrix, rank, last[c]) != cache->rows[c])
        throw Error(ErrorCode::InvalidIntersectionNumbers,
                    "C3: intersection numbers at " +
                        pair_str(last[c].from, last[c].to) +
                        " differ from those of color " + std::to_string(c));
  }

  cc.matrix_ = std::move(matrix);
  cc.cache_ = std::move(cache);
  return cc;
}

Color CoherentConfiguration::check(Color s) const {
  if (s >= rank_)
    throw Error(ErrorCode::InvalidArgument,
                "color " + std::to_string(s) + " out of range [0," +
                    std::to_string(rank_) + ")");
  return s;
}

ColorSet CoherentConfiguration::all_colors() const {
  ColorSet s(rank_);
  for (Color c = 0; c < rank_; ++c)
    s.insert(c);
  return s;
}

const StructureRow &CoherentConfiguration::structure_row(Color t) const {
  return cache_->rows[check(t)];
}

CoherentConfiguration::ParabolicMemo &
CoherentConfiguration::parabolic_memo() const {
  return *cache_->memo;
}

std::uint32_t CoherentConfiguration::intersection_number(Color r, Color s,
                                                         Color t) const {
  check(r);
  check(s);
  check(t);
  const std::uint64_t rk = rank_;
  if (rk * rk * rk <= dense_table_limit) {
    std::call_once(cache_->dense_once, [&] {
      cache_->dense.assign(rk * rk * rk, 0);
      for (Color u = 0; u < rank_; ++u)
        for (const auto &e : cache_->rows[u])
          cache_->dense[(u * rk + e.left) * rk + e.right] = e.count;
    });
    return cache_->dense[(t * rk + r) * rk + s];
  }
  const auto &row = cache_->rows[t];
  const kernels::StructureEntry probe{r, s, 0};
  auto it = std::lower_bound(row.begin(), row.end(), probe,
                             [](const auto &x, const auto &y) {
                               return std::tie(x.left, x.right) <
                                      std::tie(y.left, y.right);
                             });
  if (it != row.end() && it->left == r && it->right == s)
    return it->count;
  return 0;
}

std::span<const Color> CoherentConfiguration::products(Color r,
                                                       Color s) const {
  check(r);
  check(s);
  std::call_once(cache_->products_once, [&] {
    std::vector<std::pair<std::uint64_t, Color>> entries;
    for (Color t = 0; t < rank_; ++t)
      for (const auto &e : cache_->rows[t])
        entries.emplace_back(std::uint64_t{e.left} * rank_ + e.right, t);
    std::sort(entries.begin(), entries.end());
    cache_->product_keys.reserve(entries.size());
    cache_->product_colors.reserve(entries.size());
    for (const auto &[k, t] : entries) {
      cache_->product_keys.push_back(k);
      cache_->product_colors.push_back(t);
    }
  });
  const auto key = std::uint64_t{r} * rank_ + s;
  const auto &keys = cache_->product_keys;
  const auto [lo, hi] = std::equal_range(keys.begin(), keys.end(), key);
  const auto first = static_cast<std::size_t>(lo - keys.begin());
  return {cache_->product_colors.data() + first,
          static_cast<std::size_t>(hi - lo)};
}

bool CoherentConfiguration::is_thick() const {
  for (Color s = 0; s < rank_; ++s)
    if (!reflexive_.contains(s) && valency_[s] == 1 &&
        valency_[transpose_[s]] == 1)
      return false;
  return true;
}

Fingerprint CoherentConfiguration::fingerprint() const {
  Fingerprint fp;
  fp.degree = degree();
  fp.rank = rank_;
  fp.valencies = valency_;
  std::sort(fp.valencies.begin(), fp.valencies.end());
  for (const auto &row : cache_->rows)
    for (const auto &e : row)
      fp.intersection_numbers.push_back(e.count);
  std::sort(fp.intersection_numbers.begin(), fp.intersection_numbers.end());
  for (const auto &f : fibers_)
    fp.fiber_sizes.push_back(f.size());
  std::sort(fp.fiber_sizes.begin(), fp.fiber_sizes.end());
  return fp;
}

CoherentConfiguration tensor(std::span<const CoherentConfiguration> factors) {
  if (factors.empty())
    throw Error(ErrorCode::InvalidArgument, "tensor needs at least one factor");
  std::uint64_t n = 1;
  for (const auto &f : factors) {
    n *= f.degree();
    if (n > max_degree())
      throw Error(ErrorCode::DegreeOverflow,
                  "tensor degree exceeds the cap " +
                      std::to_string(max_degree()));
  }
  ColorMatrix m(n);
  const std::size_t k = factors.size();
  std::vector<Point> a_coord(k), b_coord(k);
  for (Point a = 0; a < n; ++a) {
    // Lexicographic: the first factor is the most significant digit.
    for (std::size_t i = k, rest = a; i-- > 0;) {
      a_coord[i] = static_cast<Point>(rest % factors[i].degree());
      rest /= factors[i].degree();
    }
    for (Point b = 0; b < n; ++b) {
      for (std::size_t i = k, rest = b; i-- > 0;) {
        b_coord[i] = static_cast<Point>(rest % factors[i].degree());
        rest /= factors[i].degree();
      }
      std::uint64_t c = 0;
      for (std::size_t i = 0; i < k; ++i)
        c = c * factors[i].rank() + factors[i].cell(a_coord[i], b_coord[i]);
      m(a, b) = static_cast<Color>(c);
    }
  }
  canonicalize_colors(m);
  return CoherentConfiguration::build(std::move(m), Validation::Fast);
}

Quotient quotient(const CoherentConfiguration &cc, const Parabolic &e) {
  if (e.home() != cc.id())
    throw Error(ErrorCode::HomeMismatch,
                "parabolic belongs to a different configuration");
  const std::size_t n = cc.degree();
  constexpr Point unset = std::numeric_limits<Point>::max();
  std::vector<Point> cls(n, unset);
  Point classes = 0;
  for (Point a = 0; a < n; ++a) {
    if (cls[a] != unset)
      continue;
    for (Point b = 0; b < n; ++b)
      if (e.contains(cc.cell(a, b)))
        cls[b] = classes;
    ++classes;
  }

  std::vector<std::vector<Color>> seen(std::size_t{classes} * classes);
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b)
      seen[std::size_t{cls[a]} * classes + cls[b]].push_back(cc.cell(a, b));
  std::map<std::vector<Color>, Color> ids;
  ColorMatrix m(classes);
  for (Point x = 0; x < classes; ++x)
    for (Point y = 0; y < classes; ++y) {
      auto &v = seen[std::size_t{x} * classes + y];
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      auto [it, inserted] =
          ids.emplace(std::move(v), static_cast<Color>(ids.size()));
      m(x, y) = it->second;
    }
  canonicalize_colors(m);
  return {CoherentConfiguration::build(std::move(m), Validation::Fast),
          std::move(cls)};
}

void check_bijection(std::span<const Point> perm, std::size_t n) {
  if (perm.size() != n)
    throw Error(ErrorCode::NotABijection,
                "map has " + std::to_string(perm.size()) +
                    " entries, expected " + std::to_string(n));
  std::vector<bool> hit(n, false);
  for (Point p : perm) {
    if (p >= n || hit[p])
      throw Error(ErrorCode::NotABijection,
                  "map is not a bijection of [0," + std::to_string(n) + ")");
    hit[p] = true;
  }
}

CoherentConfiguration relabel(const CoherentConfiguration &cc,
                              std::span<const Point> perm) {
  const std::size_t n = cc.degree();
  check_bijection(perm, n);
  ColorMatrix m(n);
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b)
      m(perm[a], perm[b]) = cc.cell(a, b);
  return CoherentConfiguration::build(std::move(m), Validation::Fast);
}

} // namespace ccdec
