#include "ccdec/decomposition.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <unordered_map>

namespace ccdec {

namespace {

class ClosureCache {
public:
  explicit ClosureCache(const CC &cc) : cc_(cc), closures_(cc.rank()) {}

  const Parabolic &of(Color x) {
    if (!closures_[x])
      closures_[x] = equivalence_closure(cc_, basis_relation(cc_, x));
    return *closures_[x];
  }

  bool meet_is_discrete(Color x, Color y) {
    return (of(x).colors() & of(y).colors())
        .is_subset_of(cc_.reflexive_colors());
  }

private:
  const CC &cc_;
  std::vector<std::optional<Parabolic>> closures_;
};

// Witness for every redundant color, in one pass over all color pairs.
std::vector<std::optional<RedundancyWitness>>
redundancy_witnesses(const CC &cc, ClosureCache &closures) {
  const Color rank = cc.rank();
  std::vector<std::optional<RedundancyWitness>> out(rank);
  for (Color x = 0; x < rank; ++x) {
    if (cc.is_reflexive(x))
      continue;
    for (Color y = 0; y < rank; ++y) {
      if (cc.is_reflexive(y) || cc.left_fiber(y) != cc.right_fiber(x))
        continue;
      const auto prod = cc.products(x, y);
      if (prod.size() != 1 || out[prod[0]])
        continue;
      if (closures.meet_is_discrete(x, y))
        out[prod[0]] = RedundancyWitness{x, y};
    }
  }
  return out;
}

bool canonical_less(const Parabolic &a, const Parabolic &b) {
  return canonical_order(a.colors(), b.colors()) < 0;
}

Parabolic product_of(const CC &cc, const std::vector<Parabolic> &members,
                     std::span<const std::size_t> subset) {
  if (subset.empty())
    return discrete_parabolic(cc);
  Relation acc = members[subset[0]];
  for (std::size_t k = 1; k < subset.size(); ++k)
    acc = dot(cc, acc, members[subset[k]]);
  return as_parabolic(cc, acc);
}

std::size_t class_count(const CC &cc, const Parabolic &e) {
  return classes(cc, e).classes.size();
}

void require_thick(const CC &cc) {
  if (!cc.is_thick())
    throw Error(ErrorCode::NotThick,
                "not thick: the configuration has an irreflexive color of "
                "valency 1 whose transpose also has valency 1; maximal "
                "decomposition requires a thick configuration");
}

} // namespace

std::string_view to_string(Validity v) {
  switch (v) {
  case Validity::Invalid: return "Invalid";
  case Validity::OfOmega: return "OfOmega";
  case Validity::OfX: return "OfX";
  }
  return "Unknown";
}

std::optional<RedundancyWitness> redundancy_witness(const CC &cc, Color s) {
  if (s >= cc.rank())
    throw Error(ErrorCode::InvalidArgument, "color out of range");
  ClosureCache closures(cc);
  for (Color x = 0; x < cc.rank(); ++x) {
    if (cc.is_reflexive(x) || cc.left_fiber(x) != cc.left_fiber(s))
      continue;
    for (Color y = 0; y < cc.rank(); ++y) {
      if (cc.is_reflexive(y) || cc.left_fiber(y) != cc.right_fiber(x))
        continue;
      const auto prod = cc.products(x, y);
      if (prod.size() == 1 && prod[0] == s && closures.meet_is_discrete(x, y))
        return RedundancyWitness{x, y};
    }
  }
  return std::nullopt;
}

bool is_irredundant(const CC &cc, Color s) {
  return !redundancy_witness(cc, s).has_value();
}

AtomicCartesianDecomposition
analyze_decomposition(const CC &cc, const std::vector<Parabolic> &members) {
  AtomicCartesianDecomposition out;
  out.members = members;
  const std::size_t m = members.size();
  if (m == 0)
    return out;
  for (const auto &e : members)
    if (e.home() != cc.id())
      throw Error(ErrorCode::HomeMismatch,
                  "parabolic belongs to a different configuration");
  for (const auto &e : members)
    if (is_discrete(cc, e))
      return out;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (!commute(cc, members[i], members[j]))
        return out;

  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < m; ++j)
      if (j != i)
        others.push_back(j);
    out.complements.push_back(product_of(cc, members, others));
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!is_discrete(cc, meet(cc, members[i], out.complements[i])) ||
        !is_full(cc, join(cc, members[i], out.complements[i])))
      return out;
  }

  if (m <= 10) {
    const std::size_t subsets = std::size_t{1} << m;
    std::vector<ColorSet> products;
    products.reserve(subsets);
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < m; ++i)
        if ((mask >> i) & 1u)
          idx.push_back(i);
      products.push_back(product_of(cc, members, idx).colors());
    }
    for (std::size_t a = 0; a < subsets; ++a)
      for (std::size_t b = a; b < subsets; ++b)
        if ((products[a] & products[b]) != products[a & b])
          throw Error(ErrorCode::VerificationFailed,
                      "subset products do not form a Boolean lattice");
  }
  std::size_t product = 1;
  for (const auto &c : out.complements)
    product *= class_count(cc, c);
  if (product != cc.degree())
    throw Error(ErrorCode::VerificationFailed,
                "complement class counts do not multiply to the degree");

  out.validity = Validity::OfOmega;
  for (std::size_t i = 0; i < m; ++i)
    if (!strongly_commute(cc, members[i], out.complements[i]) ||
        !perp(cc, members[i], out.complements[i]))
      return out;
  out.validity = Validity::OfX;
  return out;
}

Validity check_decomposition(const CC &cc,
                             const std::vector<Parabolic> &members) {
  return analyze_decomposition(cc, members).validity;
}

Validity check_decomposition(const CC &cc,
                             const std::vector<Relation> &members) {
  std::vector<Parabolic> checked;
  checked.reserve(members.size());
  for (const auto &r : members)
    checked.push_back(as_parabolic(cc, r));
  return check_decomposition(cc, checked);
}

Parabolic subset_product(const CC &cc, const std::vector<Parabolic> &members,
                         std::span<const std::size_t> subset) {
  for (auto i : subset)
    if (i >= members.size())
      throw Error(ErrorCode::InvalidArgument, "subset index out of range");
  return product_of(cc, members, subset);
}

AlgorithmAResult algorithm_a(const CC &cc,
                             const DecompositionOptions &options) {
  AlgorithmAResult result;
  ClosureCache closures(cc);
  const auto witnesses = redundancy_witnesses(cc, closures);

  std::vector<Parabolic> q;
  for (Color s = 0; s < cc.rank(); ++s) {
    if (witnesses[s])
      continue;
    ++result.irredundant_colors;
    const Parabolic &e = closures.of(s);
    if (std::find(q.begin(), q.end(), e) == q.end())
      q.push_back(e);
  }
  std::sort(q.begin(), q.end(), canonical_less);

  std::unordered_map<ColorSet, std::size_t, ColorSetHash> ids;
  std::map<std::pair<std::size_t, std::size_t>, bool> compatible;
  auto id_of = [&](const Parabolic &e) {
    return ids.emplace(e.colors(), ids.size()).first->second;
  };
  auto is_compatible = [&](const Parabolic &e, const Parabolic &f) {
    const std::pair<std::size_t, std::size_t> key =
        std::minmax(id_of(e), id_of(f));
    auto it = compatible.find(key);
    if (it == compatible.end())
      it = compatible
               .emplace(key, strongly_commute(cc, e, f) && perp(cc, e, f))
               .first;
    return it->second;
  };

  std::mt19937_64 rng(options.merge_seed.value_or(0));
  for (;;) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = i + 1; j < q.size(); ++j)
        pairs.emplace_back(i, j);
    if (options.merge_seed)
      std::shuffle(pairs.begin(), pairs.end(), rng);

    std::optional<std::pair<std::size_t, std::size_t>> offending;
    for (const auto &[i, j] : pairs)
      if (!is_compatible(q[i], q[j])) {
        offending = std::make_pair(i, j);
        break;
      }
    if (!offending)
      break;

    auto merged = join(cc, q[offending->first], q[offending->second]);
    q.erase(q.begin() + static_cast<std::ptrdiff_t>(offending->second));
    q.erase(q.begin() + static_cast<std::ptrdiff_t>(offending->first));
    if (std::find(q.begin(), q.end(), merged) == q.end())
      q.push_back(std::move(merged));
    std::sort(q.begin(), q.end(), canonical_less);
    ++result.merges;
  }

  for (auto &e : q)
    if (!is_discrete(cc, e))
      result.p_star.push_back(std::move(e));
  return result;
}

Certificate algorithm_b(const CC &cc, const DecompositionOptions &options) {
  require_thick(cc);
  Certificate cert;
  const auto trivial = [&] {
    AtomicCartesianDecomposition d;
    d.members = {full_parabolic(cc)};
    d.complements = {discrete_parabolic(cc)};
    d.validity = Validity::OfX;
    return d;
  };
  if (cc.degree() == 1) {
    cert.decomposition = trivial();
    return cert;
  }

  auto a = algorithm_a(cc, options);
  const auto &p_star = a.p_star;
  const std::size_t m = p_star.size();
  cert.p_star_size = m;
  if (m == 0)
    throw Error(ErrorCode::VerificationFailed,
                "thick configuration without irredundant colors");
  cert.p_star_validity = check_decomposition(cc, p_star);

  // Proper nonempty subsets by (cardinality, index list); a subset is skipped
  // when its complement precedes it, since both give the same split.
  std::vector<std::vector<std::size_t>> subsets;
  if (m < 63) {
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << m); ++mask) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < m; ++i)
        if ((mask >> i) & 1u)
          idx.push_back(i);
      subsets.push_back(std::move(idx));
    }
  }
  auto order = [](const std::vector<std::size_t> &x,
                  const std::vector<std::size_t> &y) {
    if (x.size() != y.size())
      return x.size() < y.size();
    return x < y;
  };
  auto complement_of = [m](const std::vector<std::size_t> &x) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0, k = 0; i < m; ++i) {
      if (k < x.size() && x[k] == i)
        ++k;
      else
        out.push_back(i);
    }
    return out;
  };
  std::sort(subsets.begin(), subsets.end(), order);
  std::erase_if(subsets, [&](const auto &x) {
    return order(complement_of(x), x);
  });

  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> first{none};
  std::vector<std::optional<AtomicCartesianDecomposition>> found(
      subsets.size());
  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(subsets.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const auto i = static_cast<std::size_t>(k);
    if (first.load() < i)
      continue;
    try {
      const auto &subset = subsets[i];
      auto d = analyze_decomposition(
          cc, {product_of(cc, p_star, subset),
               product_of(cc, p_star, complement_of(subset))});
      if (d.validity == Validity::OfX) {
        found[i] = std::move(d);
        std::size_t cur = first.load();
        while (i < cur && !first.compare_exchange_weak(cur, i)) {
        }
      }
    } catch (...) {
#pragma omp critical(ccdec_algorithm_b)
      if (!failure)
        failure = std::current_exception();
    }
  }
  if (failure)
    std::rethrow_exception(failure);

  const std::size_t hit = first.load();
  if (hit != none) {
    cert.subsets_tested = hit + 1;
    cert.decomposition = std::move(*found[hit]);
  } else {
    cert.subsets_tested = subsets.size();
    cert.decomposition = trivial();
  }
  return cert;
}

CartesianBijection pi_p(const CC &cc, const AtomicCartesianDecomposition &p) {
  if (p.validity == Validity::Invalid ||
      p.complements.size() != p.members.size())
    throw Error(ErrorCode::NotCartesian,
                "not an atomic Cartesian decomposition of the point set");
  const std::size_t n = cc.degree();
  const std::size_t m = p.members.size();
  CartesianBijection out;
  out.coordinates.assign(n, std::vector<Point>(m));
  std::size_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    const auto part = classes(cc, p.complements[i]);
    out.radix.push_back(part.classes.size());
    total *= part.classes.size();
    for (Point a = 0; a < n; ++a)
      out.coordinates[a][i] = part.class_of[a];
  }
  if (total != n)
    throw Error(ErrorCode::NotCartesian,
                "complement class counts multiply to " + std::to_string(total) +
                    ", not the degree " + std::to_string(n));
  constexpr Point unset = std::numeric_limits<Point>::max();
  out.point_at.assign(n, unset);
  for (Point a = 0; a < n; ++a) {
    std::size_t index = 0;
    for (std::size_t i = 0; i < m; ++i)
      index = index * out.radix[i] + out.coordinates[a][i];
    if (out.point_at[index] != unset)
      throw Error(ErrorCode::NotCartesian,
                  "complement classes meet in more than one point");
    out.point_at[index] = a;
  }
  return out;
}

bool verify_isomorphism(const CC &source, const CC &target,
                        std::span<const Point> map) {
  const std::size_t n = source.degree();
  if (target.degree() != n)
    throw Error(ErrorCode::DegreeMismatch,
                "degrees differ: " + std::to_string(n) + " vs " +
                    std::to_string(target.degree()));
  if (map.size() != n || source.rank() != target.rank())
    return false;
  std::vector<bool> hit(n, false);
  for (Point p : map) {
    if (p >= n || hit[p])
      return false;
    hit[p] = true;
  }
  constexpr Color unset = std::numeric_limits<Color>::max();
  std::vector<Color> color_map(source.rank(), unset);
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b) {
      const Color s = source.cell(a, b);
      const Color t = target.cell(map[a], map[b]);
      if (color_map[s] == unset)
        color_map[s] = t;
      else if (color_map[s] != t)
        return false;
    }
  std::vector<bool> used(target.rank(), false);
  for (Color t : color_map) {
    if (used[t])
      return false;
    used[t] = true;
  }
  return true;
}

std::optional<std::vector<Point>> find_isomorphism_brute_force(const CC &a,
                                                               const CC &b) {
  if (a.degree() != b.degree())
    return std::nullopt;
  if (a.degree() > 9)
    throw Error(ErrorCode::InvalidArgument,
                "brute-force isomorphism search is limited to degree 9");
  if (a.fingerprint() != b.fingerprint())
    return std::nullopt;
  std::vector<Point> perm(a.degree());
  std::iota(perm.begin(), perm.end(), Point{0});
  do {
    if (verify_isomorphism(a, b, perm))
      return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

namespace {

struct Partial {
  std::vector<CoherentConfiguration> factors;
  std::vector<std::vector<Point>> coordinates;
};

Partial decompose(const CC &cc, const DecompositionOptions &options,
                  std::vector<TraceNode> &trace) {
  const std::size_t node = trace.size();
  trace.push_back(TraceNode{});
  trace[node].degree = cc.degree();

  auto single = [&] {
    Partial p;
    p.factors.push_back(cc);
    p.coordinates.resize(cc.degree());
    for (Point a = 0; a < cc.degree(); ++a)
      p.coordinates[a] = {a};
    return p;
  };
  if (cc.degree() == 1)
    return single();

  auto cert = algorithm_b(cc, options);
  trace[node].p_star_size = cert.p_star_size;
  trace[node].p_star_validity = cert.p_star_validity;
  trace[node].subsets_tested = cert.subsets_tested;
  trace[node].certificate_size = cert.decomposition.size();
  if (cert.decomposition.size() == 1)
    return single();

  const auto &d = cert.decomposition;
  // Factor i is the quotient modulo the complement of member i.
  auto q1 = quotient(cc, d.complements[0]);
  auto q2 = quotient(cc, d.complements[1]);
  const auto bijection = pi_p(cc, d);

  trace[node].left = trace.size();
  auto left = decompose(q1.configuration, options, trace);
  trace[node].right = trace.size();
  auto right = decompose(q2.configuration, options, trace);
  trace[node].recursion_calls = 2 + trace[*trace[node].left].recursion_calls +
                                trace[*trace[node].right].recursion_calls;

  Partial out;
  out.factors = std::move(left.factors);
  for (auto &f : right.factors)
    out.factors.push_back(std::move(f));
  out.coordinates.resize(cc.degree());
  for (Point a = 0; a < cc.degree(); ++a) {
    const auto &c = bijection.coordinates[a];
    auto &tuple = out.coordinates[a];
    tuple = left.coordinates[c[0]];
    const auto &rest = right.coordinates[c[1]];
    tuple.insert(tuple.end(), rest.begin(), rest.end());
  }
  return out;
}

} // namespace

std::vector<Point> TensorDecomposition::tensor_map() const {
  std::vector<Point> out(point_map.size());
  for (std::size_t a = 0; a < point_map.size(); ++a) {
    std::size_t index = 0;
    for (std::size_t i = 0; i < factors.size(); ++i)
      index = index * factors[i].degree() + point_map[a][i];
    out[a] = static_cast<Point>(index);
  }
  return out;
}

std::vector<Parabolic>
TensorDecomposition::member_parabolics(const CC &source) const {
  if (source.id() != source_id)
    throw Error(ErrorCode::HomeMismatch,
                "decomposition belongs to a different configuration");
  std::vector<Parabolic> out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    ColorSet colors(source.rank());
    for (Color t = 0; t < source.rank(); ++t) {
      const auto w = source.witness(t);
      const auto &x = point_map[w.from];
      const auto &y = point_map[w.to];
      bool same = true;
      for (std::size_t j = 0; j < factors.size() && same; ++j)
        same = j == i || x[j] == y[j];
      if (same)
        colors.insert(t);
    }
    out.push_back(as_parabolic(source, make_relation(source, colors)));
  }
  return out;
}

TensorDecomposition algorithm_c(const CC &cc,
                                const DecompositionOptions &options) {
  TensorDecomposition out;
  out.source_id = cc.id();
  if (cc.degree() > 1)
    require_thick(cc);
  auto partial = decompose(cc, options, out.trace);

  const std::size_t k = partial.factors.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<Fingerprint> prints;
  for (const auto &f : partial.factors)
    prints.push_back(f.fingerprint());
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) {
                     const auto &fx = partial.factors[x];
                     const auto &fy = partial.factors[y];
                     if (fx.degree() != fy.degree())
                       return fx.degree() < fy.degree();
                     if (fx.rank() != fy.rank())
                       return fx.rank() < fy.rank();
                     return prints[x] < prints[y];
                   });
  for (auto i : order)
    out.factors.push_back(partial.factors[i]);
  out.point_map.resize(cc.degree());
  for (Point a = 0; a < cc.degree(); ++a)
    for (auto i : order)
      out.point_map[a].push_back(partial.coordinates[a][i]);

  const auto product = tensor(out.factors);
  if (!verify_isomorphism(cc, product, out.tensor_map()))
    throw Error(ErrorCode::VerificationFailed,
                "point map is not an isomorphism onto the tensor product");
  return out;
}

} // namespace ccdec
