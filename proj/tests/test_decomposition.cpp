#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "ccdec/constructors.hpp"
#include "ccdec/decomposition.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace ccdec;

namespace {

CC tensor_of(std::vector<CC> fs) { return tensor(fs); }

/// Pair-level search for x, y with x·y = {s} and discrete closure meet.
bool oracle_irredundant(const CC &cc, Color s) {
  const auto &m = cc.matrix();
  for (Color x = 0; x < cc.rank(); ++x)
    for (Color y = 0; y < cc.rank(); ++y) {
      if (cc.is_reflexive(x) || cc.is_reflexive(y))
        continue;
      if (oracle::dot(m, {x}, {y}) != std::set<Color>{s})
        continue;
      const auto ex = oracle::equivalence_closure(oracle::pairs_of(m, {x}));
      const auto ey = oracle::equivalence_closure(oracle::pairs_of(m, {y}));
      bool discrete = true;
      for (Point a = 0; a < cc.degree(); ++a)
        for (Point b = 0; b < cc.degree(); ++b)
          if (a != b && ex(a, b) && ey(a, b))
            discrete = false;
      if (discrete)
        return false;
    }
  return true;
}

std::multiset<Fingerprint> fingerprints(const std::vector<CC> &fs) {
  std::multiset<Fingerprint> out;
  for (const auto &f : fs)
    out.insert(f.fingerprint());
  return out;
}

ErrorCode error_of(auto &&f) {
  try {
    f();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("no error");
  return ErrorCode::InvalidArgument;
}

} // namespace

TEST_CASE("irredundancy examples") {
  const auto t3 = trivial_scheme(3);
  CHECK(is_irredundant(t3, 1));
  CHECK(is_irredundant(t3, 0));

  // colors of t3⊗t3: (d,d), (d,c), (c,d), (c,c)
  const auto t = tensor_of({t3, t3});
  const auto w = redundancy_witness(t, 3);
  REQUIRE(w.has_value());
  CHECK(std::set<Color>{w->x, w->y} == std::set<Color>{1, 2});
  CHECK(is_irredundant(t, 1));
  CHECK(is_irredundant(t, 2));
}

TEST_CASE("irredundancy agrees with the pair-level search") {
  auto instances = corpus::all();
  instances.push_back({"t3 x t3", tensor_of({trivial_scheme(3), trivial_scheme(3)})});
  instances.push_back({"t3 x t4", tensor_of({trivial_scheme(3), trivial_scheme(4)})});
  for (const auto &inst : instances) {
    const auto &cc = inst.cc;
    if (cc.degree() > 16)
      continue;
    INFO(inst.name);
    for (Color s = 0; s < cc.rank(); ++s) {
      CHECK(is_irredundant(cc, s) == oracle_irredundant(cc, s));
      if (cc.is_reflexive(s))
        CHECK(is_irredundant(cc, s));
    }
  }
}

TEST_CASE("redundancy witnesses multiply valencies and d") {
  std::vector<CC> instances{
      tensor_of({trivial_scheme(3), trivial_scheme(4)}),
      tensor_of({trivial_scheme(3), trivial_scheme(3), trivial_scheme(3)}),
      tensor_of({trivial_scheme(3), corpus::conj(symmetric_group(3))}),
      corpus::conj(direct_product(symmetric_group(3), symmetric_group(3)))};
  for (const auto &cc : instances)
    for (Color s = 0; s < cc.rank(); ++s)
      if (const auto w = redundancy_witness(cc, s)) {
        CHECK(cc.valency(s) == cc.valency(w->x) * cc.valency(w->y));
        CHECK(cc.d_value(s) == cc.d_value(w->x) * cc.d_value(w->y));
      }
}

TEST_CASE("thick configurations factor into irredundant colors") {
  std::vector<CC> instances{
      tensor_of({trivial_scheme(3), trivial_scheme(4), trivial_scheme(3)}),
      corpus::conj(direct_product(symmetric_group(3), symmetric_group(3)))};
  for (const auto &cc : instances) {
    REQUIRE(cc.is_thick());
    for (Color s = 0; s < cc.rank(); ++s) {
      std::vector<Color> stack{s};
      std::size_t leaves = 0;
      while (!stack.empty()) {
        const Color c = stack.back();
        stack.pop_back();
        if (const auto w = redundancy_witness(cc, c)) {
          CHECK(cc.d_value(w->x) < cc.d_value(c));
          CHECK(cc.d_value(w->y) < cc.d_value(c));
          stack.push_back(w->x);
          stack.push_back(w->y);
        } else {
          ++leaves;
        }
      }
      CHECK(leaves >= 1);
    }
  }
}

TEST_CASE("algorithm A examples") {
  const auto t5 = trivial_scheme(5);
  auto a = algorithm_a(t5);
  REQUIRE(a.p_star.size() == 1);
  CHECK(is_full(t5, a.p_star[0]));

  const auto t34 = tensor_of({trivial_scheme(3), trivial_scheme(4)});
  a = algorithm_a(t34);
  REQUIRE(a.p_star.size() == 2);
  const auto d = analyze_decomposition(t34, a.p_star);
  REQUIRE(d.validity == Validity::OfX);
  std::multiset<std::size_t> degrees;
  for (const auto &c : d.complements)
    degrees.insert(quotient(t34, c).configuration.degree());
  CHECK(degrees == std::multiset<std::size_t>{3, 4});

  const auto s3 = corpus::conj(symmetric_group(3));
  a = algorithm_a(s3);
  REQUIRE(a.p_star.size() == 1);
  CHECK(is_full(s3, a.p_star[0]));
}

TEST_CASE("P* is a Cartesian decomposition of the point set on thick inputs") {
  std::vector<CC> instances{
      trivial_scheme(4),
      corpus::conj(symmetric_group(4)),
      tensor_of({trivial_scheme(3), trivial_scheme(4)}),
      tensor_of({trivial_scheme(3), trivial_scheme(3), trivial_scheme(4)}),
      tensor_of({trivial_scheme(3), corpus::conj(symmetric_group(3))}),
      corpus::conj(direct_product(symmetric_group(3), symmetric_group(3))),
      wl_closure(graph_coloring(10, corpus::petersen_edges()))};
  for (const auto &cc : instances) {
    REQUIRE(cc.is_thick());
    const auto a = algorithm_a(cc);
    CHECK(check_decomposition(cc, a.p_star) != Validity::Invalid);
    std::size_t bound = 0;
    while ((std::size_t{1} << (bound + 1)) <= cc.degree())
      ++bound;
    CHECK(a.p_star.size() <= bound);
  }
}

TEST_CASE("P* refines every standard decomposition") {
  const std::vector<std::vector<std::size_t>> shapes{
      {3, 4}, {3, 3}, {3, 3, 4}, {4, 5}, {3, 3, 3}};
  for (const auto &shape : shapes) {
    std::vector<CC> fs;
    for (auto n : shape)
      fs.push_back(trivial_scheme(n));
    const auto cc = tensor(fs);
    const auto standard = corpus::standard_members(cc, shape);
    REQUIRE(check_decomposition(cc, standard) == Validity::OfX);
    for (const auto &e : algorithm_a(cc).p_star) {
      const bool inside = std::any_of(standard.begin(), standard.end(),
                                      [&](const Parabolic &f) {
                                        return e.colors().is_subset_of(f.colors());
                                      });
      CHECK(inside);
    }
  }
}

TEST_CASE("subset products and decomposition checks") {
  const auto t34 = tensor_of({trivial_scheme(3), trivial_scheme(4)});
  const auto std34 = corpus::standard_members(t34, {3, 4});
  const std::vector<std::size_t> none, first{0}, both{0, 1};
  CHECK(is_discrete(t34, subset_product(t34, std34, none)));
  CHECK(subset_product(t34, std34, first) == std34[0]);
  CHECK(is_full(t34, subset_product(t34, std34, both)));
  CHECK_THROWS_AS(subset_product(t34, std34, std::vector<std::size_t>{2}), Error);

  CHECK(check_decomposition(t34, std34) == Validity::OfX);
  CHECK(check_decomposition(t34, std::vector<Parabolic>{full_parabolic(t34)}) == Validity::OfX);
  CHECK(check_decomposition(t34, std::vector<Parabolic>{std34[0], std34[0]}) == Validity::Invalid);
  CHECK(check_decomposition(t34, std::vector<Parabolic>{discrete_parabolic(t34)}) == Validity::Invalid);
  CHECK(check_decomposition(t34, std::vector<Parabolic>{}) == Validity::Invalid);

  const std::vector<Relation> bad{basis_relation(t34, 1)};
  CHECK(error_of([&] { check_decomposition(t34, bad); }) ==
        ErrorCode::NotAParabolic);
}

TEST_CASE("Cartesian decomposition of the point set that is not of X") {
  // In discrete(4) every partition is a parabolic; two crossing partitions
  // into pairs form a grid, but the pieces are thin so perp fails.
  const auto cc = discrete_configuration(4);
  auto rel_of = [&](std::vector<std::pair<Point, Point>> blocks) {
    ColorSet s = cc.reflexive_colors();
    for (auto [a, b] : blocks) {
      s.insert(cc.cell(a, b));
      s.insert(cc.cell(b, a));
    }
    return as_parabolic(cc, make_relation(cc, s));
  };
  const auto e = rel_of({{0, 1}, {2, 3}});
  const auto f = rel_of({{0, 2}, {1, 3}});
  const auto d = analyze_decomposition(cc, {e, f});
  CHECK(d.validity == Validity::OfOmega);
  const auto pi = pi_p(cc, d);
  CHECK(pi.point_at.size() == 4);
}

TEST_CASE("pi_p") {
  const auto t34 = tensor_of({trivial_scheme(3), trivial_scheme(4)});
  const auto d = analyze_decomposition(t34, corpus::standard_members(t34, {3, 4}));
  const auto pi = pi_p(t34, d);
  CHECK(pi.radix == std::vector<std::size_t>{3, 4});
  for (Point a = 0; a < 12; ++a) {
    CHECK(pi.coordinates[a] == std::vector<Point>{a / 4, a % 4});
    CHECK(pi.point_at[a] == a);
  }

  const auto single = analyze_decomposition(t34, {full_parabolic(t34)});
  const auto id = pi_p(t34, single);
  CHECK(id.radix == std::vector<std::size_t>{12});
  for (Point a = 0; a < 12; ++a)
    CHECK(id.point_at[a] == a);

  const auto invalid = analyze_decomposition(t34, {discrete_parabolic(t34)});
  CHECK(error_of([&] { pi_p(t34, invalid); }) == ErrorCode::NotCartesian);
}

TEST_CASE("verify_isomorphism") {
  const auto s3 = corpus::conj(symmetric_group(3));
  std::vector<Point> id(6);
  std::iota(id.begin(), id.end(), Point{0});
  CHECK(verify_isomorphism(s3, s3, id));

  // Swapping the identity with an involution sends a diagonal pair to a
  // pair of another color class while others stay put.
  bool found_false = false;
  for (Point a = 0; a < 6 && !found_false; ++a)
    for (Point b = a + 1; b < 6 && !found_false; ++b) {
      auto p = id;
      std::swap(p[a], p[b]);
      auto m = oracle::permute(s3.matrix(), p);
      const bool merges = !oracle::same_partition(m, s3.matrix());
      CHECK(verify_isomorphism(s3, s3, p) == !merges);
      found_false = found_false || merges;
    }
  CHECK(found_false);

  CHECK(error_of([&] { verify_isomorphism(s3, trivial_scheme(3), id); }) ==
        ErrorCode::DegreeMismatch);
  CHECK_FALSE(verify_isomorphism(s3, s3, std::vector<Point>{0, 0, 1, 2, 3, 4}));

  std::mt19937_64 rng(3);
  const auto p = oracle::random_permutation(6, rng);
  const auto r = relabel(s3, p);
  CHECK(verify_isomorphism(s3, r, p));
  const auto found = find_isomorphism_brute_force(s3, r);
  REQUIRE(found.has_value());
  CHECK(verify_isomorphism(s3, r, *found));
  CHECK_FALSE(find_isomorphism_brute_force(s3, trivial_scheme(6)).has_value());
}

TEST_CASE("algorithm B") {
  const auto t5 = trivial_scheme(5);
  auto cert = algorithm_b(t5);
  CHECK(cert.decomposition.size() == 1);
  CHECK(cert.p_star_size == 1);
  CHECK(cert.subsets_tested == 0);

  const auto t34 = tensor_of({trivial_scheme(3), trivial_scheme(4)});
  cert = algorithm_b(t34);
  REQUIRE(cert.decomposition.size() == 2);
  CHECK(cert.subsets_tested == 1);
  CHECK(cert.decomposition.validity == Validity::OfX);
  const auto std34 = corpus::standard_members(t34, {3, 4});
  std::set<std::vector<Color>> got, want;
  for (const auto &e : cert.decomposition.members)
    got.insert(e.colors().to_vector());
  for (const auto &e : std34)
    want.insert(e.colors().to_vector());
  CHECK(got == want);

  const auto c4 = corpus::regular(cyclic_group(4));
  CHECK(error_of([&] { algorithm_b(c4); }) == ErrorCode::NotThick);
  CHECK(error_of([&] { algorithm_c(c4); }) == ErrorCode::NotThick);
  CHECK(error_of([&] { algorithm_c(discrete_configuration(3)); }) ==
        ErrorCode::NotThick);
}

TEST_CASE("algorithm C on indecomposable inputs") {
  for (std::size_t n : {1u, 3u, 5u}) {
    const auto t = trivial_scheme(n);
    const auto d = algorithm_c(t);
    REQUIRE(d.factors.size() == 1);
    CHECK(d.factors[0].matrix() == t.matrix());
    for (Point a = 0; a < n; ++a)
      CHECK(d.point_map[a] == std::vector<Point>{a});
    CHECK(d.trace.size() == 1);
    CHECK(d.trace[0].recursion_calls == 0);
  }
}

TEST_CASE("algorithm C recovers relabeled tensor products") {
  const auto t3 = trivial_scheme(3), t4 = trivial_scheme(4);
  const auto product = tensor_of({t3, t3, t4});
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto r = random_relabel(product, seed).configuration;
    const auto d = algorithm_c(r);
    REQUIRE(d.factors.size() == 3);
    CHECK(fingerprints(d.factors) == fingerprints({t3, t3, t4}));
    CHECK(verify_isomorphism(r, tensor(d.factors), d.tensor_map()));
    CHECK(check_decomposition(r, d.member_parabolics(r)) == Validity::OfX);
    for (const auto &f : d.factors)
      CHECK(algorithm_b(f).decomposition.size() == 1);

    // recursion count and P* bound at every node
    for (const auto &node : d.trace) {
      if (node.left) {
        CHECK(node.recursion_calls == 2 + d.trace[*node.left].recursion_calls +
                                          d.trace[*node.right].recursion_calls);
      } else {
        CHECK(node.recursion_calls == 0);
      }
      CHECK((std::size_t{1} << node.p_star_size) <= node.degree);
    }
    CHECK(d.trace[0].recursion_calls == 4);
  }
}

TEST_CASE("algorithm C factors the conjugacy scheme of S3 x S3") {
  const auto s3 = corpus::conj(symmetric_group(3));
  const auto s33 =
      corpus::conj(direct_product(symmetric_group(3), symmetric_group(3)));
  const auto d = algorithm_c(s33);
  REQUIRE(d.factors.size() == 2);
  for (const auto &f : d.factors) {
    CHECK(f.fingerprint() == s3.fingerprint());
    CHECK(find_isomorphism_brute_force(f, s3).has_value());
  }
}

TEST_CASE("maximal decomposition is unique across merge orders and relabelings") {
  const auto product =
      tensor_of({trivial_scheme(3), trivial_scheme(3), trivial_scheme(4)});
  auto members_of = [](const CC &cc, const TensorDecomposition &d) {
    std::set<std::vector<Color>> out;
    for (const auto &e : d.member_parabolics(cc))
      out.insert(e.colors().to_vector());
    return out;
  };
  const auto reference = members_of(product, algorithm_c(product));
  REQUIRE(reference.size() == 3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    DecompositionOptions o;
    o.merge_seed = seed;
    CHECK(members_of(product, algorithm_c(product, o)) == reference);
  }
  // Relabel, decompose, then pull each member back through the permutation.
  for (std::uint64_t seed = 100; seed < 103; ++seed) {
    const auto [r, perm] = random_relabel(product, seed);
    const auto d = algorithm_c(r);
    std::set<std::vector<Color>> pulled;
    for (const auto &e : d.member_parabolics(r)) {
      ColorSet s(product.rank());
      for (Point a = 0; a < product.degree(); ++a)
        for (Point b = 0; b < product.degree(); ++b)
          if (e.contains(r.cell(perm[a], perm[b])))
            s.insert(product.cell(a, b));
      pulled.insert(s.to_vector());
    }
    CHECK(pulled == reference);
  }
}

TEST_CASE("factor multiset does not depend on construction order") {
  const auto t3 = trivial_scheme(3), t4 = trivial_scheme(4);
  const auto s3 = corpus::conj(symmetric_group(3));
  const auto a = algorithm_c(tensor_of({t3, s3, t4}));
  const auto b = algorithm_c(tensor_of({t4, t3, s3}));
  CHECK(fingerprints(a.factors) == fingerprints(b.factors));
  CHECK(fingerprints(a.factors) == fingerprints({t3, t4, s3}));
  // sorted by (degree, rank, fingerprint)
  for (std::size_t i = 1; i < a.factors.size(); ++i)
    CHECK(a.factors[i - 1].degree() <= a.factors[i].degree());
}

TEST_CASE("meets of two coarsenings of a common refinement") {
  const auto product =
      tensor_of({trivial_scheme(3), trivial_scheme(3), trivial_scheme(4)});
  const auto e = corpus::standard_members(product, {3, 3, 4});
  const auto p = std::vector<Parabolic>{join(product, e[0], e[1]), e[2]};
  const auto q = std::vector<Parabolic>{e[0], join(product, e[1], e[2])};
  REQUIRE(check_decomposition(product, p) != Validity::Invalid);
  REQUIRE(check_decomposition(product, q) != Validity::Invalid);
  std::vector<Parabolic> meets;
  for (const auto &x : p)
    for (const auto &y : q) {
      auto m = meet(product, x, y);
      if (!is_discrete(product, m))
        meets.push_back(std::move(m));
    }
  CHECK(meets.size() == 3);
  CHECK(check_decomposition(product, meets) != Validity::Invalid);
}

TEST_CASE("a report from another configuration is rejected") {
  const auto t = tensor_of({trivial_scheme(3), trivial_scheme(4)});
  const auto d = algorithm_c(t);
  CHECK(error_of([&] { d.member_parabolics(trivial_scheme(12)); }) ==
        ErrorCode::HomeMismatch);
}
