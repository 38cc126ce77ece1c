#pragma once

// Maximal tensor decomposition of thick coherent configurations.
//
// The pipeline is: irredundant colors -> the greedy set P* of pairwise
// strongly commuting, perpendicular parabolics (algorithm_a) -> a
// decomposability certificate built from subset products of P*
// (algorithm_b) -> recursive splitting into indecomposable quotients with
// an explicit, verified point bijection (algorithm_c).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ccdec/coherent_configuration.hpp"
#include "ccdec/relation_algebra.hpp"

namespace ccdec {

struct RedundancyWitness {
  Color x = 0;
  Color y = 0;
};

/// Irreflexive x, y with x·y = {s} and ⟨x⟩ ∧ ⟨y⟩ discrete, if any exist.
std::optional<RedundancyWitness> redundancy_witness(const CC &cc, Color s);
bool is_irredundant(const CC &cc, Color s);

enum class Validity { Invalid, OfOmega, OfX };

std::string_view to_string(Validity v);

struct AtomicCartesianDecomposition {
  std::vector<Parabolic> members;
  /// complements[i] is the dot product of all members except members[i].
  std::vector<Parabolic> complements;
  Validity validity = Validity::Invalid;

  std::size_t size() const noexcept { return members.size(); }
};

/// Checks the Cartesian-decomposition conditions. `complements` is filled
/// whenever the members pairwise commute. For at most ten members the
/// Boolean-lattice identity P_I ∧ P_J = P_{I∩J} is asserted (throws
/// Error(VerificationFailed) if it ever fails).
AtomicCartesianDecomposition analyze_decomposition(
    const CC &cc, const std::vector<Parabolic> &members);

Validity check_decomposition(const CC &cc,
                             const std::vector<Parabolic> &members);
/// Throws Error(NotAParabolic) if a member is not an equivalence relation.
Validity check_decomposition(const CC &cc,
                             const std::vector<Relation> &members);

/// Dot product of the members indexed by `subset`; discrete when empty.
Parabolic subset_product(const CC &cc, const std::vector<Parabolic> &members,
                         std::span<const std::size_t> subset);

struct DecompositionOptions {
  /// When set, the merge step of algorithm_a picks a uniformly random
  /// offending pair instead of the first one in canonical order.
  std::optional<std::uint64_t> merge_seed;
};

struct AlgorithmAResult {
  /// Sorted by (size, ascending color list).
  std::vector<Parabolic> p_star;
  std::size_t irredundant_colors = 0;
  std::size_t merges = 0;
};

AlgorithmAResult algorithm_a(const CC &cc,
                             const DecompositionOptions &options = {});

struct Certificate {
  /// One member ({full}) if indecomposable, two otherwise.
  AtomicCartesianDecomposition decomposition;
  std::size_t p_star_size = 0;
  Validity p_star_validity = Validity::Invalid;
  /// Number of subset splits examined up to and including the accepted one.
  std::size_t subsets_tested = 0;
};

/// Errors: NotThick.
Certificate algorithm_b(const CC &cc, const DecompositionOptions &options = {});

/// Bijection between tuples of complement classes and points.
struct CartesianBijection {
  /// radix[i] = number of classes of complements[i].
  std::vector<std::size_t> radix;
  /// Point -> tuple of class indices.
  std::vector<std::vector<Point>> coordinates;
  /// Lexicographic tuple index -> point.
  std::vector<Point> point_at;
};

/// Errors: NotCartesian if P is invalid or some intersection of complement
/// classes is empty or has more than one point.
CartesianBijection pi_p(const CC &cc, const AtomicCartesianDecomposition &p);

/// True iff `map` (source point -> target point) sends every source color
/// onto exactly one target color and the induced color map is bijective.
/// Errors: DegreeMismatch.
bool verify_isomorphism(const CC &source, const CC &target,
                        std::span<const Point> map);

/// Exhaustive search over all point bijections; only for degree <= 9.
std::optional<std::vector<Point>> find_isomorphism_brute_force(const CC &a,
                                                               const CC &b);

struct TraceNode {
  std::size_t degree = 0;
  std::size_t p_star_size = 0;
  Validity p_star_validity = Validity::Invalid;
  std::size_t subsets_tested = 0;
  std::size_t certificate_size = 1;
  /// Recursive calls made at and below this node.
  std::size_t recursion_calls = 0;
  std::optional<std::size_t> left;
  std::optional<std::size_t> right;
};

struct TensorDecomposition {
  /// Sorted by (degree, rank, fingerprint).
  std::vector<CoherentConfiguration> factors;
  /// Source point -> tuple of factor points.
  std::vector<std::vector<Point>> point_map;
  /// nodes[0] is the root call.
  std::vector<TraceNode> trace;
  std::uint64_t source_id = 0;

  /// Source point -> point of tensor(factors) (lexicographic index).
  std::vector<Point> tensor_map() const;
  /// The atomic Cartesian decomposition of the source induced by the
  /// factors: member i relates points whose tuples differ only at i.
  std::vector<Parabolic> member_parabolics(const CC &source) const;
};

/// Errors: NotThick; VerificationFailed if the final bijection does not
/// verify (never expected).
TensorDecomposition algorithm_c(const CC &cc,
                                const DecompositionOptions &options = {});

} // namespace ccdec
