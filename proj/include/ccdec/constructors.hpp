#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ccdec/coherent_configuration.hpp"

namespace ccdec {

/// Permutations of [0, degree), given by their image lists.
struct PermutationGroupGens {
  std::size_t degree = 0;
  std::vector<std::vector<Point>> generators;
};

/// Cayley table of a finite group: table[a][b] = a·b.
struct GroupTable {
  std::size_t order = 0;
  std::vector<std::vector<std::uint32_t>> table;
  std::uint32_t identity = 0;
};

/// Orbits of the group generated by `gens` on ordered pairs.
/// Errors: InvalidGenerator.
CoherentConfiguration orbital_configuration(const PermutationGroupGens &gens);

/// Checks closure, associativity, identity and inverses; fills `identity`.
/// Errors: InvalidGroupTable.
GroupTable validate_group_table(GroupTable table);

/// Ω = G; the color of (a, b) is the conjugacy class of b·a⁻¹.
/// Errors: InvalidGroupTable.
CoherentConfiguration conjugacy_class_scheme(const GroupTable &table);

/// Class sizes by direct conjugation, ascending.
std::vector<std::size_t> conjugacy_class_sizes(const GroupTable &table);

/// Coherent closure of an arbitrary coloring by two-dimensional
/// Weisfeiler-Leman refinement. Diagonal and off-diagonal colors are
/// separated before refining.
CoherentConfiguration wl_closure(const ColorMatrix &initial);

/// Colors 0/1 for non-edges/edges of an undirected simple graph.
ColorMatrix graph_coloring(std::size_t n,
                           const std::vector<std::pair<Point, Point>> &edges);

/// 1_Ω and its complement (rank 1 when n = 1). Errors: InvalidArgument.
CoherentConfiguration trivial_scheme(std::size_t n);
/// Every pair its own color (rank n²). Errors: InvalidArgument.
CoherentConfiguration discrete_configuration(std::size_t n);

struct Relabeled {
  CoherentConfiguration configuration;
  std::vector<Point> permutation;
};

/// Deterministic for a given seed.
Relabeled random_relabel(const CoherentConfiguration &cc, std::uint64_t seed);

// Canned groups.
GroupTable group_from_permutations(const PermutationGroupGens &gens);
GroupTable symmetric_group(std::size_t n);
GroupTable cyclic_group(std::size_t n);
GroupTable dihedral_group(std::size_t n); ///< order 2n
GroupTable quaternion_group();
GroupTable direct_product(const GroupTable &a, const GroupTable &b);

/// Natural action of Sym(n) (a transposition and an n-cycle).
PermutationGroupGens symmetric_group_action(std::size_t n);
/// Regular action of the group on itself (right multiplication).
PermutationGroupGens regular_action(const GroupTable &table);

} // namespace ccdec
