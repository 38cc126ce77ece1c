#pragma once

// Relations of a coherent configuration as unions of basis colors: dot
// product, transpose, equivalence closure, the parabolic lattice and the
// commutation and perpendicularity predicates.
//
// Every operation takes the home configuration first and throws
// Error(HomeMismatch) if an argument belongs to a different configuration.

#include <cstddef>
#include <optional>
#include <vector>

#include "ccdec/coherent_configuration.hpp"
#include "ccdec/relation.hpp"

namespace ccdec {

Relation make_relation(const CC &cc, const std::vector<Color> &colors);
Relation make_relation(const CC &cc, ColorSet colors);
Relation basis_relation(const CC &cc, Color s);
Relation empty_relation(const CC &cc);

/// The diagonal 1_Ω: all reflexive colors.
Parabolic discrete_parabolic(const CC &cc);
/// Ω × Ω: all colors.
Parabolic full_parabolic(const CC &cc);

/// Colors t with c_{xy}^t > 0 for some x in r, y in s.
Relation dot(const CC &cc, const Relation &r, const Relation &s);
Relation transpose(const CC &cc, const Relation &r);

bool is_parabolic(const CC &cc, const Relation &r);
std::optional<Parabolic> try_parabolic(const CC &cc, const Relation &r);
/// Throws Error(NotAParabolic) if r is not an equivalence relation.
Parabolic as_parabolic(const CC &cc, const Relation &r);

/// Smallest equivalence relation containing r; always a parabolic.
Parabolic equivalence_closure(const CC &cc, const Relation &r);

Parabolic meet(const CC &cc, const Parabolic &e, const Parabolic &f);
Parabolic join(const CC &cc, const Parabolic &e, const Parabolic &f);

bool is_discrete(const CC &cc, const Parabolic &e);
bool is_full(const CC &cc, const Parabolic &e);

bool commute(const CC &cc, const Relation &r, const Relation &s);
/// x·f = f·x for every basis x ⊆ e and e·y = y·e for every basis y ⊆ f.
bool strongly_commute(const CC &cc, const Parabolic &e, const Parabolic &f);
/// Every nonempty x·y with basis x ⊆ e, y ⊆ f is a single basis relation.
bool perp(const CC &cc, const Parabolic &e, const Parabolic &f);

struct Partition {
  /// Point -> class index; classes ordered by minimal member.
  std::vector<Point> class_of;
  std::vector<std::vector<Point>> classes;
};

Partition classes(const CC &cc, const Parabolic &e);

/// All parabolics, discrete first, stopping after `cap` of them.
std::vector<Parabolic> enumerate_parabolics(const CC &cc, std::size_t cap);

} // namespace ccdec
