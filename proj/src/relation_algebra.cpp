#include "ccdec/relation_algebra.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_set>

namespace ccdec {

namespace {

class DisjointSet {
public:
  explicit DisjointSet(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), Point{0});
  }

  Point find(Point x) {
    Point root = x;
    while (parent_[root] != root)
      root = parent_[root];
    while (parent_[x] != root) {
      const Point next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  void merge(Point x, Point y) {
    x = find(x);
    y = find(y);
    if (x == y)
      return;
    if (size_[x] < size_[y])
      std::swap(x, y);
    parent_[y] = x;
    size_[x] += size_[y];
  }

private:
  std::vector<Point> parent_;
  std::vector<std::size_t> size_;
};

void require_home(const CC &cc, const Relation &r) {
  if (r.home() != cc.id())
    throw Error(ErrorCode::HomeMismatch,
                "relation belongs to a different configuration");
}

Parabolic trusted(const CC &cc, ColorSet colors) {
  return detail::ParabolicAccess::make(Relation(std::move(colors), cc.id()));
}

} // namespace

Relation make_relation(const CC &cc, const std::vector<Color> &colors) {
  ColorSet s(cc.rank());
  for (Color c : colors) {
    if (c >= cc.rank())
      throw Error(ErrorCode::InvalidArgument,
                  "color " + std::to_string(c) + " out of range");
    s.insert(c);
  }
  return Relation(std::move(s), cc.id());
}

Relation make_relation(const CC &cc, ColorSet colors) {
  if (colors.universe() != cc.rank())
    throw Error(ErrorCode::InvalidArgument, "color set universe mismatch");
  return Relation(std::move(colors), cc.id());
}

Relation basis_relation(const CC &cc, Color s) {
  return make_relation(cc, std::vector<Color>{s});
}

Relation empty_relation(const CC &cc) {
  return Relation(ColorSet(cc.rank()), cc.id());
}

Parabolic discrete_parabolic(const CC &cc) {
  return trusted(cc, cc.reflexive_colors());
}

Parabolic full_parabolic(const CC &cc) { return trusted(cc, cc.all_colors()); }

Relation dot(const CC &cc, const Relation &r, const Relation &s) {
  require_home(cc, r);
  require_home(cc, s);
  ColorSet out(cc.rank());
  const auto right = s.colors().to_vector();
  r.colors().for_each([&](Color x) {
    const auto fiber = cc.right_fiber(x);
    for (Color y : right) {
      if (cc.left_fiber(y) != fiber)
        continue;
      for (Color t : cc.products(x, y))
        out.insert(t);
    }
  });
  return Relation(std::move(out), cc.id());
}

Relation transpose(const CC &cc, const Relation &r) {
  require_home(cc, r);
  ColorSet out(cc.rank());
  r.colors().for_each([&](Color x) { out.insert(cc.transpose(x)); });
  return Relation(std::move(out), cc.id());
}

bool is_parabolic(const CC &cc, const Relation &r) {
  require_home(cc, r);
  auto &memo = cc.parabolic_memo();
  {
    std::lock_guard lock(memo.mutex);
    if (auto it = memo.verdicts.find(r.colors()); it != memo.verdicts.end())
      return it->second;
  }
  const bool verdict = cc.reflexive_colors().is_subset_of(r.colors()) &&
                       transpose(cc, r) == r &&
                       dot(cc, r, r).colors().is_subset_of(r.colors());
  std::lock_guard lock(memo.mutex);
  memo.verdicts.emplace(r.colors(), verdict);
  return verdict;
}

std::optional<Parabolic> try_parabolic(const CC &cc, const Relation &r) {
  if (!is_parabolic(cc, r))
    return std::nullopt;
  return detail::ParabolicAccess::make(r);
}

Parabolic as_parabolic(const CC &cc, const Relation &r) {
  if (auto p = try_parabolic(cc, r))
    return *p;
  throw Error(ErrorCode::NotAParabolic,
              "not a parabolic: color set is not an equivalence relation");
}

Parabolic equivalence_closure(const CC &cc, const Relation &r) {
  require_home(cc, r);
  const std::size_t n = cc.degree();
  DisjointSet components(n);
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b)
      if (r.contains(cc.cell(a, b)))
        components.merge(a, b);

  ColorSet out(cc.rank());
  for (Color t = 0; t < cc.rank(); ++t) {
    const auto w = cc.witness(t);
    if (components.find(w.from) == components.find(w.to))
      out.insert(t);
  }
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b)
      if ((components.find(a) == components.find(b)) !=
          out.contains(cc.cell(a, b)))
        throw Error(ErrorCode::ClosureNotARelation,
                    "equivalence closure is not a union of colors");
  return trusted(cc, std::move(out));
}

Parabolic meet(const CC &cc, const Parabolic &e, const Parabolic &f) {
  require_home(cc, e);
  require_home(cc, f);
  return trusted(cc, e.colors() & f.colors());
}

Parabolic join(const CC &cc, const Parabolic &e, const Parabolic &f) {
  require_home(cc, e);
  require_home(cc, f);
  return equivalence_closure(cc,
                             Relation(e.colors() | f.colors(), cc.id()));
}

bool is_discrete(const CC &cc, const Parabolic &e) {
  require_home(cc, e);
  return e.colors().is_subset_of(cc.reflexive_colors());
}

bool is_full(const CC &cc, const Parabolic &e) {
  require_home(cc, e);
  return e.size() == cc.rank();
}

bool commute(const CC &cc, const Relation &r, const Relation &s) {
  return dot(cc, r, s) == dot(cc, s, r);
}

bool strongly_commute(const CC &cc, const Parabolic &e, const Parabolic &f) {
  require_home(cc, e);
  require_home(cc, f);
  bool ok = true;
  e.colors().for_each([&](Color x) {
    if (ok) {
      const auto bx = basis_relation(cc, x);
      ok = dot(cc, bx, f) == dot(cc, f, bx);
    }
  });
  f.colors().for_each([&](Color y) {
    if (ok) {
      const auto by = basis_relation(cc, y);
      ok = dot(cc, e, by) == dot(cc, by, e);
    }
  });
  return ok;
}

bool perp(const CC &cc, const Parabolic &e, const Parabolic &f) {
  require_home(cc, e);
  require_home(cc, f);
  const auto right = f.colors().to_vector();
  bool ok = true;
  e.colors().for_each([&](Color x) {
    for (Color y : right) {
      if (!ok)
        return;
      if (cc.products(x, y).size() > 1)
        ok = false;
    }
  });
  return ok;
}

Partition classes(const CC &cc, const Parabolic &e) {
  require_home(cc, e);
  const std::size_t n = cc.degree();
  constexpr Point unset = std::numeric_limits<Point>::max();
  Partition p;
  p.class_of.assign(n, unset);
  for (Point a = 0; a < n; ++a) {
    if (p.class_of[a] != unset)
      continue;
    const auto k = static_cast<Point>(p.classes.size());
    p.classes.emplace_back();
    for (Point b = 0; b < n; ++b)
      if (e.contains(cc.cell(a, b))) {
        p.class_of[b] = k;
        p.classes.back().push_back(b);
      }
  }
  return p;
}

std::vector<Parabolic> enumerate_parabolics(const CC &cc, std::size_t cap) {
  std::vector<Parabolic> atoms;
  std::unordered_set<ColorSet, ColorSetHash> atom_seen;
  for (Color s = 0; s < cc.rank(); ++s) {
    if (cc.is_reflexive(s))
      continue;
    auto e = equivalence_closure(cc, basis_relation(cc, s));
    if (atom_seen.insert(e.colors()).second)
      atoms.push_back(std::move(e));
  }

  std::vector<Parabolic> found{discrete_parabolic(cc)};
  std::unordered_set<ColorSet, ColorSetHash> seen{found.front().colors()};
  std::deque<std::size_t> queue{0};
  // Every parabolic is the join of the closures of its own colors.
  while (!queue.empty() && found.size() < cap) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (const auto &atom : atoms) {
      if (found.size() >= cap)
        break;
      if (atom.colors().is_subset_of(found[i].colors()))
        continue;
      auto next = join(cc, found[i], atom);
      if (seen.insert(next.colors()).second) {
        found.push_back(std::move(next));
        queue.push_back(found.size() - 1);
      }
    }
  }
  return found;
}

} // namespace ccdec
