#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hallmark/element_table.hpp"
#include "hallmark/subgroup.hpp"

namespace hallmark {

namespace structure_detail {

// A universe for lattice computations: a subgroup U of some table-backed
// ambient group, carried as a bitset plus generating indices. All kernels
// below operate strictly inside `mask`, so the same routines serve the
// ambient group itself (mask = all) and any subgroup of it.
struct Universe {
  std::shared_ptr<const ElementTable> t;
  Bits mask;
  std::vector<std::uint16_t> gens;
  std::uint64_t order = 0;
};

inline Universe whole_universe(const PermGroup& g,
                               std::uint64_t cap = Budgets::defaults().table_cap) {
  auto t = ElementTable::of(g, cap);
  Universe u;
  u.mask = t->all();
  u.order = t->size();
  for (const Perm& p : g.action_generators())
    u.gens.push_back(static_cast<std::uint16_t>(t->index_checked(p)));
  u.t = std::move(t);
  return u;
}

inline Universe sub_universe(std::shared_ptr<const ElementTable> t, Bits mask) {
  Universe u;
  u.gens = t->generating_indices(mask);
  u.order = mask.count();
  u.mask = std::move(mask);
  u.t = std::move(t);
  return u;
}

// True iff conjugation by g maps the subgroup `h` onto itself. `hgens` must
// generate h; |h| = |h^g| makes containment of conjugated generators enough.
inline bool normalizes(const ElementTable& t, const Bits& h,
                       const std::vector<std::uint16_t>& hgens, std::uint16_t g) {
  for (std::uint16_t x : hgens)
    if (!h.test(t.conj(x, g))) return false;
  return true;
}

// N_U(h) = {g in U : h^g = h}. Precondition: h is a subgroup contained in U.
inline Bits normalizer_bits(const Universe& u, const Bits& h) {
  auto hgens = u.t->generating_indices(h);
  Bits out = u.t->empty_set();
  u.mask.for_each([&](unsigned g) {
    if (normalizes(*u.t, h, hgens, static_cast<std::uint16_t>(g))) out.set(g);
  });
  return out;
}

inline bool is_normal_in(const Universe& u, const Bits& h) {
  auto hgens = u.t->generating_indices(h);
  for (std::uint16_t g : u.gens)
    if (!normalizes(*u.t, h, hgens, g)) return false;
  return true;
}

// Conjugation orbit of a subgroup under the universe's generators.
// rep[i] conjugates members[0] onto members[i]; rep[0] is the identity.
struct ClassBits {
  std::vector<Bits> members;
  std::vector<std::uint16_t> rep;
};

inline ClassBits conj_class_bits(const Universe& u, const Bits& h) {
  ClassBits out;
  std::unordered_map<Bits, std::uint32_t, Bits::Hash> seen;
  seen.emplace(h, 0);
  out.members.push_back(h);
  out.rep.push_back(0);
  for (std::size_t i = 0; i < out.members.size(); ++i)
    for (std::uint16_t g : u.gens) {
      Bits next = u.t->conj_set(out.members[i], g);
      if (seen.emplace(next, out.members.size()).second) {
        out.rep.push_back(u.t->mul(out.rep[i], g));
        out.members.push_back(std::move(next));
      }
    }
  return out;
}

// All subgroups of U. Seeds are the distinct cyclic subgroups; the set is
// closed under join-with-a-cyclic-seed, which reaches the same fixpoint as
// pairwise joins because every subgroup is built one cyclic generator at a
// time. Throws BudgetExceeded past `budget` discovered subgroups.
inline std::vector<Bits> subgroups_bits(const Universe& u, std::uint64_t budget) {
  struct Seed {
    Bits bits;
    std::uint16_t gen;
  };
  std::vector<Seed> seeds;
  std::unordered_set<Bits, Bits::Hash> seen;
  u.mask.for_each([&](unsigned x) {
    Bits c = u.t->cyclic(static_cast<std::uint16_t>(x));
    if (seen.insert(c).second)
      seeds.push_back({std::move(c), static_cast<std::uint16_t>(x)});
  });

  struct Rec {
    Bits bits;
    std::vector<std::uint16_t> gens;
  };
  std::vector<Rec> recs;
  recs.reserve(seeds.size());
  for (const Seed& s : seeds) recs.push_back({s.bits, {s.gen}});
  if (recs.size() > budget) throw BudgetExceeded("subgroup budget exceeded");

  for (std::size_t i = 0; i < recs.size(); ++i)
    for (const Seed& s : seeds) {
      if (s.bits.subset_of(recs[i].bits)) continue;
      std::vector<std::uint16_t> gens = recs[i].gens;
      gens.push_back(s.gen);
      Bits j = u.t->closure(gens);
      if (seen.insert(j).second) {
        recs.push_back({std::move(j), std::move(gens)});
        if (recs.size() > budget) throw BudgetExceeded("subgroup budget exceeded");
      }
    }

  std::vector<Bits> out;
  out.reserve(recs.size());
  for (Rec& r : recs) out.push_back(std::move(r.bits));
  std::sort(out.begin(), out.end(), [](const Bits& a, const Bits& b) {
    std::uint64_t ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    return a.seq_less(b);
  });
  return out;
}

// One representative per conjugation orbit (under the universe's generators)
// of the nontrivial elements of `set`. Callers pass a normal `set`, so orbits
// stay inside it; conjugate elements have the same normal closure, which
// makes representatives enough as closure seeds.
inline std::vector<std::uint16_t> conj_reps_in(const Universe& u, const Bits& set) {
  std::vector<std::uint16_t> reps;
  Bits seen = u.t->empty_set();
  std::vector<std::uint16_t> orbit;
  set.for_each([&](unsigned x0) {
    if (x0 == 0 || seen.test(x0)) return;
    const std::uint16_t x = static_cast<std::uint16_t>(x0);
    reps.push_back(x);
    orbit.assign(1, x);
    seen.set(x);
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (std::uint16_t g : u.gens) {
        std::uint16_t y = u.t->conj(orbit[i], g);
        if (!seen.test(y)) {
          seen.set(y);
          orbit.push_back(y);
        }
      }
  });
  return reps;
}

// Normal closure in U of the cyclic subgroup generated by x: the subgroup
// generated by the conjugation orbit of x under U.
inline Bits normal_closure_of_element(const Universe& u, std::uint16_t x) {
  std::vector<std::uint16_t> orbit{x};
  Bits in_orbit = u.t->empty_set();
  in_orbit.set(x);
  for (std::size_t i = 0; i < orbit.size(); ++i)
    for (std::uint16_t g : u.gens) {
      std::uint16_t y = u.t->conj(orbit[i], g);
      if (!in_orbit.test(y)) {
        in_orbit.set(y);
        orbit.push_back(y);
      }
    }
  return u.t->closure(orbit);
}

// All normal subgroups of U: every normal subgroup is the join of the normal
// closures of the cyclic subgroups of its elements, so the join-closure of
// those seeds is exactly the set of normal subgroups.
inline std::vector<Bits> normal_subgroups_bits(const Universe& u) {
  std::vector<Bits> seeds;
  std::unordered_set<Bits, Bits::Hash> seen;
  seeds.push_back(u.t->trivial_subgroup());
  seen.insert(seeds.back());
  for (std::uint16_t x : conj_reps_in(u, u.mask)) {
    Bits n = normal_closure_of_element(u, x);
    if (seen.insert(n).second) seeds.push_back(std::move(n));
  }

  std::vector<Bits> out = seeds;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const Bits& s : seeds) {
      if (s.subset_of(out[i])) continue;
      std::vector<std::uint16_t> gens = u.t->generating_indices(out[i]);
      for (std::uint16_t g : u.t->generating_indices(s)) gens.push_back(g);
      Bits j = u.t->closure(gens);
      if (seen.insert(j).second) out.push_back(std::move(j));
    }

  std::sort(out.begin(), out.end(), [](const Bits& a, const Bits& b) {
    std::uint64_t ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    return a.seq_less(b);
  });
  return out;
}

// Largest power of p dividing n.
inline std::uint64_t p_part(std::uint64_t n, unsigned p) {
  std::uint64_t m = 1;
  while (n % p == 0) {
    n /= p;
    m *= p;
  }
  return m;
}

// Deterministic Sylow p-subgroup of U: grow a p-subgroup P by adjoining the
// least p-power-order element of N_U(P) \ P. Such an element exists while
// |P| < p-part(|U|) because p divides |N_U(P) : P|, and ⟨P, y⟩ stays a
// p-group since y normalizes P.
inline Bits sylow_bits(const Universe& u, unsigned p) {
  const std::uint64_t target = p_part(u.order, p);
  Bits pbits = u.t->trivial_subgroup();
  std::uint64_t psize = 1;
  while (psize < target) {
    Bits nb = normalizer_bits(u, pbits);
    std::uint16_t pick = 0;
    bool found = false;
    nb.for_each([&](unsigned y) {
      if (found || pbits.test(y)) return;
      std::uint32_t o = u.t->elem_order(static_cast<std::uint16_t>(y));
      while (o % p == 0) o /= p;
      if (o == 1) {
        pick = static_cast<std::uint16_t>(y);
        found = true;
      }
    });
    if (!found)
      throw InternalCheckFailed("Sylow growth stalled below the p-part");
    std::vector<std::uint16_t> gens = u.t->generating_indices(pbits);
    gens.push_back(pick);
    pbits = u.t->closure(gens);
    psize = pbits.count();
  }
  return pbits;
}

inline bool key_less(const Bits& a, const Bits& b) {
  std::uint64_t ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  return a.seq_less(b);
}

}  // namespace structure_detail

namespace detail {

inline Subgroup subgroup_from_bits(const PermGroup& ambient,
                                   const ElementTable& t, const Bits& bits) {
  std::vector<Perm> gens;
  for (std::uint16_t i : t.generating_indices(bits)) gens.push_back(t.perm(i));
  return Subgroup::from_bits(ambient, bits, std::move(gens));
}

}  // namespace detail

// The complete list of subgroups of G, sorted by canonical key
// (order, then element-set sequence). Throws BudgetExceeded past `budget`.
inline std::vector<Subgroup> subgroups(
    const PermGroup& g,
    std::uint64_t budget = Budgets::defaults().subgroup_budget) {
  auto u = structure_detail::whole_universe(g);
  std::vector<Subgroup> out;
  for (const Bits& b : structure_detail::subgroups_bits(u, budget))
    out.push_back(detail::subgroup_from_bits(g, *u.t, b));
  return out;
}

// Exactly the subgroups closed under conjugation by all generators of G.
inline std::vector<Subgroup> normal_subgroups(const PermGroup& g) {
  auto u = structure_detail::whole_universe(g);
  std::vector<Subgroup> out;
  for (const Bits& b : structure_detail::normal_subgroups_bits(u))
    out.push_back(detail::subgroup_from_bits(g, *u.t, b));
  return out;
}

// Least nontrivial normal subgroup of G inside A, by order then canonical
// key. The candidates are the normal closures of elements of A: any minimal
// normal B ≤ A equals the closure of each of its nontrivial elements.
inline Subgroup minimal_normal_in(const PermGroup& g, const Subgroup& a) {
  if (a.order() <= 1) throw InvalidInput("minimal_normal_in: A is trivial");
  auto u = structure_detail::whole_universe(g);
  const Bits& abits = a.bits();
  if (!structure_detail::is_normal_in(u, abits))
    throw InvalidInput("minimal_normal_in: A is not normal in G");
  bool have = false;
  Bits best = u.t->empty_set();
  for (std::uint16_t x : structure_detail::conj_reps_in(u, abits)) {
    Bits n = structure_detail::normal_closure_of_element(u, x);
    if (!have || structure_detail::key_less(n, best)) {
      best = std::move(n);
      have = true;
    }
  }
  if (!have) throw InternalCheckFailed("no nontrivial normal closure found");
  return detail::subgroup_from_bits(g, *u.t, best);
}

// N_G(H) = {g in G : H^g = H}.
inline Subgroup normalizer(const PermGroup& g, const Subgroup& h) {
  auto u = structure_detail::whole_universe(g);
  return detail::subgroup_from_bits(g, *u.t,
                                    structure_detail::normalizer_bits(u, h.bits()));
}

// ⟨H ∪ K⟩ inside G.
inline Subgroup join(const PermGroup& g, const Subgroup& h, const Subgroup& k) {
  auto u = structure_detail::whole_universe(g);
  std::vector<std::uint16_t> gens = u.t->generating_indices(h.bits());
  for (std::uint16_t x : u.t->generating_indices(k.bits())) gens.push_back(x);
  return detail::subgroup_from_bits(g, *u.t, u.t->closure(gens));
}

// H ∩ K as a subgroup of G.
inline Subgroup intersect(const PermGroup& g, const Subgroup& h,
                          const Subgroup& k) {
  auto t = ElementTable::of(g);
  return detail::subgroup_from_bits(g, *t, h.bits() & k.bits());
}

// H^g = g⁻¹Hg, generated by the conjugated generators of H.
inline Subgroup conjugate(const Subgroup& h, const Perm& g) {
  if (!h.ambient().contains(g))
    throw InvalidInput("conjugate: element lies outside the ambient group");
  auto t = ElementTable::of(h.ambient());
  std::uint16_t gi = static_cast<std::uint16_t>(t->index_checked(g));
  std::vector<Perm> gens;
  gens.reserve(h.generators().size());
  for (const Perm& x : h.generators()) gens.push_back(hallmark::conjugate(x, g));
  return Subgroup::from_bits(h.ambient(), t->conj_set(h.bits(), gi),
                             std::move(gens));
}

// H^G as a SubgroupClass: representative H, members sorted by canonical key.
inline SubgroupClass conjugacy_class(const PermGroup& g, const Subgroup& h) {
  auto u = structure_detail::whole_universe(g);
  auto cls = structure_detail::conj_class_bits(u, h.bits());
  std::sort(cls.members.begin(), cls.members.end(), structure_detail::key_less);
  SubgroupClass out{h, {}};
  out.members.reserve(cls.members.size());
  for (const Bits& b : cls.members)
    out.members.push_back(detail::subgroup_from_bits(g, *u.t, b));
  return out;
}

}  // namespace hallmark
