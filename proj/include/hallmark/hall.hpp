#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "hallmark/primes.hpp"
#include "hallmark/structure.hpp"

namespace hallmark {

namespace hall_detail {

// All π-Hall subgroups of the universe U, grouped into U-conjugacy classes.
// Classes are ordered by their least member under the canonical key; members
// are sorted the same way.
//
// Production algorithm (exact): a π-Hall subgroup H of U contains, for every
// p ∈ π dividing |U|, a Sylow p-subgroup of H whose order is the full p-part
// of |U| — i.e. a full Sylow p-subgroup of U. Hence H is exactly a join of
// full Sylow subgroups, one per prime, whose order equals pi_part(|U|, π).
// We enumerate all cross-combinations of the Sylow classes with a
// divisibility prune (every partial join is a subgroup of the final H, so
// its order must divide the Hall order). The spec's subgroup-list filter is
// retained as a test oracle on small groups.
inline std::vector<std::vector<Bits>> hall_classes(
    const structure_detail::Universe& u, const PrimeSet& pi) {
  const std::uint64_t m = pi_part(u.order, pi);
  std::vector<Bits> all;
  if (m == 1) {
    all.push_back(u.t->trivial_subgroup());
  } else if (m == u.order) {
    all.push_back(u.mask);
  } else {
    std::vector<unsigned> ps;
    for (unsigned p : pi.primes())
      if (u.order % p == 0) ps.push_back(p);

    struct SylowClass {
      std::vector<Bits> members;
      std::vector<std::vector<std::uint16_t>> gens;
    };
    std::vector<SylowClass> classes;
    for (unsigned p : ps) {
      SylowClass c;
      c.members = structure_detail::conj_class_bits(
                      u, structure_detail::sylow_bits(u, p))
                      .members;
      for (const Bits& b : c.members)
        c.gens.push_back(u.t->generating_indices(b));
      classes.push_back(std::move(c));
    }

    std::unordered_set<Bits, Bits::Hash> seen;
    // depth-first cross product over one Sylow subgroup per prime
    auto rec = [&](auto&& self, std::size_t k, const Bits& part,
                   const std::vector<std::uint16_t>& pgens) -> void {
      if (k == classes.size()) {
        if (part.count() == m && seen.insert(part).second)
          all.push_back(part);
        return;
      }
      for (std::size_t i = 0; i < classes[k].members.size(); ++i) {
        std::vector<std::uint16_t> gens = pgens;
        for (std::uint16_t x : classes[k].gens[i]) gens.push_back(x);
        Bits j = k == 0 ? classes[k].members[i] : u.t->closure(gens);
        if (m % j.count() == 0) self(self, k + 1, j, gens);
      }
    };
    rec(rec, 0, u.t->trivial_subgroup(), {});
  }

  std::sort(all.begin(), all.end(), structure_detail::key_less);
  std::vector<std::vector<Bits>> out;
  std::unordered_set<Bits, Bits::Hash> assigned;
  std::size_t covered = 0;
  for (const Bits& h : all) {
    if (assigned.count(h)) continue;
    auto cls = structure_detail::conj_class_bits(u, h).members;
    for (const Bits& c : cls)
      if (!assigned.insert(c).second)
        throw InternalCheckFailed("Hall class members overlap");
    covered += cls.size();
    std::sort(cls.begin(), cls.end(), structure_detail::key_less);
    out.push_back(std::move(cls));
  }
  if (covered != all.size())
    throw InternalCheckFailed("Hall set is not closed under conjugation");
  return out;
}

inline bool is_hall_in(const structure_detail::Universe& u, const Bits& h,
                       const PrimeSet& pi) {
  return h.count() == pi_part(u.order, pi);
}

}  // namespace hall_detail

struct HallReport {
  PrimeSet pi;
  std::uint64_t hall_order = 0;          // the π-part of |G|
  std::vector<SubgroupClass> classes;    // all Hall subgroups, by conjugacy
  bool satisfies_E = false;              // some π-Hall subgroup exists
  bool satisfies_C = false;              // and any two are conjugate
};

// True iff |H| = pi_part(|G|, π) (and H actually sits inside G).
inline bool is_hall_subgroup(const PermGroup& g, const Subgroup& h,
                             const PrimeSet& pi) {
  for (const Perm& p : h.generators())
    if (!g.contains(p)) throw InvalidInput("is_hall_subgroup: H is not in G");
  return h.order() == pi_part(g.order(), pi);
}

// A Sylow p-subgroup of G (deterministic construction).
inline Subgroup sylow(const PermGroup& g, unsigned p) {
  if (!is_prime(p)) throw InvalidInput("sylow: p must be prime");
  auto u = structure_detail::whole_universe(g);
  return detail::subgroup_from_bits(g, *u.t, structure_detail::sylow_bits(u, p));
}

// All π-Hall subgroups of G, grouped into conjugacy classes, with the E_π
// and C_π flags.
inline HallReport hall_subgroups(const PermGroup& g, const PrimeSet& pi) {
  auto u = structure_detail::whole_universe(g);
  HallReport r;
  r.pi = pi;
  r.hall_order = pi_part(g.order(), pi);
  for (const auto& cls : hall_detail::hall_classes(u, pi)) {
    SubgroupClass sc{detail::subgroup_from_bits(g, *u.t, cls.front()), {}};
    for (const Bits& b : cls)
      sc.members.push_back(detail::subgroup_from_bits(g, *u.t, b));
    r.classes.push_back(std::move(sc));
  }
  r.satisfies_E = !r.classes.empty();
  r.satisfies_C = r.classes.size() == 1;
  return r;
}

// π-separability, decided inside the normal-subgroup lattice: starting from
// N = 1, repeatedly replace N by the largest normal subgroup M ⊇ N whose
// index |M : N| is a π-number, then the same for π′ — the lattice image of
// "quotient by the largest normal π-subgroup, then π′". G is π-separable iff
// the walk reaches G. (Products of normal π-subgroups are normal π-subgroups,
// so the largest candidate is unique; no coset action is ever built, keeping
// the routine free of the quotient degree limit.)
inline bool is_pi_separable(const PermGroup& g, const PrimeSet& pi) {
  auto u = structure_detail::whole_universe(g);
  auto normals = structure_detail::normal_subgroups_bits(u);
  auto grow = [&](const Bits& n, bool primed) {
    std::uint64_t nsize = n.count();
    const Bits* best = &n;
    std::uint64_t best_size = nsize;
    for (const Bits& m : normals) {
      std::uint64_t msize = m.count();
      if (msize <= best_size || msize % nsize != 0 || !n.subset_of(m)) continue;
      bool ok = primed ? pi_part(msize / nsize, pi) == 1
                       : is_pi_number(msize / nsize, pi);
      if (ok) {
        best = &m;
        best_size = msize;
      }
    }
    return *best;
  };
  Bits n = u.t->trivial_subgroup();
  while (true) {
    Bits next = grow(grow(n, false), true);
    if (next.count() == u.order) return true;
    if (next == n) return false;
    n = std::move(next);
  }
}

}  // namespace hallmark
