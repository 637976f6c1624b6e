#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hallmark/hall.hpp"
#include "hallmark/pronormal.hpp"
#include "hallmark/quotient.hpp"

namespace hallmark {

namespace theorem_detail {

// Whether a conjugacy class of subgroups (as bitsets) is closed under
// conjugation by every generator of the outer universe.
inline bool class_is_stable(const structure_detail::Universe& gu,
                            const std::vector<Bits>& members) {
  std::unordered_set<Bits, Bits::Hash> set(members.begin(), members.end());
  for (const Bits& m : members)
    for (std::uint16_t g : gu.gens)
      if (!set.count(gu.t->conj_set(m, g))) return false;
  return true;
}

// Every π-Hall subgroup of the universe, flattened out of its conjugacy
// classes into one canonically ordered list.
inline std::vector<Bits> hall_members_sorted(const structure_detail::Universe& u,
                                             const PrimeSet& pi) {
  std::vector<Bits> all;
  for (auto& cls : hall_detail::hall_classes(u, pi))
    for (Bits& h : cls) all.push_back(std::move(h));
  std::sort(all.begin(), all.end(), structure_detail::key_less);
  return all;
}

// Lemma 8 kernel: least member of the first B-class of Hall_π(B) that is
// stable under conjugation by G. A stable class containing V satisfies
// V^G = V^B (the G-orbit stays in the class, which is a single B-orbit), so
// the Frattini identity G = B·N_G(V) must hold; it is re-derived from the
// normalizer as a check.
inline Bits frattini_hall_bits(const structure_detail::Universe& gu,
                               const Bits& b, const PrimeSet& pi) {
  auto ub = structure_detail::sub_universe(gu.t, b);
  for (const auto& cls : hall_detail::hall_classes(ub, pi))
    if (class_is_stable(gu, cls)) {
      const Bits& v = cls.front();
      Bits nb = structure_detail::normalizer_bits(gu, v);
      if (b.count() * nb.count() != gu.order * (b & nb).count())
        throw InternalCheckFailed("frattini_hall: G != B·N_G(V)");
      return v;
    }
  throw NoInvariantClass(
      "frattini_hall: no B-class of pi-Hall subgroups of B is G-stable");
}

// Lemma 6 kernel: canonically least H ∈ Hall_π(K) with H ∩ B = U, by
// exhaustive filter. Preconditions are all checked here.
inline Bits extend_hall_bits(const structure_detail::Universe& ku, const Bits& b,
                             const Bits& u, const PrimeSet& pi) {
  if (!b.subset_of(ku.mask) || !u.subset_of(b))
    throw InvalidInput("extend_hall: expected U <= B <= K");
  if (!structure_detail::is_normal_in(ku, b))
    throw InvalidInput("extend_hall: B is not normal in K");
  if (!is_pi_number(ku.order / b.count(), pi))
    throw InvalidInput("extend_hall: K/B is not a pi-group");
  if (u.count() != pi_part(b.count(), pi))
    throw InvalidInput("extend_hall: U is not a pi-Hall subgroup of B");
  // U^K = U^B; the B-class sits inside the K-class, so sizes decide.
  auto ub = structure_detail::sub_universe(ku.t, b);
  if (structure_detail::conj_class_bits(ku, u).members.size() !=
      structure_detail::conj_class_bits(ub, u).members.size())
    throw InvalidInput("extend_hall: U^K != U^B");

  for (const Bits& h : hall_members_sorted(ku, pi))
    if ((h & b) == u) return h;
  throw ExtensionMissing("extend_hall: no pi-Hall subgroup of K meets B in U");
}

// Lemma 6 fast path: U is a normal π-subgroup of N_K(U), so it lies in every
// π-Hall subgroup of N_K(U), and any such subgroup meets B exactly in U
// (its intersection with B is a π-subgroup of B containing the π-Hall
// subgroup U). It answers the search whenever it reaches the full π-part of
// |K|. Kept as a cross-check; the filter above is the production route.
inline std::optional<Bits> extend_hall_fast_bits(
    const structure_detail::Universe& ku, const Bits& b, const Bits& u,
    const PrimeSet& pi) {
  auto un = structure_detail::sub_universe(
      ku.t, structure_detail::normalizer_bits(ku, u));
  const std::uint64_t m = pi_part(ku.order, pi);
  for (const Bits& h : hall_members_sorted(un, pi))
    if (h.count() == m && (h & b) == u) return h;
  return std::nullopt;
}

}  // namespace theorem_detail

// Lemma 8: a π-Hall subgroup V of the normal subgroup B whose B-class is
// G-invariant, equivalently V^G = V^B, equivalently G = B·N_G(V). Searches
// the B-classes of Hall_π(B) in canonical order. Throws NoInvariantClass if
// no class is G-stable (the Remark 1 obstruction).
inline Subgroup frattini_hall(const PermGroup& g, const Subgroup& b,
                              const PrimeSet& pi) {
  auto gu = structure_detail::whole_universe(g);
  if (b.bits().universe_size() != gu.t->size())
    throw InvalidInput("frattini_hall: B is not a subgroup of G");
  if (!structure_detail::is_normal_in(gu, b.bits()))
    throw InvalidInput("frattini_hall: B is not normal in G");
  return detail::subgroup_from_bits(
      g, *gu.t, theorem_detail::frattini_hall_bits(gu, b.bits(), pi));
}

// Lemma 6: H ∈ Hall_π(K) with H ∩ B = U, for B normal in K with K/B a
// π-group and U ∈ Hall_π(B) satisfying U^K = U^B (all checked).
inline Subgroup extend_hall(const PermGroup& k, const Subgroup& b,
                            const Subgroup& u, const PrimeSet& pi) {
  auto ku = structure_detail::whole_universe(k);
  if (b.bits().universe_size() != ku.t->size() ||
      u.bits().universe_size() != ku.t->size())
    throw InvalidInput("extend_hall: B and U must be subgroups of K");
  return detail::subgroup_from_bits(
      k, *ku.t, theorem_detail::extend_hall_bits(ku, b.bits(), u.bits(), pi));
}

// Lemma 6 inside an ambient group: K, B, U are subgroups of one group and the
// extension problem is solved inside K. Used by the Theorem 1 recursion.
inline Subgroup extend_hall(const Subgroup& k, const Subgroup& b,
                            const Subgroup& u, const PrimeSet& pi) {
  auto t = ElementTable::of(k.ambient());
  if (k.bits().universe_size() != t->size() ||
      b.bits().universe_size() != t->size() ||
      u.bits().universe_size() != t->size())
    throw InvalidInput("extend_hall: subgroups lie over different groups");
  auto ku = structure_detail::sub_universe(t, k.bits());
  return detail::subgroup_from_bits(
      k.ambient(), *t,
      theorem_detail::extend_hall_bits(ku, b.bits(), u.bits(), pi));
}

// Lemma 13: H ∈ Hall_π(G) whose product with A is the full preimage of K̄,
// found by exhaustive filter over Hall_π(G) in canonical order. K̄ is a
// π-Hall subgroup of G/A, handed over as a subgroup of a quotient group
// built by quotient(G, A) (the construction is deterministic, so any such
// quotient has the same elements).
inline Subgroup lift_hall_from_quotient(
    const PermGroup& g, const Subgroup& a, const Subgroup& kbar,
    const PrimeSet& pi,
    unsigned degree_limit = Budgets::defaults().degree_limit) {
  Epimorphism phi = quotient(g, a, degree_limit);
  const PermGroup& q = phi.target();
  std::vector<Perm> kgens = kbar.generators();
  for (const Perm& p : kgens)
    if (p.degree() != q.degree() || !q.contains(p))
      throw InvalidInput("lift_hall_from_quotient: K-bar is not in G/A");
  Subgroup kb(q, std::move(kgens));
  if (kb.order() != pi_part(q.order(), pi))
    throw InvalidInput(
        "lift_hall_from_quotient: K-bar is not a pi-Hall subgroup of G/A");
  const Bits want = phi.preimage(kb).bits();

  auto gu = structure_detail::whole_universe(g);
  const Bits& ab = a.bits();
  for (const Bits& h : theorem_detail::hall_members_sorted(gu, pi)) {
    // |H·A| = |H||A| / |H ∩ A| must match before the set comparison.
    if (h.count() * ab.count() != want.count() * (h & ab).count()) continue;
    std::vector<std::uint16_t> gens = gu.t->generating_indices(h);
    for (std::uint16_t x : gu.t->generating_indices(ab)) gens.push_back(x);
    if (gu.t->closure(gens) == want)
      return detail::subgroup_from_bits(g, *gu.t, h);
  }
  throw LiftMissing("lift_hall_from_quotient: no pi-Hall subgroup lifts K-bar");
}

// One level of the Theorem 1 recursion, recorded for trace checks.
struct Theorem1Level {
  std::uint64_t group_order = 0;     // |G| at this level
  std::uint64_t b_order = 0;         // |B|, the minimal normal subgroup chosen
  std::uint64_t quotient_order = 0;  // |G/B|, the next level's group order
  std::uint64_t v_order = 0;         // |V| from frattini_hall
  std::uint64_t k_order = 0;         // |K|, preimage of the recursive Hall
  std::uint64_t h_order = 0;         // |H| returned at this level
};

struct Theorem1Trace {
  std::vector<Theorem1Level> levels;  // outermost level first
  std::size_t depth() const { return levels.size(); }
};

struct Theorem1Result {
  Subgroup hall;
  Theorem1Trace trace;
};

namespace theorem_detail {

inline Subgroup theorem1_rec(const PermGroup& g, const Subgroup& a,
                             const PrimeSet& pi,
                             std::vector<Theorem1Level>& levels) {
  if (a.order() == 1) return Subgroup(g, {});
  Subgroup b = minimal_normal_in(g, a);
  Epimorphism phi = quotient(g, b);
  Subgroup kbar = theorem1_rec(phi.target(), phi.forward(a), pi, levels);
  Subgroup k = phi.preimage(kbar);
  Subgroup v = frattini_hall(g, b, pi);
  Subgroup h = extend_hall(k, b, v, pi);
  levels.push_back({g.order(), b.order(), phi.target().order(), v.order(),
                    k.order(), h.order()});
  return h;
}

}  // namespace theorem_detail

// Theorem 1: a π-Hall subgroup of the normal subgroup A that is pronormal in
// G, built by the recursion of the §2 proof: quotient by a minimal normal
// B ≤ A, lift the recursive solution to K, take V = frattini_hall(G, B, π)
// and extend V through K by Lemma 6. The E_π precheck runs once at the top;
// recursive levels rely on quotients of E_π-groups staying E_π (Lemma 4).
inline Theorem1Result pronormal_hall_in_normal(const PermGroup& g,
                                               const Subgroup& a,
                                               const PrimeSet& pi) {
  auto gu = structure_detail::whole_universe(g);
  if (a.bits().universe_size() != gu.t->size() ||
      !structure_detail::is_normal_in(gu, a.bits()))
    throw InvalidInput("pronormal_hall_in_normal: A is not normal in G");
  if (!hall_subgroups(g, pi).satisfies_E)
    throw NotEPi("pronormal_hall_in_normal: G is not an E_pi group for pi = " +
                 pi.to_string());
  std::vector<Theorem1Level> levels;
  Subgroup h = theorem_detail::theorem1_rec(g, a, pi, levels);
  std::reverse(levels.begin(), levels.end());
  // §2: |A : H| is a π′-number, so H ∈ Hall_π(A); and H is pronormal in G.
  if (!h.bits().subset_of(a.bits()) || h.order() != pi_part(a.order(), pi))
    throw InternalCheckFailed("theorem 1: H is not a pi-Hall subgroup of A");
  if (!is_pronormal(g, h).verdict)
    throw InternalCheckFailed("theorem 1: H is not pronormal in G");
  return Theorem1Result{std::move(h), Theorem1Trace{std::move(levels)}};
}

// Corollary 3 evaluation, with the two premises broken out.
struct EPiCriterion {
  bool holds = false;                   // the full right-hand side
  bool quotient_satisfies_e = false;    // G/A ∈ E_π
  std::optional<Subgroup> stable_hall;  // H ∈ Hall_π(A) with H^A = H^G
};

// Corollary 3: G ∈ E_π iff G/A ∈ E_π and some H ∈ Hall_π(A) has H^A = H^G.
// Evaluates the right-hand side and asserts agreement with the direct E_π
// decision on G.
inline EPiCriterion e_pi_criterion(const PermGroup& g, const Subgroup& a,
                                   const PrimeSet& pi) {
  auto gu = structure_detail::whole_universe(g);
  if (a.bits().universe_size() != gu.t->size() ||
      !structure_detail::is_normal_in(gu, a.bits()))
    throw InvalidInput("e_pi_criterion: A is not normal in G");
  const bool direct = hall_subgroups(g, pi).satisfies_E;

  EPiCriterion r;
  if (a.is_trivial()) {
    // G/1 ≅ G and Hall_π(1) = 1 is trivially G-stable: the criterion
    // collapses to the direct decision without building a coset action.
    r.quotient_satisfies_e = direct;
    r.stable_hall = Subgroup(g, {});
    r.holds = r.quotient_satisfies_e;
  } else {
    r.quotient_satisfies_e =
        hall_subgroups(quotient(g, a).target(), pi).satisfies_E;
    auto ua = structure_detail::sub_universe(gu.t, a.bits());
    for (const auto& cls : hall_detail::hall_classes(ua, pi))
      if (theorem_detail::class_is_stable(gu, cls)) {
        r.stable_hall = detail::subgroup_from_bits(g, *gu.t, cls.front());
        break;
      }
    r.holds = r.quotient_satisfies_e && r.stable_hall.has_value();
  }
  if (r.holds != direct)
    throw InternalCheckFailed(
        "corollary 3 criterion disagrees with the direct E_pi decision");
  return r;
}

}  // namespace hallmark
