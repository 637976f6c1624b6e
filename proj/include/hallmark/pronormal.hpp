#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hallmark/hall.hpp"
#include "hallmark/quotient.hpp"
#include "hallmark/structure.hpp"

namespace hallmark {

namespace pronormal_detail {

struct StepBits {
  std::uint16_t g = 0;  // coset representative with members[0]^g = H^g
  bool ok = false;      // a conjugator was found in ⟨H, H^g⟩
  std::uint16_t x = 0;  // the conjugator (element index), valid when ok
};

// Search a conjugator from `from` to `to` inside the subgroup generated by
// `jgens`: breadth-first over the conjugation orbit of `from`, composing the
// conjugating word along parent links. Returns the element index, or nothing
// when `to` is not in the orbit (i.e. not conjugate inside ⟨jgens⟩).
inline std::optional<std::uint16_t> conjugator_in(
    const structure_detail::Universe& u, const Bits& from, const Bits& to,
    const std::vector<std::uint16_t>& jgens) {
  if (from == to) return std::uint16_t{0};
  std::unordered_map<Bits, std::uint16_t, Bits::Hash> conj_by;
  conj_by.emplace(from, 0);
  std::vector<Bits> queue{from};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const std::uint16_t base = conj_by.at(queue[qi]);
    for (std::uint16_t g : jgens) {
      Bits nb = u.t->conj_set(queue[qi], g);
      const std::uint16_t comp = u.t->mul(base, g);
      if (conj_by.emplace(nb, comp).second) {
        if (nb == to) return comp;
        queue.push_back(std::move(nb));
      }
    }
  }
  return std::nullopt;
}

// The pronormality test over a universe: for one representative g of each
// nontrivial coset of N_U(H) (one per distinct conjugate H^g), search a
// conjugator from H to H^g inside ⟨H, H^g⟩. All representatives are tested
// even after a failure, so the trace is complete.
inline std::pair<bool, std::vector<StepBits>> pronormal_steps(
    const structure_detail::Universe& u, const Bits& hb) {
  auto cls = structure_detail::conj_class_bits(u, hb);
  auto hgens = u.t->generating_indices(hb);
  bool verdict = true;
  std::vector<StepBits> steps;
  steps.reserve(cls.members.size() - 1);
  for (std::size_t i = 1; i < cls.members.size(); ++i) {
    std::vector<std::uint16_t> jgens = hgens;
    for (std::uint16_t x : u.t->generating_indices(cls.members[i]))
      jgens.push_back(x);
    auto x = conjugator_in(u, hb, cls.members[i], jgens);
    steps.push_back({cls.rep[i], x.has_value(), x.value_or(0)});
    if (!x) verdict = false;
  }
  return {verdict, std::move(steps)};
}

// Strong pronormality over a universe: for every subgroup K ≤ H (up to
// H-conjugacy — replacing K by K^h shifts g without changing the condition)
// and every distinct conjugate K^g, some x ∈ ⟨H, K^g⟩ must give K^{gx} ≤ H.
inline bool strongly_pronormal_bits(
    const structure_detail::Universe& u, const Bits& hb,
    std::uint64_t budget = Budgets::defaults().subgroup_budget) {
  if (hb == u.mask || hb.count() == 1) return true;
  auto hgens = u.t->generating_indices(hb);
  auto uh = structure_detail::sub_universe(u.t, hb);
  std::unordered_set<Bits, Bits::Hash> visited;
  for (const Bits& k : structure_detail::subgroups_bits(uh, budget)) {
    if (visited.count(k)) continue;
    for (Bits& m : structure_detail::conj_class_bits(uh, k).members)
      visited.insert(std::move(m));
    if (k.count() == 1) continue;  // K^g is trivial, always inside H
    for (const Bits& kg : structure_detail::conj_class_bits(u, k).members) {
      if (kg.subset_of(hb)) continue;  // x = identity works
      std::vector<std::uint16_t> jgens = hgens;
      for (std::uint16_t x : u.t->generating_indices(kg)) jgens.push_back(x);
      // orbit of K^g under ⟨H, K^g⟩, searching a member inside H
      std::unordered_set<Bits, Bits::Hash> seen{kg};
      std::vector<Bits> queue{kg};
      bool found = false;
      for (std::size_t qi = 0; qi < queue.size() && !found; ++qi)
        for (std::uint16_t g : jgens) {
          Bits nb = u.t->conj_set(queue[qi], g);
          if (!seen.insert(nb).second) continue;
          if (nb.subset_of(hb)) {
            found = true;
            break;
          }
          queue.push_back(std::move(nb));
        }
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace pronormal_detail

struct PronormalStep {
  Perm g;                 // tested coset representative of N_G(H)
  std::optional<Perm> x;  // conjugator in ⟨H, H^g⟩ with H^x = H^g
};

struct PronormalityWitness {
  Subgroup subject;
  bool verdict = false;
  std::vector<PronormalStep> trace;
};

// Is H pronormal in G: are H and H^g conjugate in ⟨H, H^g⟩ for every g?
inline PronormalityWitness is_pronormal(const PermGroup& g, const Subgroup& h) {
  for (const Perm& p : h.generators())
    if (!g.contains(p)) throw InvalidInput("is_pronormal: H is not in G");
  auto u = structure_detail::whole_universe(g);
  auto [verdict, steps] = pronormal_detail::pronormal_steps(u, h.bits());
  PronormalityWitness w{h, verdict, {}};
  w.trace.reserve(steps.size());
  for (const auto& s : steps) {
    PronormalStep ps{u.t->perm(s.g), std::nullopt};
    if (s.ok) ps.x = u.t->perm(s.x);
    w.trace.push_back(std::move(ps));
  }
  return w;
}

// Re-validate a witness through the stabilizer-chain route only: no element
// table, no conjugation orbits. Every successful step must have its
// conjugator inside ⟨H, H^g⟩ (membership in a freshly built group) and must
// map H exactly onto H^g (generator membership plus an order identity).
inline bool revalidate_witness(const PermGroup& g,
                               const PronormalityWitness& w) {
  const std::vector<Perm>& hgens = w.subject.generators();
  const std::uint64_t horder = w.subject.group().order();
  bool all_ok = true;
  for (const PronormalStep& s : w.trace) {
    if (!g.contains(s.g)) return false;
    std::vector<Perm> cgens;
    for (const Perm& p : hgens) cgens.push_back(hallmark::conjugate(p, s.g));
    PermGroup hg_group(g.degree(), cgens);
    if (hg_group.order() != horder) return false;
    std::vector<Perm> jgens = hgens;
    jgens.insert(jgens.end(), cgens.begin(), cgens.end());
    PermGroup join_group(g.degree(), jgens);
    auto maps_h_onto_hg = [&](const Perm& x) {
      for (const Perm& p : hgens)
        if (!hg_group.contains(hallmark::conjugate(p, x))) return false;
      return true;
    };
    if (s.x) {
      if (!join_group.contains(*s.x)) return false;
      if (!maps_h_onto_hg(*s.x)) return false;
    } else {
      // claimed failure: no element of the join may conjugate H onto H^g
      for (const Perm& j : join_group.elements())
        if (maps_h_onto_hg(j)) return false;
      all_ok = false;
    }
  }
  // sound if every step checked out and the verdict matches the outcomes
  // (completeness of the trace is not re-derived here)
  return all_ok == w.verdict;
}

// Is H strongly pronormal in G: for every K ≤ H and every g, some
// x ∈ ⟨H, K^g⟩ satisfies K^{gx} ≤ H.
inline bool is_strongly_pronormal(
    const PermGroup& g, const Subgroup& h,
    std::uint64_t budget = Budgets::defaults().subgroup_budget) {
  for (const Perm& p : h.generators())
    if (!g.contains(p))
      throw InvalidInput("is_strongly_pronormal: H is not in G");
  auto u = structure_detail::whole_universe(g);
  return pronormal_detail::strongly_pronormal_bits(u, h.bits(), budget);
}

// The Frattini property: G = A·N_G(H), decided by the order identity
// |A|·|N_G(H)|/|A ∩ N_G(H)| = |G| and cross-checked against the class
// comparison H^G = H^A (the two must agree — Introduction, "G = AN_G(H) if
// and only if H^G and H^A coincide").
inline bool frattini_holds(const PermGroup& g, const Subgroup& a,
                           const Subgroup& h) {
  auto u = structure_detail::whole_universe(g);
  const Bits& ab = a.bits();
  const Bits& hb = h.bits();
  if (!structure_detail::is_normal_in(u, ab))
    throw InvalidInput("frattini_holds: A is not normal in G");
  if (!hb.subset_of(ab)) throw InvalidInput("frattini_holds: H is not in A");
  Bits nb = structure_detail::normalizer_bits(u, hb);
  const std::uint64_t inter = (ab & nb).count();
  const bool by_order = a.order() * nb.count() / inter == u.order;

  auto ua = structure_detail::sub_universe(u.t, ab);
  const std::size_t class_g =
      structure_detail::conj_class_bits(u, hb).members.size();
  const std::size_t class_a =
      structure_detail::conj_class_bits(ua, hb).members.size();
  const bool by_classes = class_g == class_a;  // H^A ⊆ H^G, compare sizes

  if (by_order != by_classes)
    throw InternalCheckFailed("Frattini routes disagree");
  return by_order;
}

struct Lemma16Result {
  bool premise1 = false;  // HB/B pronormal in G/B
  bool premise2 = false;  // H ∩ B pronormal in B
  bool premise3 = false;  // (H ∩ B)^G = (H ∩ B)^B
  bool all_premises = false;
};

// Lemma 16: premises (1)–(3) imply H pronormal in G. Evaluates the premises;
// when all three hold, asserts the conclusion by running the full
// pronormality test. Preconditions: B ≤ A, both normal in G, H a Hall
// subgroup of A (coprime order and index in A).
inline Lemma16Result lemma16_test(const PermGroup& g, const Subgroup& b,
                                  const Subgroup& a, const Subgroup& h) {
  auto u = structure_detail::whole_universe(g);
  const Bits& ab = a.bits();
  const Bits& bb = b.bits();
  const Bits& hb = h.bits();
  if (!bb.subset_of(ab) || !hb.subset_of(ab))
    throw InvalidInput("lemma16_test: need B ≤ A and H ≤ A");
  if (!structure_detail::is_normal_in(u, ab) ||
      !structure_detail::is_normal_in(u, bb))
    throw InvalidInput("lemma16_test: A and B must be normal in G");
  if (std::gcd(h.order(), a.order() / h.order()) != 1)
    throw InvalidInput("lemma16_test: H is not a Hall subgroup of A");

  Lemma16Result r;
  if (b.is_trivial()) {
    // HB/B ≅ H and G/B ≅ G: premise (1) is plain pronormality; (2), (3) are
    // vacuous over the trivial B
    r.premise1 = pronormal_detail::pronormal_steps(u, hb).first;
    r.premise2 = true;
    r.premise3 = true;
  } else {
    auto phi = quotient(g, b);
    auto hbar = phi.forward(join(g, h, b));
    r.premise1 = is_pronormal(phi.target(), hbar).verdict;

    Bits meet = hb & bb;
    auto ub = structure_detail::sub_universe(u.t, bb);
    r.premise2 = pronormal_detail::pronormal_steps(ub, meet).first;
    r.premise3 = structure_detail::conj_class_bits(u, meet).members.size() ==
                 structure_detail::conj_class_bits(ub, meet).members.size();
  }
  r.all_premises = r.premise1 && r.premise2 && r.premise3;
  if (r.all_premises && !pronormal_detail::pronormal_steps(u, hb).first)
    throw InternalCheckFailed("Lemma 16 premises hold but H is not pronormal");
  return r;
}

}  // namespace hallmark
