#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "hallmark/corpus.hpp"
#include "hallmark/theorems.hpp"
#include "test_util.hpp"

using namespace hallmark;
using testutil::cyc;

namespace {

Subgroup v4_in(const PermGroup& s4) {
  return Subgroup(s4, {cyc(4, {{0, 1}, {2, 3}}), cyc(4, {{0, 2}, {1, 3}})});
}

Subgroup a4_in(const PermGroup& s4) {
  return Subgroup(s4, {cyc(4, {{0, 1, 2}}), cyc(4, {{1, 2, 3}})});
}

std::vector<PrimeSet> nonempty_prime_subsets(std::uint64_t order) {
  const std::vector<unsigned> ps = prime_divisors(order);
  std::vector<PrimeSet> out;
  for (unsigned mask = 1; mask < (1u << ps.size()); ++mask) {
    std::vector<unsigned> sel;
    for (std::size_t i = 0; i < ps.size(); ++i)
      if (mask & (1u << i)) sel.push_back(ps[i]);
    out.push_back(PrimeSet(sel));
  }
  return out;
}

// One order-24 Hall subgroup of the simple normal part of the Remark 1
// extension, carried as a subgroup of the big group.
Subgroup hall24_of_a(const Gl32Extension& ext) {
  auto t = ElementTable::of(ext.g);
  auto ua = structure_detail::sub_universe(t, ext.a.bits());
  auto classes = hall_detail::hall_classes(ua, PrimeSet{2, 3});
  REQUIRE(classes.size() == 2);
  return detail::subgroup_from_bits(ext.g, *t, classes[0].front());
}

}  // namespace

TEST_CASE("frattini_hall: trivial and classical cases", "[theorems]") {
  PermGroup s4 = make_named(Family::symmetric, 4);
  Subgroup v4 = v4_in(s4);
  Subgroup a4 = a4_in(s4);

  // V4 is its own 2-Hall subgroup and is normal in S4.
  REQUIRE(frattini_hall(s4, v4, PrimeSet{2}).same_set_as(v4));

  // Classical Frattini argument: S4 = A4·N(V) for a Sylow-3 subgroup V.
  Subgroup v = frattini_hall(s4, a4, PrimeSet{3});
  REQUIRE(v.order() == 3);
  REQUIRE(v.bits().subset_of(a4.bits()));
  Subgroup n = normalizer(s4, v);
  REQUIRE(a4.order() * n.order() / intersect(s4, a4, n).order() == 24);

  // Both formulations: the class identity V^G = V^B via orbit sizes.
  const std::uint64_t class_in_g = s4.order() / n.order();
  const std::uint64_t class_in_a = a4.order() / intersect(s4, a4, n).order();
  REQUIRE(class_in_g == class_in_a);
  REQUIRE(class_in_g == 4);
}

TEST_CASE("frattini_hall: bad input and the Remark 1 obstruction",
          "[theorems]") {
  PermGroup s4 = make_named(Family::symmetric, 4);
  Subgroup d4 = Subgroup(s4, {cyc(4, {{0, 1, 2, 3}}), cyc(4, {{0, 2}})});
  REQUIRE_THROWS_AS(frattini_hall(s4, d4, PrimeSet{2}), InvalidInput);

  // The two {2,3}-Hall classes of the simple part are swapped by the graph
  // automorphism, so no class is stable under the extension.
  Gl32Extension ext = make_gl32_extension();
  REQUIRE_THROWS_AS(frattini_hall(ext.g, ext.a, PrimeSet{2, 3}),
                    NoInvariantClass);

  // Sylow classes are single conjugacy classes, hence always stable.
  Subgroup v2 = frattini_hall(ext.g, ext.a, PrimeSet{2});
  REQUIRE(v2.order() == 8);
  Subgroup n2 = normalizer(ext.g, v2);
  REQUIRE(ext.a.order() * n2.order() / intersect(ext.g, ext.a, n2).order() ==
          ext.g.order());
}

TEST_CASE("extend_hall: whole group, Sylow complement, bad index",
          "[theorems]") {
  PermGroup a4 = make_named(Family::alternating, 4);
  Subgroup v4 = Subgroup(a4, {cyc(4, {{0, 1}, {2, 3}}), cyc(4, {{0, 2}, {1, 3}})});

  // A4 is a {2,3}-group: the extension of V4 is A4 itself.
  REQUIRE(extend_hall(a4, v4, v4, PrimeSet{2, 3}).order() == 12);

  // Hall_3(V4) is trivial; any Sylow-3 subgroup meets V4 trivially.
  Subgroup triv = Subgroup(a4, {});
  Subgroup h3 = extend_hall(a4, v4, triv, PrimeSet{3});
  REQUIRE(h3.order() == 3);
  REQUIRE((h3.bits() & v4.bits()).count() == 1);
  REQUIRE(is_hall_subgroup(a4, h3, PrimeSet{3}));

  // |S4 : A4| = 2 is not a 3-number, so the precondition fails.
  PermGroup s4 = make_named(Family::symmetric, 4);
  Subgroup a4s = a4_in(s4);
  Subgroup u3 = Subgroup(s4, {cyc(4, {{0, 1, 2}})});
  REQUIRE_THROWS_AS(extend_hall(s4, a4s, u3, PrimeSet{3}), InvalidInput);

  // U must be a pi-Hall subgroup of B.
  Subgroup c2 = Subgroup(a4, {cyc(4, {{0, 1}, {2, 3}})});
  REQUIRE_THROWS_AS(extend_hall(a4, v4, c2, PrimeSet{2, 3}), InvalidInput);
}

TEST_CASE("extend_hall: the fused-class precondition of Lemma 6", "[theorems]") {
  // In the Remark 1 extension, U^K has twice the size of U^B for any
  // {2,3}-Hall subgroup U of the simple part: exactly the obstruction that
  // makes the extension impossible.
  Gl32Extension ext = make_gl32_extension();
  Subgroup u24 = hall24_of_a(ext);
  REQUIRE(u24.order() == 24);
  REQUIRE_THROWS_AS(extend_hall(ext.g, ext.a, u24, PrimeSet{2, 3}),
                    InvalidInput);

  // Inside the simple part itself (K = B = A) nothing is fused.
  Subgroup h = extend_hall(ext.a, ext.a, u24, PrimeSet{2, 3});
  REQUIRE(h.same_set_as(u24));
}

TEST_CASE("extend_hall: fast path agrees with the exhaustive filter",
          "[theorems]") {
  auto check_both = [](const PermGroup& k, const Subgroup& b,
                       const Subgroup& u, const PrimeSet& pi) {
    auto ku = structure_detail::whole_universe(k);
    Bits filt = theorem_detail::extend_hall_bits(ku, b.bits(), u.bits(), pi);
    auto fast = theorem_detail::extend_hall_fast_bits(ku, b.bits(), u.bits(), pi);
    REQUIRE(fast.has_value());
    REQUIRE(fast->count() == pi_part(k.order(), pi));
    REQUIRE((*fast & b.bits()) == u.bits());
    REQUIRE(filt.count() == fast->count());
    REQUIRE((filt & b.bits()) == u.bits());
  };

  PermGroup a4 = make_named(Family::alternating, 4);
  Subgroup v4a =
      Subgroup(a4, {cyc(4, {{0, 1}, {2, 3}}), cyc(4, {{0, 2}, {1, 3}})});
  check_both(a4, v4a, v4a, PrimeSet{2, 3});
  check_both(a4, v4a, Subgroup(a4, {}), PrimeSet{3});

  PermGroup d4 = make_named(Family::dihedral, 4);
  Subgroup c4 = Subgroup(d4, {cyc(4, {{0, 1, 2, 3}})});
  check_both(d4, c4, c4, PrimeSet{2});

  PermGroup s4 = make_named(Family::symmetric, 4);
  check_both(s4, a4_in(s4), a4_in(s4), PrimeSet{2, 3});

  PermGroup c30 = make_named(Family::cyclic, 30);
  std::vector<std::uint16_t> plus6(30);
  for (unsigned i = 0; i < 30; ++i)
    plus6[i] = static_cast<std::uint16_t>((i + 6) % 30);
  Subgroup c5 = Subgroup(c30, {Perm(plus6)});
  REQUIRE(c5.order() == 5);
  check_both(c30, c5, Subgroup(c30, {}), PrimeSet{2, 3});
}

TEST_CASE("lift_hall_from_quotient: spec examples", "[theorems]") {
  PermGroup s4 = make_named(Family::symmetric, 4);
  Subgroup v4 = v4_in(s4);
  Epimorphism phi = quotient(s4, v4);

  // An order-3 subgroup of S4/V4 lifts to a Sylow-3 subgroup H with HV4 = A4.
  Subgroup kbar = Subgroup(phi.target(), {phi.forward(cyc(4, {{0, 1, 2}}))});
  REQUIRE(kbar.order() == 3);
  Subgroup h = lift_hall_from_quotient(s4, v4, kbar, PrimeSet{3});
  REQUIRE(h.order() == 3);
  Subgroup hv = join(s4, h, v4);
  REQUIRE(hv.order() == 12);
  REQUIRE(hv.same_set_as(phi.preimage(kbar)));

  // Trivial kernel: H is the subgroup corresponding to K-bar.
  Subgroup triv = Subgroup(s4, {});
  Epimorphism phi0 = quotient(s4, triv);
  Subgroup kbar0 = phi0.forward(sylow(s4, 3));
  Subgroup h0 = lift_hall_from_quotient(s4, triv, kbar0, PrimeSet{3});
  REQUIRE(h0.order() == 3);
  REQUIRE(phi0.forward(h0).same_set_as(kbar0));

  // pi covering all of pi(G): H = G and K-bar = G/A.
  Subgroup kbar_full = Subgroup(phi.target(), phi.target().action_generators());
  Subgroup hall_all = lift_hall_from_quotient(s4, v4, kbar_full, PrimeSet{2, 3});
  REQUIRE(hall_all.is_whole());

  // K-bar must be a pi-Hall subgroup of the quotient.
  REQUIRE_THROWS_AS(
      lift_hall_from_quotient(s4, v4, Subgroup(phi.target(), {}), PrimeSet{3}),
      InvalidInput);

  // A subgroup over some unrelated group is rejected.
  PermGroup s3 = make_named(Family::symmetric, 3);
  Subgroup foreign = Subgroup(s3, {cyc(3, {{0, 1, 2}})});
  REQUIRE_THROWS_AS(lift_hall_from_quotient(s4, v4, foreign, PrimeSet{3}),
                    InvalidInput);
}

TEST_CASE("theorem 1 on (S4, A4, {3}) with full trace", "[theorems]") {
  PermGroup s4 = make_named(Family::symmetric, 4);
  Subgroup a4 = a4_in(s4);
  Theorem1Result res = pronormal_hall_in_normal(s4, a4, PrimeSet{3});

  REQUIRE(res.hall.order() == 3);
  REQUIRE(res.hall.bits().subset_of(a4.bits()));
  // Independent recheck of the pronormality verdict, generator-level.
  PronormalityWitness w = is_pronormal(s4, res.hall);
  REQUIRE(w.verdict);
  REQUIRE(revalidate_witness(s4, w));

  // Levels: S4 over B = V4, then the S3 quotient over B = C3.
  REQUIRE(res.trace.depth() == 2);
  const Theorem1Level& l0 = res.trace.levels[0];
  REQUIRE(l0.group_order == 24);
  REQUIRE(l0.b_order == 4);
  REQUIRE(l0.quotient_order == 6);
  REQUIRE(l0.v_order == 1);
  REQUIRE(l0.k_order == 12);
  REQUIRE(l0.h_order == 3);
  const Theorem1Level& l1 = res.trace.levels[1];
  REQUIRE(l1.group_order == 6);
  REQUIRE(l1.b_order == 3);
  REQUIRE(l1.quotient_order == 2);
  REQUIRE(l1.v_order == 3);
  REQUIRE(l1.k_order == 3);
  REQUIRE(l1.h_order == 3);
}

TEST_CASE("theorem 1 picks the canonical Hall subgroup of the simple group",
          "[theorems]") {
  PermGroup gl32 = make_gl32();
  Subgroup whole = Subgroup(gl32, gl32.action_generators());
  Theorem1Result res = pronormal_hall_in_normal(gl32, whole, PrimeSet{2, 3});

  REQUIRE(res.hall.order() == 24);
  HallReport rep = hall_subgroups(gl32, PrimeSet{2, 3});
  REQUIRE(rep.classes.size() == 2);
  REQUIRE(res.hall.same_set_as(rep.classes[0].members[0]));

  // A line stabilizer fixes a point of the 7-point action; a plane
  // stabilizer has a 3-point orbit. Either way the smallest orbit is 1 or 3.
  std::vector<unsigned> orbit_of(7, 7);
  unsigned smallest = 7;
  for (unsigned start = 0; start < 7; ++start) {
    if (orbit_of[start] != 7) continue;
    std::vector<unsigned> orbit{start};
    orbit_of[start] = start;
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (const Perm& p : res.hall.group().action_generators()) {
        unsigned y = p[orbit[i]];
        if (orbit_of[y] == 7) {
          orbit_of[y] = start;
          orbit.push_back(y);
        }
      }
    smallest = std::min(smallest, static_cast<unsigned>(orbit.size()));
  }
  REQUIRE((smallest == 1 || smallest == 3));

  REQUIRE(res.trace.depth() == 1);
  REQUIRE(res.trace.levels[0].b_order == 168);
  REQUIRE(res.trace.levels[0].quotient_order == 1);
  REQUIRE(res.trace.levels[0].v_order == 24);
  REQUIRE(res.trace.levels[0].k_order == 168);
}

TEST_CASE("theorem 1: trivial case, E_pi failures, bad input", "[theorems]") {
  PermGroup c1 = make_named(Family::cyclic, 1);
  Theorem1Result res =
      pronormal_hall_in_normal(c1, Subgroup(c1, {}), PrimeSet{2, 3});
  REQUIRE(res.hall.order() == 1);
  REQUIRE(res.trace.depth() == 0);

  Gl32Extension ext = make_gl32_extension();
  Subgroup extwhole = Subgroup(ext.g, ext.g.action_generators());
  REQUIRE_THROWS_AS(pronormal_hall_in_normal(ext.g, extwhole, PrimeSet{2, 3}),
                    NotEPi);

  PermGroup a6 = make_named(Family::alternating, 6);
  Subgroup a6whole = Subgroup(a6, a6.action_generators());
  REQUIRE_THROWS_AS(pronormal_hall_in_normal(a6, a6whole, PrimeSet{2, 3}),
                    NotEPi);

  PermGroup s4 = make_named(Family::symmetric, 4);
  Subgroup d4 = Subgroup(s4, {cyc(4, {{0, 1, 2, 3}}), cyc(4, {{0, 2}})});
  REQUIRE_THROWS_AS(pronormal_hall_in_normal(s4, d4, PrimeSet{2}),
                    InvalidInput);
}

TEST_CASE("theorem 1 and corollary 3 sweep over the small corpus",
          "[theorems]") {
  const std::vector<std::string> names = {"s3",   "a4",    "s4",  "d12", "c30",
                                          "v4",   "a4xc2", "s3xs3", "a5",
                                          "gl32"};
  for (const std::string& name : names) {
    INFO("group " << name);
    PermGroup g = find_corpus_entry(name)->make();
    std::vector<Subgroup> normals = normal_subgroups(g);
    for (const PrimeSet& pi : nonempty_prime_subsets(g.order())) {
      INFO("pi = " << pi.to_string());
      const bool e_pi = hall_subgroups(g, pi).satisfies_E;
      for (const Subgroup& a : normals) {
        INFO("|A| = " << a.order());
        // Corollary 3: the criterion agrees with the direct decision (also
        // asserted inside e_pi_criterion itself).
        EPiCriterion crit = e_pi_criterion(g, a, pi);
        REQUIRE(crit.holds == e_pi);

        if (!e_pi) {
          REQUIRE_THROWS_AS(pronormal_hall_in_normal(g, a, pi), NotEPi);
          continue;
        }
        // Theorem 1 soundness: a pi-Hall subgroup of A, pronormal in G
        // (pronormality is asserted inside; order and containment here).
        Theorem1Result res = pronormal_hall_in_normal(g, a, pi);
        REQUIRE(res.hall.order() == pi_part(a.order(), pi));
        REQUIRE(res.hall.bits().subset_of(a.bits()));

        // Trace sanity: strict telescoping, chained orders, bounded depth.
        const auto& ls = res.trace.levels;
        for (std::size_t i = 0; i < ls.size(); ++i) {
          REQUIRE(ls[i].quotient_order < ls[i].group_order);
          REQUIRE(ls[i].group_order ==
                  (i == 0 ? g.order() : ls[i - 1].quotient_order));
          REQUIRE(ls[i].k_order % ls[i].b_order == 0);
          REQUIRE(ls[i].b_order % ls[i].v_order == 0);
          REQUIRE(ls[i].h_order == pi_part(ls[i].k_order, pi));
        }
        REQUIRE((std::uint64_t{1} << res.trace.depth()) <= g.order());
      }
    }
  }
}

TEST_CASE("e_pi_criterion: spec examples", "[theorems]") {
  // Remark 1: the quotient is fine but no Hall class of A is G-stable.
  Gl32Extension ext = make_gl32_extension();
  EPiCriterion r = e_pi_criterion(ext.g, ext.a, PrimeSet{2, 3});
  REQUIRE_FALSE(r.holds);
  REQUIRE(r.quotient_satisfies_e);
  REQUIRE_FALSE(r.stable_hall.has_value());

  PermGroup s4 = make_named(Family::symmetric, 4);
  EPiCriterion r2 = e_pi_criterion(s4, v4_in(s4), PrimeSet{3});
  REQUIRE(r2.holds);
  REQUIRE(r2.quotient_satisfies_e);
  REQUIRE(r2.stable_hall.has_value());
  REQUIRE(r2.stable_hall->order() == 1);  // Hall_3(V4) is trivial

  // Trivial A reduces to the direct decision, without a coset action even
  // for a group whose order exceeds the degree limit.
  EPiCriterion r3 = e_pi_criterion(ext.g, Subgroup(ext.g, {}), PrimeSet{2, 3});
  REQUIRE_FALSE(r3.holds);
  REQUIRE_FALSE(r3.quotient_satisfies_e);
  REQUIRE(r3.stable_hall.has_value());
}

TEST_CASE("lemma 8 normalizer clause checked opportunistically", "[theorems]") {
  // The paper's "moreover" clause: N_G(V) is E_pi and its pi-Hall subgroups
  // are pi-Hall in G. Verified on the frattini_hall outputs used above.
  PermGroup s4 = make_named(Family::symmetric, 4);
  Subgroup v = frattini_hall(s4, a4_in(s4), PrimeSet{3});
  Subgroup n = normalizer(s4, v);
  REQUIRE(pi_part(n.order(), PrimeSet{3}) == pi_part(s4.order(), PrimeSet{3}));
  auto t = ElementTable::of(s4);
  auto un = structure_detail::sub_universe(t, n.bits());
  REQUIRE_FALSE(hall_detail::hall_classes(un, PrimeSet{3}).empty());

  PermGroup gl32 = make_gl32();
  Subgroup whole = Subgroup(gl32, gl32.action_generators());
  Subgroup v24 = frattini_hall(gl32, whole, PrimeSet{2, 3});
  Subgroup n24 = normalizer(gl32, v24);
  REQUIRE(n24.order() == 24);  // self-normalizing
  REQUIRE(pi_part(n24.order(), PrimeSet{2, 3}) ==
          pi_part(gl32.order(), PrimeSet{2, 3}));
}
