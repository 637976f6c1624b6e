#include <catch2/catch_amalgamated.hpp>

#include "hallmark/corpus.hpp"
#include "hallmark/pronormal.hpp"
#include "test_util.hpp"

using namespace hallmark;
using testutil::cyc;

namespace {

// the stabilizer in A of a point, inside the Remark 1 extension
Subgroup line_stabilizer(const Gl32Extension& ext, unsigned point) {
  std::vector<Perm> fixing;
  for (const Perm& p : ext.a.group().elements())
    if (p[point] == point) fixing.push_back(p);
  return Subgroup(ext.g, std::move(fixing));
}

}  // namespace

TEST_CASE("whole group, trivial and normal subgroups are pronormal",
          "[pronormal]") {
  auto g = make_named(Family::symmetric, 4);
  auto whole = Subgroup(g, {cyc(4, {{0, 1}}), cyc(4, {{0, 1, 2, 3}})});
  auto w1 = is_pronormal(g, whole);
  CHECK(w1.verdict);
  CHECK(w1.trace.empty());

  auto w2 = is_pronormal(g, Subgroup(g, {}));
  CHECK(w2.verdict);
  CHECK(w2.trace.empty());

  auto a4 = Subgroup(g, {cyc(4, {{0, 1, 2}}), cyc(4, {{1, 2, 3}})});
  CHECK(is_pronormal(g, a4).verdict);

  CHECK_THROWS_AS(is_pronormal(make_named(Family::alternating, 4),
                               Subgroup(g, {cyc(4, {{0, 1}})})),
                  InvalidInput);
}

TEST_CASE("A4 is pronormal in A5 with a sound witness", "[pronormal]") {
  auto g = make_named(Family::alternating, 5);
  auto a4 = Subgroup(g, {cyc(5, {{0, 1, 2}}), cyc(5, {{1, 2, 3}})});
  auto w = is_pronormal(g, a4);
  CHECK(w.verdict);
  CHECK(w.trace.size() == 4);  // class size 5, identity representative skipped
  for (const PronormalStep& s : w.trace) {
    REQUIRE(s.x.has_value());
    CHECK(conjugate(a4, *s.x).same_set_as(conjugate(a4, s.g)));
  }
  CHECK(revalidate_witness(g, w));
}

TEST_CASE("the Remark 1 line stabilizer is not pronormal in the extension",
          "[pronormal]") {
  auto ext = make_gl32_extension();
  auto h1 = line_stabilizer(ext, 0);
  REQUIRE(h1.order() == 24);

  // pronormal in A (a Hall subgroup of the simple GL3(2)) ...
  auto a_group = ext.a.group();
  std::vector<Perm> hgens = h1.generators();
  CHECK(is_pronormal(a_group, Subgroup(a_group, hgens)).verdict);

  // ... but not in the extension G
  auto w = is_pronormal(ext.g, h1);
  CHECK_FALSE(w.verdict);
  CHECK(w.trace.size() == 13);  // |G| / |N_G(H1)| = 336/24 = 14, minus H1
  bool saw_failure = false;
  for (const PronormalStep& s : w.trace)
    if (!s.x) {
      saw_failure = true;
      CHECK_FALSE(ext.a.contains(s.g));  // failing elements lie outside A
    }
  CHECK(saw_failure);
  CHECK(revalidate_witness(ext.g, w));

  // the dual (plane) stabilizer class behaves the same way
  auto h2 = line_stabilizer(ext, 7);
  REQUIRE(h2.order() == 24);
  CHECK_FALSE(is_pronormal(ext.g, h2).verdict);
}

TEST_CASE("Sylow subgroups are pronormal across sample groups",
          "[pronormal]") {
  for (const char* name : {"s4", "a5", "gl32", "gl32ext", "s3wrz2", "a4xc2"}) {
    auto g = find_corpus_entry(name)->make();
    for (unsigned p : prime_divisors(g.order())) {
      auto syl = sylow(g, p);
      auto w = is_pronormal(g, syl);
      CHECK(w.verdict);
      CHECK(revalidate_witness(g, w));
    }
  }
}

TEST_CASE("strong pronormality verdicts and implication", "[pronormal]") {
  auto g = make_named(Family::symmetric, 4);
  auto syl2 = sylow(g, 2);
  CHECK(is_strongly_pronormal(g, syl2));

  CHECK(is_strongly_pronormal(g, Subgroup(g, {})));
  auto whole = Subgroup(g, {cyc(4, {{0, 1}}), cyc(4, {{0, 1, 2, 3}})});
  CHECK(is_strongly_pronormal(g, whole));

  // strong pronormality implies pronormality on every tested pair
  for (const char* name : {"s4", "a5", "gl32"}) {
    auto grp = find_corpus_entry(name)->make();
    for (unsigned p : prime_divisors(grp.order())) {
      auto syl = sylow(grp, p);
      if (is_strongly_pronormal(grp, syl))
        CHECK(is_pronormal(grp, syl).verdict);
    }
  }

  // a non-pronormal subgroup is never strongly pronormal (K = H fails)
  auto ext = make_gl32_extension();
  auto h1 = line_stabilizer(ext, 0);
  CHECK_FALSE(is_strongly_pronormal(ext.g, h1));
}

TEST_CASE("Frattini argument outcomes", "[pronormal]") {
  auto g = make_named(Family::symmetric, 4);
  auto a4 = Subgroup(g, {cyc(4, {{0, 1, 2}}), cyc(4, {{1, 2, 3}})});
  auto syl3 = Subgroup(g, {cyc(4, {{0, 1, 2}})});
  CHECK(frattini_holds(g, a4, syl3));       // classic Frattini for Sylows
  CHECK(frattini_holds(g, a4, a4));         // N_G(A) = G
  auto v4 = Subgroup(g, {cyc(4, {{0, 1}, {2, 3}}), cyc(4, {{0, 2}, {1, 3}})});
  CHECK(frattini_holds(g, v4, v4));

  auto ext = make_gl32_extension();
  auto h1 = line_stabilizer(ext, 0);
  CHECK_FALSE(frattini_holds(ext.g, ext.a, h1));  // classes fuse under tau

  auto d4 = Subgroup(g, {cyc(4, {{0, 1, 2, 3}}), cyc(4, {{0, 2}})});
  CHECK_THROWS_AS(frattini_holds(g, d4, Subgroup(g, {cyc(4, {{0, 2}})})),
                  InvalidInput);
  CHECK_THROWS_AS(frattini_holds(g, v4, syl3), InvalidInput);  // H outside A
}

TEST_CASE("Frattini holds for every pronormal subgroup of a normal subgroup",
          "[pronormal]") {
  auto g = make_named(Family::symmetric, 4);
  auto a4 = Subgroup(g, {cyc(4, {{0, 1, 2}}), cyc(4, {{1, 2, 3}})});
  auto t = ElementTable::of(g);
  auto ua = structure_detail::sub_universe(t, a4.bits());
  for (const Bits& hb : structure_detail::subgroups_bits(ua, 100000)) {
    auto h = detail::subgroup_from_bits(g, *t, hb);
    if (is_pronormal(g, h).verdict) CHECK(frattini_holds(g, a4, h));
  }
}

TEST_CASE("Lemma 16 premises on the Theorem 1 pattern", "[pronormal]") {
  auto g = make_named(Family::symmetric, 4);
  auto a4 = Subgroup(g, {cyc(4, {{0, 1, 2}}), cyc(4, {{1, 2, 3}})});
  auto v4 = Subgroup(g, {cyc(4, {{0, 1}, {2, 3}}), cyc(4, {{0, 2}, {1, 3}})});
  auto syl3 = Subgroup(g, {cyc(4, {{0, 1, 2}})});

  auto r = lemma16_test(g, v4, a4, syl3);
  CHECK(r.premise1);
  CHECK(r.premise2);
  CHECK(r.premise3);
  CHECK(r.all_premises);
}

TEST_CASE("Lemma 16 premises on the Remark 1 pattern", "[pronormal]") {
  auto ext = make_gl32_extension();
  auto h1 = line_stabilizer(ext, 0);
  auto r = lemma16_test(ext.g, ext.a, ext.a, h1);
  CHECK(r.premise2);        // H1 is pronormal in A
  CHECK_FALSE(r.premise3);  // H1^G strictly exceeds H1^A
  CHECK_FALSE(r.all_premises);
}

TEST_CASE("Lemma 16 with trivial B reduces to plain pronormality",
          "[pronormal]") {
  auto g = make_named(Family::symmetric, 4);
  auto a4 = Subgroup(g, {cyc(4, {{0, 1, 2}}), cyc(4, {{1, 2, 3}})});
  auto syl3 = Subgroup(g, {cyc(4, {{0, 1, 2}})});
  auto r = lemma16_test(g, Subgroup(g, {}), a4, syl3);
  CHECK(r.premise1);
  CHECK(r.premise2);
  CHECK(r.premise3);
}

TEST_CASE("Lemma 16 rejects bad inputs", "[pronormal]") {
  auto g = make_named(Family::symmetric, 4);
  auto a4 = Subgroup(g, {cyc(4, {{0, 1, 2}}), cyc(4, {{1, 2, 3}})});
  auto v4 = Subgroup(g, {cyc(4, {{0, 1}, {2, 3}}), cyc(4, {{0, 2}, {1, 3}})});
  auto syl3 = Subgroup(g, {cyc(4, {{0, 1, 2}})});
  auto d4 = Subgroup(g, {cyc(4, {{0, 1, 2, 3}}), cyc(4, {{0, 2}})});

  CHECK_THROWS_AS(lemma16_test(g, a4, v4, syl3), InvalidInput);  // B outside A
  CHECK_THROWS_AS(lemma16_test(g, d4, a4, syl3), InvalidInput);  // B not in A
  auto c2 = Subgroup(g, {cyc(4, {{0, 1}, {2, 3}})});
  CHECK_THROWS_AS(lemma16_test(g, v4, a4, c2), InvalidInput);  // not Hall in A
}
