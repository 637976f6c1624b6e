#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hallmark/perm_group.hpp"
#include "hallmark/subgroup.hpp"

namespace hallmark {

enum class Family { cyclic, dihedral, symmetric, alternating };

inline PermGroup make_named(Family family, unsigned n) {
  const unsigned limit = Budgets::defaults().degree_limit;
  auto check = [&](unsigned lo) {
    if (n < lo || n > limit)
      throw InvalidInput("make_named: parameter out of range: " + std::to_string(n));
  };
  switch (family) {
    case Family::cyclic: {
      check(1);
      std::vector<std::uint16_t> rot(n);
      for (unsigned i = 0; i < n; ++i) rot[i] = static_cast<std::uint16_t>((i + 1) % n);
      return PermGroup(n, {Perm(std::move(rot))});
    }
    case Family::dihedral: {
      check(3);
      std::vector<std::uint16_t> rot(n), ref(n);
      for (unsigned i = 0; i < n; ++i) {
        rot[i] = static_cast<std::uint16_t>((i + 1) % n);
        ref[i] = static_cast<std::uint16_t>((n - i) % n);
      }
      return PermGroup(n, {Perm(std::move(rot)), Perm(std::move(ref))});
    }
    case Family::symmetric: {
      check(1);
      if (n == 1) return PermGroup(1, {});
      std::vector<std::uint16_t> swp(n), rot(n);
      for (unsigned i = 0; i < n; ++i) {
        swp[i] = static_cast<std::uint16_t>(i);
        rot[i] = static_cast<std::uint16_t>((i + 1) % n);
      }
      std::swap(swp[0], swp[1]);
      return PermGroup(n, {Perm(std::move(swp)), Perm(std::move(rot))});
    }
    case Family::alternating: {
      check(3);
      std::vector<std::uint16_t> tri(n), cyc(n);
      for (unsigned i = 0; i < n; ++i) tri[i] = cyc[i] = static_cast<std::uint16_t>(i);
      tri[0] = 1, tri[1] = 2, tri[2] = 0;
      if (n % 2 == 1)
        for (unsigned i = 0; i < n; ++i) cyc[i] = static_cast<std::uint16_t>((i + 1) % n);
      else
        for (unsigned i = 1; i < n; ++i) cyc[i] = static_cast<std::uint16_t>(1 + i % (n - 1));
      if (n == 3) return PermGroup(n, {Perm(std::move(tri))});
      return PermGroup(n, {Perm(std::move(tri)), Perm(std::move(cyc))});
    }
  }
  throw InvalidInput("make_named: unknown family");
}

// Action on the disjoint union of the factors' point sets.
inline PermGroup direct_product(const std::vector<PermGroup>& factors) {
  if (factors.empty()) throw InvalidInput("direct_product: empty factor list");
  unsigned degree = 0;
  for (const PermGroup& f : factors) degree += f.degree();
  if (degree > Budgets::defaults().degree_limit)
    throw InvalidInput("direct_product: combined degree exceeds the limit");
  std::vector<Perm> gens;
  unsigned offset = 0;
  for (const PermGroup& f : factors) {
    for (const Perm& p : f.action_generators()) {
      std::vector<std::uint16_t> img(degree);
      for (unsigned i = 0; i < degree; ++i) img[i] = static_cast<std::uint16_t>(i);
      for (unsigned i = 0; i < f.degree(); ++i)
        img[offset + i] = static_cast<std::uint16_t>(offset + p[i]);
      gens.emplace_back(std::move(img));
    }
    offset += f.degree();
  }
  return PermGroup(degree, std::move(gens));
}

// X ≀ Z_p in the imprimitive action on p·degree(X) points: the base factor on
// block 0 plus a p-cycle of blocks (conjugates of the block-0 copy fill the
// other blocks, so the generated group is the full wreath product).
inline PermGroup wreath_product(const PermGroup& x, unsigned p) {
  auto is_prime = [](unsigned m) {
    if (m < 2) return false;
    for (unsigned d = 2; d * d <= m; ++d)
      if (m % d == 0) return false;
    return true;
  };
  if (!is_prime(p)) throw InvalidInput("wreath_product: p must be prime");
  const unsigned d = x.degree();
  const unsigned degree = d * p;
  if (degree > Budgets::defaults().degree_limit)
    throw InvalidInput("wreath_product: degree exceeds the limit");
  std::vector<Perm> gens;
  for (const Perm& g : x.action_generators()) {
    std::vector<std::uint16_t> img(degree);
    for (unsigned i = 0; i < degree; ++i) img[i] = static_cast<std::uint16_t>(i);
    for (unsigned i = 0; i < d; ++i) img[i] = static_cast<std::uint16_t>(g[i]);
    gens.emplace_back(std::move(img));
  }
  std::vector<std::uint16_t> rot(degree);
  for (unsigned k = 0; k < p; ++k)
    for (unsigned i = 0; i < d; ++i)
      rot[k * d + i] = static_cast<std::uint16_t>(((k + 1) % p) * d + i);
  gens.emplace_back(std::move(rot));
  return PermGroup(degree, std::move(gens));
}

namespace corpus_detail {

// A 3×3 matrix over F₂; rows[i] holds row i with bit j = entry (i, j).
using Mat = std::array<unsigned, 3>;

inline constexpr Mat kCyclic{2, 4, 1};       // coordinate 3-cycle e0→e1→e2→e0
inline constexpr Mat kTransvection{3, 2, 4}; // e0 ↦ e0+e1, fixes e1 and e2

inline unsigned row_apply(const Mat& m, unsigned v) {  // v ↦ v·M (row vector)
  unsigned out = 0;
  for (unsigned i = 0; i < 3; ++i)
    if (v >> i & 1) out ^= m[i];
  return out;
}

inline unsigned col_apply(const Mat& m, unsigned w) {  // w ↦ M·w (column vector)
  unsigned out = 0;
  for (unsigned i = 0; i < 3; ++i)
    out |= static_cast<unsigned>(std::popcount(m[i] & w) & 1) << i;
  return out;
}

inline Mat inverse(const Mat& m) {  // Gauss–Jordan on [M | I] over F₂
  std::array<unsigned, 3> aug;
  for (unsigned i = 0; i < 3; ++i) aug[i] = m[i] | (1u << (i + 3));
  for (unsigned c = 0; c < 3; ++c) {
    unsigned r = c;
    while (r < 3 && !(aug[r] >> c & 1)) ++r;
    if (r == 3) throw InvalidInput("gl32 matrix is singular");
    std::swap(aug[c], aug[r]);
    for (unsigned i = 0; i < 3; ++i)
      if (i != c && (aug[i] >> c & 1)) aug[i] ^= aug[c];
  }
  return {aug[0] >> 3, aug[1] >> 3, aug[2] >> 3};
}

// Degree-7 action on the nonzero row vectors of F₂³ (point v−1 for value v).
inline Perm row_perm(const Mat& m) {
  std::vector<std::uint16_t> img(7);
  for (unsigned v = 1; v <= 7; ++v)
    img[v - 1] = static_cast<std::uint16_t>(row_apply(m, v) - 1);
  return Perm(std::move(img));
}

// Degree-14 action: points 0–6 are row vectors (v ↦ v·M), points 7–13 are
// column vectors (w ↦ M⁻¹·w), so incidence v·w is preserved.
inline Perm rowcol_perm(const Mat& m) {
  const Mat mi = inverse(m);
  std::vector<std::uint16_t> img(14);
  for (unsigned v = 1; v <= 7; ++v) {
    img[v - 1] = static_cast<std::uint16_t>(row_apply(m, v) - 1);
    img[7 + v - 1] = static_cast<std::uint16_t>(7 + col_apply(mi, v) - 1);
  }
  return Perm(std::move(img));
}

}  // namespace corpus_detail

// GL₃(2) acting on the 7 nonzero row vectors of F₂³; order 168.
inline PermGroup make_gl32() {
  return PermGroup(7, {corpus_detail::row_perm(corpus_detail::kCyclic),
                       corpus_detail::row_perm(corpus_detail::kTransvection)});
}

struct Gl32Extension {
  PermGroup g;  // the split extension A : ⟨τ⟩, order 336
  Subgroup a;   // A ≅ GL₃(2) as the index-2 normal subgroup
};

// The Remark-1 extension on 14 points: A acts on row vectors (points 0–6)
// and column vectors (points 7–13); the involution τ swaps each vector with
// its transpose, and conjugation by τ realizes x ↦ (xᵗ)⁻¹ on A.
inline Gl32Extension make_gl32_extension() {
  Perm c = corpus_detail::rowcol_perm(corpus_detail::kCyclic);
  Perm t = corpus_detail::rowcol_perm(corpus_detail::kTransvection);
  std::vector<std::uint16_t> tau(14);
  for (unsigned i = 0; i < 7; ++i) {
    tau[i] = static_cast<std::uint16_t>(7 + i);
    tau[7 + i] = static_cast<std::uint16_t>(i);
  }
  PermGroup g(14, {c, t, Perm(std::move(tau))});
  Subgroup a(g, {c, t});
  return {std::move(g), std::move(a)};
}

struct CorpusEntry {
  std::string name;        // stable id, also the CLI builtin name
  std::string ctor;        // constructor id
  unsigned param = 0;      // constructor parameter (0 when unused)
  std::uint64_t expected_order = 0;
  bool exhaustive = true;  // false: construction-only sanity checks
  std::string notes;

  PermGroup make() const {
    if (ctor == "cyclic") return make_named(Family::cyclic, param);
    if (ctor == "dihedral") return make_named(Family::dihedral, param);
    if (ctor == "symmetric") return make_named(Family::symmetric, param);
    if (ctor == "alternating") return make_named(Family::alternating, param);
    if (ctor == "v4")
      return direct_product({make_named(Family::cyclic, 2), make_named(Family::cyclic, 2)});
    if (ctor == "a4xc2")
      return direct_product({make_named(Family::alternating, 4), make_named(Family::cyclic, 2)});
    if (ctor == "s3xs3")
      return direct_product({make_named(Family::symmetric, 3), make_named(Family::symmetric, 3)});
    if (ctor == "a5xa5")
      return direct_product({make_named(Family::alternating, 5), make_named(Family::alternating, 5)});
    if (ctor == "c2wrz2") return wreath_product(make_named(Family::cyclic, 2), 2);
    if (ctor == "s3wrz2") return wreath_product(make_named(Family::symmetric, 3), 2);
    if (ctor == "gl32") return make_gl32();
    if (ctor == "gl32ext") return make_gl32_extension().g;
    if (ctor == "gl32wrz5") return wreath_product(make_gl32(), 5);
    throw InvalidInput("unknown corpus constructor: " + ctor);
  }
};

// The default verification corpus.
inline const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> v;
    auto fact = [](unsigned n) {
      std::uint64_t f = 1;
      for (unsigned i = 2; i <= n; ++i) f *= i;
      return f;
    };
    for (unsigned n = 1; n <= 30; ++n)
      v.push_back({"c" + std::to_string(n), "cyclic", n, n, true, ""});
    for (unsigned n = 3; n <= 12; ++n)
      v.push_back({"d" + std::to_string(n), "dihedral", n, 2ull * n, true, ""});
    for (unsigned n = 2; n <= 5; ++n)
      v.push_back({"s" + std::to_string(n), "symmetric", n, fact(n), true, ""});
    for (unsigned n = 3; n <= 6; ++n)
      v.push_back({"a" + std::to_string(n), "alternating", n, fact(n) / 2, true, ""});
    v.push_back({"v4", "v4", 0, 4, true, "Klein four-group as C2 x C2"});
    v.push_back({"a4xc2", "a4xc2", 0, 24, true, ""});
    v.push_back({"s3xs3", "s3xs3", 0, 36, true, ""});
    v.push_back({"a5xa5", "a5xa5", 0, 3600, true, "direct-product pronormality tests"});
    v.push_back({"c2wrz2", "c2wrz2", 0, 8, true, ""});
    v.push_back({"s3wrz2", "s3wrz2", 0, 72, true, ""});
    v.push_back({"gl32", "gl32", 0, 168, true, "GL3(2) on 7 points"});
    v.push_back({"gl32ext", "gl32ext", 0, 336, true,
                 "split extension of GL3(2) by the inverse-transpose involution"});
    v.push_back({"gl32wrz5", "gl32wrz5", 0, 669139107840ull, false,
                 "construction-only: order exceeds the exhaustive budget"});
    return v;
  }();
  return entries;
}

inline const CorpusEntry* find_corpus_entry(const std::string& name) {
  for (const CorpusEntry& e : corpus())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace hallmark
