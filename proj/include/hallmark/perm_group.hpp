#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "hallmark/errors.hpp"
#include "hallmark/limits.hpp"
#include "hallmark/perm.hpp"

namespace hallmark {

namespace detail {

// One level of a stabilizer chain: base point, strong generators fixing all
// earlier base points, and the orbit of the base with explicit transversal
// permutations (transversal[i] maps base to orbit[i]).
struct ChainLevel {
  unsigned base = 0;
  std::vector<Perm> gens;
  std::vector<int> orbit_pos;  // point -> index into orbit, -1 when absent
  std::vector<unsigned> orbit;
  std::vector<Perm> transversal;
};

struct Chain {
  unsigned degree = 1;
  std::vector<ChainLevel> levels;

  // Sift g through levels [start, end); returns the residue and the level at
  // which sifting stopped (levels.size() when it passed every level).
  std::pair<Perm, std::size_t> sift_from(Perm g, std::size_t start) const {
    for (std::size_t k = start; k < levels.size(); ++k) {
      const ChainLevel& lv = levels[k];
      unsigned image = g[lv.base];
      int pos = lv.orbit_pos[image];
      if (pos < 0) return {std::move(g), k};
      g = g * lv.transversal[static_cast<std::size_t>(pos)].inverse();
    }
    return {std::move(g), levels.size()};
  }

  bool member(const Perm& g) const { return sift_from(g, 0).first.is_identity(); }

  std::uint64_t order() const {
    std::uint64_t n = 1;
    for (const ChainLevel& lv : levels) n *= lv.orbit.size();
    return n;
  }
};

// Deterministic incremental Schreier-Sims. Invariant: the generator list of
// level k generates the full pointwise stabilizer of the bases above it, so
// each orbit is computed from its own level's list alone. A sift residue
// discovered while processing level k is adjoined at level k+1 (it fixes the
// bases through k), and that level is reprocessed until all of its Schreier
// generators sift to the identity through the (already valid) deeper chain.
class ChainBuilder {
public:
  explicit ChainBuilder(unsigned degree) { chain_.degree = degree; }

  void insert(const Perm& g) {
    if (!g.is_identity()) extend(g, 0);
  }

  Chain take() { return std::move(chain_); }

private:
  // Adjoin g at `level` unless it is already a member of the chain group at
  // that level. Precondition: g fixes the bases of all levels above `level`,
  // and the chain at levels >= level is valid.
  void extend(const Perm& g, std::size_t level) {
    auto [residue, stop] = chain_.sift_from(g, level);
    if (residue.is_identity()) return;
    if (level == chain_.levels.size()) {
      ChainLevel lv;
      lv.base = residue.first_moved();
      lv.orbit_pos.assign(chain_.degree, -1);
      chain_.levels.push_back(std::move(lv));
    }
    chain_.levels[level].gens.push_back(std::move(residue));
    process_level(level);
  }

  void process_level(std::size_t k) {
    ChainLevel& lv = chain_.levels[k];
    // Rebuild orbit and transversal by BFS in generator order.
    std::fill(lv.orbit_pos.begin(), lv.orbit_pos.end(), -1);
    lv.orbit.clear();
    lv.transversal.clear();
    lv.orbit_pos[lv.base] = 0;
    lv.orbit.push_back(lv.base);
    lv.transversal.push_back(Perm::identity(chain_.degree));
    for (std::size_t i = 0; i < lv.orbit.size(); ++i) {
      for (const Perm& s : lv.gens) {
        unsigned to = s[lv.orbit[i]];
        if (lv.orbit_pos[to] < 0) {
          lv.orbit_pos[to] = static_cast<int>(lv.orbit.size());
          lv.orbit.push_back(to);
          lv.transversal.push_back(lv.transversal[i] * s);
        }
      }
    }
    // Schreier generators must all lie in the chain below this level.
    // Recursive extend() calls may reallocate the level vector, so the level
    // is re-resolved on every pass; its own gens/orbit cannot change here
    // (additions go strictly deeper).
    const std::size_t orbit_n = lv.orbit.size();
    const std::size_t gen_n = lv.gens.size();
    for (std::size_t i = 0; i < orbit_n; ++i) {
      for (std::size_t j = 0; j < gen_n; ++j) {
        const ChainLevel& cur = chain_.levels[k];
        Perm u = cur.transversal[i] * cur.gens[j];
        int pos = cur.orbit_pos[u[cur.base]];
        Perm candidate = u * cur.transversal[static_cast<std::size_t>(pos)].inverse();
        if (!candidate.is_identity()) extend(candidate, k + 1);
      }
    }
  }

  Chain chain_;
};

// Per-group lazily built caches (the element-index table) shared by all
// copies of the same constructed group. The payload is opaque here to keep
// this header independent of the table implementation.
struct TableSlot {
  std::once_flag once;
  std::shared_ptr<const void> data;
};

}  // namespace detail

// A finite permutation group with an eagerly finalized stabilizer chain.
// Immutable after construction; copies share the chain and caches, so a
// group may be read concurrently from any number of threads.
class PermGroup {
public:
  PermGroup(unsigned degree, std::vector<Perm> gens)
      : degree_(degree), gens_(std::move(gens)) {
    if (degree == 0) throw InvalidInput("group degree must be positive");
    for (const Perm& g : gens_)
      if (g.degree() != degree)
        throw InvalidInput("generator degree mismatch");
    detail::ChainBuilder builder(degree);
    for (const Perm& g : gens_) builder.insert(g);
    chain_ = std::make_shared<const detail::Chain>(builder.take());
    table_slot_ = std::make_shared<detail::TableSlot>();
  }

  unsigned degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }

  // Generators with identities removed (safe for conjugation closures).
  std::vector<Perm> action_generators() const {
    std::vector<Perm> out;
    for (const Perm& g : gens_)
      if (!g.is_identity()) out.push_back(g);
    return out;
  }

  std::uint64_t order() const { return chain_->order(); }

  bool is_trivial() const { return chain_->levels.empty(); }

  bool contains(const Perm& p) const {
    if (p.degree() != degree_) throw InvalidInput("degree mismatch in membership test");
    return chain_->member(p);
  }

  // Full element list in canonical (lexicographic) order.
  std::vector<Perm> elements(std::uint64_t cap = Budgets::defaults().element_cap) const {
    if (order() > cap)
      throw BudgetExceeded("group order " + std::to_string(order()) +
                           " exceeds element cap " + std::to_string(cap));
    std::vector<Perm> acc{Perm::identity(degree_)};
    for (std::size_t k = chain_->levels.size(); k-- > 0;) {
      const detail::ChainLevel& lv = chain_->levels[k];
      std::vector<Perm> next;
      next.reserve(acc.size() * lv.transversal.size());
      for (const Perm& a : acc)
        for (const Perm& u : lv.transversal) next.push_back(a * u);
      acc = std::move(next);
    }
    std::sort(acc.begin(), acc.end());
    return acc;
  }

  // Orbit of a point under the natural action, in BFS discovery order.
  std::vector<unsigned> orbit(unsigned point) const {
    if (point >= degree_) throw InvalidInput("orbit point out of range");
    std::vector<bool> seen(degree_, false);
    std::vector<unsigned> out{point};
    seen[point] = true;
    for (std::size_t i = 0; i < out.size(); ++i)
      for (const Perm& g : gens_) {
        unsigned to = g[out[i]];
        if (!seen[to]) {
          seen[to] = true;
          out.push_back(to);
        }
      }
    return out;
  }

  // All orbits, each in BFS order, ordered by smallest point.
  std::vector<std::vector<unsigned>> orbits() const {
    std::vector<bool> seen(degree_, false);
    std::vector<std::vector<unsigned>> out;
    for (unsigned p = 0; p < degree_; ++p) {
      if (seen[p]) continue;
      auto orb = orbit(p);
      for (unsigned q : orb) seen[q] = true;
      out.push_back(std::move(orb));
    }
    return out;
  }

  // Chain introspection (tests verify the orbit-length product invariant).
  std::vector<unsigned> base_points() const {
    std::vector<unsigned> out;
    for (const auto& lv : chain_->levels) out.push_back(lv.base);
    return out;
  }
  std::vector<std::size_t> basic_orbit_lengths() const {
    std::vector<std::size_t> out;
    for (const auto& lv : chain_->levels) out.push_back(lv.orbit.size());
    return out;
  }

  const std::shared_ptr<detail::TableSlot>& table_slot() const { return table_slot_; }

private:
  unsigned degree_;
  std::vector<Perm> gens_;
  std::shared_ptr<const detail::Chain> chain_;
  std::shared_ptr<detail::TableSlot> table_slot_;
};

inline PermGroup group_from_generators(unsigned degree, std::vector<Perm> gens) {
  return PermGroup(degree, std::move(gens));
}

}  // namespace hallmark
