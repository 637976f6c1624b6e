#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "hallmark/errors.hpp"
#include "hallmark/limits.hpp"
#include "hallmark/perm_group.hpp"

namespace hallmark {

// Dynamic bitset over the element indices of one ElementTable. The canonical
// order on equal-sized sets is "first differing element decides": the set
// containing the smaller element comes first.
class Bits {
public:
  Bits() = default;
  explicit Bits(unsigned universe) : n_(universe), w_((universe + 63) / 64, 0) {}

  unsigned universe_size() const { return n_; }

  void set(unsigned i) { w_[i >> 6] |= 1ull << (i & 63); }
  void reset(unsigned i) { w_[i >> 6] &= ~(1ull << (i & 63)); }
  bool test(unsigned i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : w_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
  }

  bool operator==(const Bits&) const = default;

  Bits operator|(const Bits& o) const {
    Bits r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i];
    return r;
  }

  Bits operator&(const Bits& o) const {
    Bits r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
    return r;
  }

  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  // True when *this precedes o in the canonical order over sets of element
  // indices (compare the sorted index sequences lexicographically).
  bool seq_less(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t diff = w_[i] ^ o.w_[i];
      if (diff) {
        std::uint64_t low = diff & (~diff + 1);
        return (w_[i] & low) != 0;
      }
    }
    return false;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t w = w_[i];
      while (w) {
        unsigned b = static_cast<unsigned>(std::countr_zero(w));
        f(static_cast<unsigned>(i * 64 + b));
        w &= w - 1;
      }
    }
  }

  std::vector<std::uint16_t> to_indices() const {
    std::vector<std::uint16_t> out;
    out.reserve(count());
    for_each([&](unsigned i) { out.push_back(static_cast<std::uint16_t>(i)); });
    return out;
  }

  struct Hash {
    std::size_t operator()(const Bits& b) const {
      std::uint64_t h = 1469598103934665603ull;
      for (std::uint64_t w : b.w_) {
        h ^= w;
        h *= 1099511628211ull;
      }
      return static_cast<std::size_t>(h);
    }
  };

private:
  unsigned n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Complete multiplication/inversion/order table over the canonical element
// list of one group. All subgroup-lattice machinery works on element indices
// against one fixed table. Index 0 is always the identity (it is the
// lexicographically least permutation).
class ElementTable {
public:
  static constexpr std::uint32_t npos = 0xffffffffu;

  explicit ElementTable(const PermGroup& g,
                        std::uint64_t cap = Budgets::defaults().table_cap)
      : elems_(g.elements(cap)) {
    n_ = static_cast<unsigned>(elems_.size());
    index_.reserve(n_ * 2);
    for (unsigned i = 0; i < n_; ++i) index_.emplace(elems_[i], i);
    if (!elems_[0].is_identity())
      throw InternalCheckFailed("identity is not the least element");

    // rp_[b*n + a] = index(elems_[a] * elems_[b]), built one right-factor
    // column at a time by walking the right Cayley graph: the column of
    // b = prev * gen is the composition of prev's column with gen's column.
    rp_.assign(static_cast<std::size_t>(n_) * n_, 0);
    std::vector<std::uint16_t> gen_idx;
    std::vector<const std::uint16_t*> gen_col;
    for (const Perm& p : g.action_generators()) {
      std::uint16_t gi = static_cast<std::uint16_t>(index_.at(p));
      std::uint16_t* col = &rp_[static_cast<std::size_t>(gi) * n_];
      for (unsigned a = 0; a < n_; ++a)
        col[a] = static_cast<std::uint16_t>(index_.at(elems_[a] * p));
      gen_idx.push_back(gi);
      gen_col.push_back(col);
    }
    {
      std::uint16_t* id_col = &rp_[0];
      for (unsigned a = 0; a < n_; ++a) id_col[a] = static_cast<std::uint16_t>(a);
      std::vector<bool> done(n_, false);
      done[0] = true;
      std::vector<std::uint16_t> frontier{0};
      for (std::uint16_t gi : gen_idx)
        if (!done[gi]) {
          done[gi] = true;
          frontier.push_back(gi);
        }
      for (std::size_t i = 0; i < frontier.size(); ++i) {
        std::uint16_t b = frontier[i];
        const std::uint16_t* bcol = &rp_[static_cast<std::size_t>(b) * n_];
        for (std::size_t k = 0; k < gen_idx.size(); ++k) {
          std::uint16_t nb = gen_col[k][b];  // b * gen
          if (done[nb]) continue;
          done[nb] = true;
          std::uint16_t* ncol = &rp_[static_cast<std::size_t>(nb) * n_];
          const std::uint16_t* gcol = gen_col[k];
          for (unsigned a = 0; a < n_; ++a) ncol[a] = gcol[bcol[a]];
          frontier.push_back(nb);
        }
      }
      if (frontier.size() != n_)
        throw InternalCheckFailed("Cayley walk did not cover the group");
    }

    inv_.resize(n_);
    for (unsigned i = 0; i < n_; ++i)
      inv_[i] = static_cast<std::uint16_t>(index_.at(elems_[i].inverse()));

    ord_.resize(n_);
    for (unsigned i = 0; i < n_; ++i) {
      std::uint32_t o = 1;
      std::uint16_t x = static_cast<std::uint16_t>(i);
      while (x != 0) {
        x = mul(x, static_cast<std::uint16_t>(i));
        ++o;
      }
      ord_[i] = o;
    }
  }

  // The table for a group instance, built once and shared among all copies
  // of that instance.
  static std::shared_ptr<const ElementTable> of(
      const PermGroup& g, std::uint64_t cap = Budgets::defaults().table_cap) {
    if (g.order() > cap)
      throw BudgetExceeded("group order " + std::to_string(g.order()) +
                           " exceeds table cap " + std::to_string(cap));
    auto slot = g.table_slot();
    std::call_once(slot->once, [&] {
      slot->data = std::make_shared<const ElementTable>(g, cap);
    });
    return std::static_pointer_cast<const ElementTable>(slot->data);
  }

  unsigned size() const { return n_; }

  // Index of elems_[a] * elems_[b] (left-to-right composition).
  std::uint16_t mul(std::uint16_t a, std::uint16_t b) const {
    return rp_[static_cast<std::size_t>(b) * n_ + a];
  }

  std::uint16_t inv(std::uint16_t a) const { return inv_[a]; }

  // Index of elems_[x] ^ elems_[g] = g^-1 x g.
  std::uint16_t conj(std::uint16_t x, std::uint16_t g) const {
    return mul(mul(inv_[g], x), g);
  }

  std::uint32_t elem_order(std::uint16_t i) const { return ord_[i]; }

  const Perm& perm(std::uint32_t i) const { return elems_[i]; }

  std::uint32_t index_of(const Perm& p) const {
    auto it = index_.find(p);
    return it == index_.end() ? npos : it->second;
  }

  std::uint32_t index_checked(const Perm& p) const {
    std::uint32_t i = index_of(p);
    if (i == npos) throw InvalidInput("element does not belong to the group");
    return i;
  }

  Bits empty_set() const { return Bits(n_); }

  Bits trivial_subgroup() const {
    Bits b(n_);
    b.set(0);
    return b;
  }

  Bits all() const {
    Bits b(n_);
    for (unsigned i = 0; i < n_; ++i) b.set(i);
    return b;
  }

  // Subgroup closure of the given generator indices (always contains the
  // identity).
  Bits closure(const std::vector<std::uint16_t>& gens) const {
    Bits out(n_);
    out.set(0);
    std::vector<std::uint16_t> work{0};
    for (std::uint16_t g : gens)
      if (!out.test(g)) {
        out.set(g);
        work.push_back(g);
      }
    for (std::size_t i = 0; i < work.size(); ++i)
      for (std::uint16_t g : gens) {
        std::uint16_t y = mul(work[i], g);
        if (!out.test(y)) {
          out.set(y);
          work.push_back(y);
        }
      }
    return out;
  }

  Bits cyclic(std::uint16_t x) const { return closure({x}); }

  // Image of a subgroup element set under conjugation by g.
  Bits conj_set(const Bits& h, std::uint16_t g) const {
    Bits out(n_);
    std::uint16_t gi = inv_[g];
    h.for_each([&](unsigned x) {
      out.set(mul(mul(gi, static_cast<std::uint16_t>(x)), g));
    });
    return out;
  }

  // A short generating sequence for the subgroup given by its element set:
  // greedily adjoin the least element outside the running closure.
  std::vector<std::uint16_t> generating_indices(const Bits& sub) const {
    std::vector<std::uint16_t> gens;
    Bits have = trivial_subgroup();
    auto idx = sub.to_indices();
    for (std::uint16_t x : idx) {
      if (have.test(x)) continue;
      gens.push_back(x);
      have = closure(gens);
      if (have == sub) break;
    }
    return gens;
  }

private:
  std::vector<Perm> elems_;
  std::unordered_map<Perm, std::uint32_t, PermHash> index_;
  std::vector<std::uint16_t> rp_;
  std::vector<std::uint16_t> inv_;
  std::vector<std::uint32_t> ord_;
  unsigned n_ = 0;
};

}  // namespace hallmark
