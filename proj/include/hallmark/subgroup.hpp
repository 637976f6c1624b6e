#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "hallmark/element_table.hpp"
#include "hallmark/perm_group.hpp"

namespace hallmark {

// A subgroup of an ambient group. Canonical identity is the full element set
// (as a Bits over the ambient element table); the set, and a stabilizer
// chain for the subgroup in its own right, are built lazily and shared by
// copies. Immutable after construction.
class Subgroup {
public:
  Subgroup(PermGroup ambient, std::vector<Perm> gens)
      : ambient_(std::move(ambient)),
        gens_(std::move(gens)),
        lazy_(std::make_shared<Lazy>()) {
    for (const Perm& g : gens_)
      if (!ambient_.contains(g))
        throw InvalidInput("subgroup generator lies outside the ambient group");
  }

  // Trusted internal constructor: the element set is already known.
  static Subgroup from_bits(const PermGroup& ambient, Bits bits,
                            std::vector<Perm> gens) {
    Subgroup s(Unchecked{}, ambient, std::move(gens));
    s.lazy_->bits = std::make_shared<const Bits>(std::move(bits));
    s.lazy_->order = s.lazy_->bits->count();
    return s;
  }

  const PermGroup& ambient() const { return ambient_; }
  const std::vector<Perm>& generators() const { return gens_; }

  // The subgroup as a PermGroup in its own right (lazy chain build).
  const PermGroup& group() const {
    std::call_once(lazy_->group_once, [&] {
      lazy_->group = std::make_shared<const PermGroup>(ambient_.degree(), gens_);
    });
    return *lazy_->group;
  }

  std::uint64_t order() const {
    if (lazy_->bits) return lazy_->order;
    return group().order();
  }

  bool is_trivial() const { return order() == 1; }
  bool is_whole() const { return order() == ambient_.order(); }

  // Element set over the ambient table (built on demand).
  const Bits& bits(std::uint64_t table_cap = Budgets::defaults().table_cap) const {
    std::call_once(lazy_->bits_once, [&] {
      if (lazy_->bits) return;  // seeded by from_bits
      auto t = ElementTable::of(ambient_, table_cap);
      std::vector<std::uint16_t> gi;
      gi.reserve(gens_.size());
      for (const Perm& g : gens_)
        gi.push_back(static_cast<std::uint16_t>(t->index_checked(g)));
      auto b = std::make_shared<const Bits>(t->closure(gi));
      lazy_->order = b->count();
      lazy_->bits = std::move(b);
    });
    return *lazy_->bits;
  }

  bool contains(const Perm& p) const {
    if (lazy_->bits) {
      std::uint32_t i = ElementTable::of(ambient_)->index_of(p);
      return i != ElementTable::npos && lazy_->bits->test(i);
    }
    return group().contains(p);
  }

  bool same_set_as(const Subgroup& o) const { return bits() == o.bits(); }

  // Canonical order: by order, then by element-set sequence.
  bool key_less(const Subgroup& o) const {
    if (order() != o.order()) return order() < o.order();
    return bits().seq_less(o.bits());
  }

private:
  struct Unchecked {};
  Subgroup(Unchecked, PermGroup ambient, std::vector<Perm> gens)
      : ambient_(std::move(ambient)),
        gens_(std::move(gens)),
        lazy_(std::make_shared<Lazy>()) {}

  struct Lazy {
    std::once_flag group_once;
    std::shared_ptr<const PermGroup> group;
    std::once_flag bits_once;
    std::shared_ptr<const Bits> bits;
    std::uint64_t order = 0;
  };

  PermGroup ambient_;
  std::vector<Perm> gens_;
  std::shared_ptr<Lazy> lazy_;
};

// A conjugacy class of subgroups: all distinct ambient-conjugates.
struct SubgroupClass {
  Subgroup representative;
  std::vector<Subgroup> members;
};

}  // namespace hallmark
