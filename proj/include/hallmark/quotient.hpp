#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "hallmark/structure.hpp"
#include "hallmark/subgroup.hpp"

namespace hallmark {

// A surjective homomorphism G → G/B realized by the right-coset action of G
// on the cosets of a normal subgroup B. Cosets are numbered by the least
// element index they contain, sorted ascending, so the construction is
// canonical; the kernel of the action is exactly B because B is normal.
class Epimorphism {
public:
  Epimorphism(const PermGroup& source, const Subgroup& kernel,
              unsigned degree_limit = Budgets::defaults().degree_limit)
      : source_(source), kernel_(kernel), t_(ElementTable::of(source)) {
    const Bits& kb = kernel_.bits();
    const unsigned n = t_->size();
    if (!structure_detail::is_normal_in(
            structure_detail::whole_universe(source), kb))
      throw InvalidInput("quotient: kernel is not normal in the source");
    const std::uint64_t index = source.order() / kernel_.order();
    if (index > degree_limit)
      throw InvalidInput("quotient: index " + std::to_string(index) +
                         " exceeds the degree limit");

    // coset_min_[x] = least element index in the coset B·x. Scanning x in
    // ascending order, an unassigned x is the least element of its coset, so
    // `mins` comes out sorted by construction.
    coset_min_.assign(n, 0xffffffffu);
    std::vector<std::uint16_t> kidx = kb.to_indices();
    std::vector<std::uint32_t> mins;
    for (unsigned x = 0; x < n; ++x) {
      if (coset_min_[x] != 0xffffffffu) continue;
      for (std::uint16_t k : kidx)
        coset_min_[t_->mul(k, static_cast<std::uint16_t>(x))] = x;
      mins.push_back(x);
    }
    std::vector<std::uint32_t> point_of(n, 0);
    for (unsigned i = 0; i < mins.size(); ++i) point_of[mins[i]] = i;
    const unsigned qd = static_cast<unsigned>(mins.size());

    // forward image of every element: the permutation B·m ↦ B·m·x
    std::vector<Perm> images(n, Perm::identity(qd));
    for (unsigned x = 0; x < n; ++x) {
      std::vector<std::uint16_t> img(qd);
      for (unsigned i = 0; i < qd; ++i) {
        std::uint16_t prod = t_->mul(static_cast<std::uint16_t>(mins[i]),
                                     static_cast<std::uint16_t>(x));
        img[i] = static_cast<std::uint16_t>(point_of[coset_min_[prod]]);
      }
      images[x] = Perm(std::move(img));
    }

    std::vector<Perm> tgen;
    for (const Perm& p : source.action_generators())
      tgen.push_back(images[t_->index_checked(p)]);
    target_ = PermGroup(qd, std::move(tgen));
    if (target_.order() != index)
      throw InternalCheckFailed("coset action is not faithful on G/B");

    tt_ = ElementTable::of(target_);
    fwd_.assign(n, 0);
    lift_.assign(tt_->size(), 0xffffffffu);
    for (unsigned x = 0; x < n; ++x) {
      std::uint32_t ti = tt_->index_checked(images[x]);
      fwd_[x] = static_cast<std::uint16_t>(ti);
      if (lift_[ti] == 0xffffffffu) lift_[ti] = x;  // least source index
    }
    for (std::uint32_t l : lift_)
      if (l == 0xffffffffu)
        throw InternalCheckFailed("forward map is not surjective");
  }

  const PermGroup& source() const { return source_; }
  const PermGroup& target() const { return target_; }
  const Subgroup& kernel() const { return kernel_; }

  // Image of a source element.
  Perm forward(const Perm& p) const {
    return tt_->perm(fwd_[t_->index_checked(p)]);
  }

  // Image of a subgroup of the source.
  Subgroup forward(const Subgroup& h) const {
    if (h.bits().universe_size() != t_->size())
      throw InvalidInput("forward: subgroup is not over the source group");
    Bits img = tt_->empty_set();
    h.bits().for_each([&](unsigned x) { img.set(fwd_[x]); });
    if (img.count() * (h.bits() & kernel_.bits()).count() != h.order())
      throw InternalCheckFailed("forward image order identity failed");
    return detail::subgroup_from_bits(target_, *tt_, img);
  }

  // Least source element mapping to a target element.
  Perm lift(const Perm& q) const {
    return t_->perm(lift_[tt_->index_checked(q)]);
  }

  // Full preimage of a subgroup of the target: generated by the kernel's
  // generators plus one lift of each generator of K̄; |preimage| = |B|·|K̄|.
  Subgroup preimage(const Subgroup& kbar) const {
    const Bits& kb = kbar.bits();
    if (kb.universe_size() != tt_->size())
      throw InvalidInput("preimage: subgroup is not over the target group");
    Bits pre = t_->empty_set();
    for (unsigned x = 0; x < t_->size(); ++x)
      if (kb.test(fwd_[x])) pre.set(x);
    if (pre.count() != kernel_.order() * kbar.order())
      throw InternalCheckFailed("preimage order identity failed");
    std::vector<Perm> gens = kernel_.generators();
    for (const Perm& q : kbar.generators()) gens.push_back(lift(q));
    return Subgroup::from_bits(source_, std::move(pre), std::move(gens));
  }

private:
  PermGroup source_;
  Subgroup kernel_;
  std::shared_ptr<const ElementTable> t_;
  PermGroup target_{1, {}};
  std::shared_ptr<const ElementTable> tt_;
  std::vector<std::uint32_t> coset_min_;
  std::vector<std::uint16_t> fwd_;
  std::vector<std::uint32_t> lift_;
};

// G → G/B by the right-coset action. Requires B normal and |G:B| within the
// degree limit for the coset action.
inline Epimorphism quotient(const PermGroup& g, const Subgroup& b,
                            unsigned degree_limit = Budgets::defaults().degree_limit) {
  return Epimorphism(g, b, degree_limit);
}

}  // namespace hallmark
