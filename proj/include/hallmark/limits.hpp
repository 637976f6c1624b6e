#pragma once

#include <cstdint>

namespace hallmark {

// Budgets and caps for all exhaustive routines. Routines take the relevant
// number explicitly and fail loudly (BudgetExceeded) instead of degrading.
struct Budgets {
  // elements(): maximum group order for full element enumeration.
  std::uint64_t element_cap = 1'000'000;
  // subgroups(): maximum number of distinct subgroups discovered.
  std::uint64_t subgroup_budget = 100'000;
  // Maximum group order for the element-index table that backs all
  // subgroup-lattice operations (the table is order^2 entries).
  std::uint64_t table_cap = 5'000;
  // Degree bound for I/O and for coset actions built by quotient().
  unsigned degree_limit = 64;

  static Budgets defaults() { return Budgets{}; }
};

}  // namespace hallmark
