#pragma once

#include <initializer_list>
#include <vector>

#include "hallmark/perm.hpp"

namespace testutil {

// Build a permutation from 0-indexed cycles, e.g. cyc(5, {{0,1,2},{3,4}}).
inline hallmark::Perm cyc(unsigned degree,
                          std::initializer_list<std::initializer_list<unsigned>> cycles) {
  std::vector<std::uint16_t> img(degree);
  for (unsigned i = 0; i < degree; ++i) img[i] = static_cast<std::uint16_t>(i);
  for (const auto& c : cycles) {
    std::vector<unsigned> v(c);
    for (std::size_t i = 0; i < v.size(); ++i)
      img[v[i]] = static_cast<std::uint16_t>(v[(i + 1) % v.size()]);
  }
  return hallmark::Perm(img);
}

}  // namespace testutil
