#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

#include "fuglede/group.hpp"

namespace testutil {

inline fuglede::SubsetMask make_set(
    const fuglede::Group& g,
    std::initializer_list<std::pair<std::uint64_t, std::uint64_t>> elems) {
  fuglede::SubsetMask a(g);
  for (auto [d1, d2] : elems) a.insert(g.element(d1, d2));
  return a;
}

/// Uniform random subset of the given size (Floyd's algorithm).
inline fuglede::SubsetMask random_set(const fuglede::Group& g,
                                      std::uint64_t size,
                                      std::mt19937_64& rng) {
  fuglede::SubsetMask a(g);
  const std::uint64_t order = g.order();
  for (std::uint64_t j = order - size; j < order; ++j) {
    std::uint64_t t = rng() % (j + 1);
    if (a.test(t)) a.insert_index(j);
    else a.insert_index(t);
  }
  return a;
}

/// Random nonempty subset with each element kept with probability 1/2.
inline fuglede::SubsetMask random_mask(const fuglede::Group& g,
                                       std::mt19937_64& rng) {
  fuglede::SubsetMask a(g);
  do {
    for (std::uint64_t i = 0; i < g.order(); ++i)
      if (rng() & 1) a.insert_index(i);
  } while (a.empty());
  return a;
}

inline fuglede::Elem random_elem(const fuglede::Group& g,
                                 std::mt19937_64& rng) {
  return g.element_at(rng() % g.order());
}

}  // namespace testutil
