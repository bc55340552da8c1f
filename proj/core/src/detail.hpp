#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "fuglede/group.hpp"

// Internal helpers shared between the constructor and search translation
// units; not installed and not part of the public surface.
namespace fuglede::detail {

inline std::uint32_t mod_inverse(std::uint32_t v, std::uint32_t p) {
  std::uint64_t base = v % p, result = 1;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

/**
 * Enumerates every tiling complement T of `a` (sets with a (+) T = G) by
 * exact cover: branch on the smallest uncovered element, try the covering
 * translates in ascending translate-index order.  Solutions arrive in a
 * deterministic order; the callback returns false to stop.  Requires a
 * nonempty `a` whose size divides the group order (callers check).
 */
void exact_cover_enumerate(const SubsetMask& a,
                           const std::function<bool(const SubsetMask&)>& emit);

/**
 * Smallest spectrum for `a` drawn from the given candidate elements, or
 * nullopt.  Candidates must contain 0; the spectrum is normalized to
 * contain 0 and grown in ascending index order.
 */
std::optional<SubsetMask> brute_spectrum_within(const SubsetMask& a,
                                                const SubsetMask& candidates);

}  // namespace fuglede::detail
