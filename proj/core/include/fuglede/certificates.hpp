#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fuglede/fourier.hpp"
#include "fuglede/group.hpp"

namespace fuglede {

/// Entry-wise tolerance for the complex Hadamard cross-check.
inline constexpr double kHadamardTol = 1e-8;

enum class PairKind { spectral, tiling };

/**
 * Outcome of checking a candidate (set, witness) pair.  When the check
 * fails, `witness` holds the smallest-index offending element if one
 * exists, and `note` explains failures that have no single element (for
 * example a cardinality mismatch).
 */
struct PairVerdict {
  PairKind kind;
  bool holds = false;
  std::optional<Elem> witness;
  std::string note;
};

/**
 * Is B a spectrum for A?  Requires #A = #B and every nonzero difference of
 * B to be annihilated by A.  Differences are scanned in ascending index
 * order so the reported witness is reproducible.  Throws
 * std::invalid_argument on group mismatch or an empty set.
 */
PairVerdict is_spectral_pair(const SubsetMask& a, const SubsetMask& b);

/**
 * Is A (+) B = G a direct sum?  The verdict comes from the direct check:
 * #A * #B = |G| and the translates A + b are pairwise disjoint.  With the
 * cross-check enabled (tests), the equivalent Fourier condition is also
 * evaluated and any disagreement aborts the process.
 */
PairVerdict is_tiling_pair(const SubsetMask& a, const SubsetMask& b);

/**
 * Fourier side of the tiling criterion: #A * #B = |G| and every nonzero
 * direction is annihilated by A or by B.
 */
bool tiling_zero_criterion(const SubsetMask& a, const SubsetMask& b);

/// Enables the tiling cross-check globally (meant for test binaries).
void set_tiling_cross_check(bool on);

/**
 * Floating-point diagnostic: builds M[i][j] = exp(2*pi*i*<b_i, a_j>/p^n)
 * and checks M * M^H = #A * I entry-wise within kHadamardTol (or `tol`).
 * True spectral pairs make M a complex Hadamard matrix up to scale.
 * Requires #A = #B > 0.
 */
bool verify_hadamard(const SubsetMask& a, const SubsetMask& b,
                     double tol = kHadamardTol);

/**
 * Returns a nonzero direction whose whole unit orbit misses the difference
 * set of A, or nullopt when every nonzero orbit is hit.  Orbits are probed
 * in orbit_representatives order.
 */
std::optional<Elem> direction_coverage(const SubsetMask& a);

/**
 * A list of exactly p pairs (x_i, y_i) over Z_p.  A scalar c is compatible
 * with the list when the values x_i + c*y_i are pairwise distinct mod p.
 * Such lists arise as (first coordinate mod p, second coordinate) columns
 * of candidate tiles, where compatible scalars mark annihilated directions.
 */
struct PairList {
  std::uint32_t p = 2;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> items;
};

bool is_compatible(std::uint32_t c, const PairList& list);

/**
 * Finds some incompatible scalar, or nullopt when every scalar is
 * compatible.  When the x_i are pairwise distinct and the y_i are not all
 * equal, the witness is computed in closed form from the lexicographically
 * smallest index pair (j, k) with y_j != y_k:
 *
 *     u = (x_k - x_j) * (y_j - y_k)^(-1)   (mod p),
 *
 * which forces x_j + u*y_j = x_k + u*y_k.  Other inputs fall back to an
 * exhaustive scan in ascending scalar order.
 */
std::optional<std::uint32_t> find_incompatible(const PairList& list);

/// All compatible scalars in ascending order.
std::vector<std::uint32_t> compatible_set(const PairList& list);

}  // namespace fuglede
