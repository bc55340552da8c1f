#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fuglede/certificates.hpp"
#include "fuglede/fourier.hpp"
#include "fuglede/group.hpp"

namespace fuglede {

/**
 * Full verdict for one subset of Z_{p^2} x Z_p: whether it is spectral,
 * whether it tiles, one verified witness per positive verdict, and a
 * provenance tag per side naming the construction (or obstruction) that
 * settled it.  Tags are stable strings, documented in FORMATS.md.
 */
struct Decision {
  SubsetMask subset;
  bool is_spectral = false;
  std::optional<SubsetMask> spectrum;
  std::string spectral_provenance;
  bool is_tile = false;
  std::optional<SubsetMask> complement;
  std::string tile_provenance;

  explicit Decision(SubsetMask s) : subset(std::move(s)) {}
};

/**
 * A size-p^2 set in graph form for parameter c: exactly one element in
 * each of the p^2 classes (i, j), where an element (x + p*y, z) with
 * x, y, z in Z_p sits in class i = x, j = y + c*z (mod p).  Sets whose
 * zero set contains both (p,0) and (1,c) are forced into this shape.
 */
struct GraphForm {
  std::uint32_t c = 0;
  /// table[i][j] = the unique member in class (i, j).
  std::vector<std::vector<Elem>> table;
};

/**
 * Smallest c such that (p,0) and (1,c) are both annihilated by B, or
 * nullopt.  Throws std::invalid_argument on the empty set.
 */
std::optional<std::uint32_t> graph_form_detect(const SubsetMask& b);

/**
 * Validates that B is in graph form for parameter c and extracts the
 * class table; nullopt when some class is empty or doubly occupied.
 */
std::optional<GraphForm> graph_form_extract(const SubsetMask& b,
                                            std::uint32_t c);

/**
 * The canonical spectrum {(j + p*i, c*j mod p) : i, j in Z_p} for a set in
 * graph form with parameter c.  Every difference of this set is a unit
 * multiple of (p,0) or of (1,c), so it pairs with any such B.
 */
SubsetMask graph_form_spectrum(const Group& g, std::uint32_t c);

/**
 * A verified tiling complement for a set B in graph form with parameter c
 * (pre: graph_form_detect(B) = c).  The x = 0 column of the class table is
 * projected to Omega in Z_p x Z_p; complements of Omega are enumerated in
 * search order and the first whose lift {(p*y, z) : (y, z) in T} tiles
 * with B is returned.  Termination is guaranteed: the fiber
 * {(y, z) : y + c*z = 0} complements every column simultaneously, so its
 * lift always passes.
 */
SubsetMask graph_form_complement(const SubsetMask& b, std::uint32_t c);

/**
 * For #A = p and an annihilated direction d (pre: d in zero_set(A)): the
 * spectrum {r*d : 0 <= r < p}.  All its nonzero differences are unit
 * multiples of d, so annihilation follows from orbit closure.
 */
SubsetMask spectrum_for_size_p(const SubsetMask& a, Elem d);

/**
 * For #A = p with a nonempty zero set: a verified tiling complement along
 * with its provenance tag.  Dispatches on the first annihilated
 * representative, in this order:
 *
 *   (0,1)            -> the full line Z_{p^2} x {0}          "x-axis"
 *   (1,c), smallest c -> lift of a Z_p x Z_p complement       "plane-lift"
 *   (p,c), c != 0     -> skew plane {(x + p*y, -c^(-1)*x)}    "skew-plane"
 *   (p,0)            -> the subgroup p*Z_{p^2} x Z_p          "p-plane"
 *
 * Throws std::invalid_argument when #A != p or the zero set is empty.
 */
std::pair<SubsetMask, std::string> tiling_complement_for_size_p(
    const SubsetMask& a);

/**
 * Exhaustive tiling complement in Z_p x Z_p (the group must have
 * n = m = 1 and p <= 13).  The exact-cover search always branches on the
 * smallest uncovered element and tries covering translates in ascending
 * index order, so the first solution is deterministic.  Returns nullopt
 * when omega does not tile.
 */
std::optional<SubsetMask> zp_square_complement(const SubsetMask& omega);

/**
 * Decides both properties for any subset of Z_{p^2} x Z_p and returns
 * verified witnesses.  Pipeline: trivial sizes, then cardinality
 * obstructions, then the annihilator-driven constructions for sizes p and
 * p^2, then subgroup reduction and brute force for the remaining sizes.
 * Every witness is re-verified through the pair checks before it is
 * returned; a construction that failed verification falls back to brute
 * force and carries a "-flagged" provenance suffix (this is never expected
 * to happen and the test suites count such events).
 */
Decision decide(const SubsetMask& a);

}  // namespace fuglede
