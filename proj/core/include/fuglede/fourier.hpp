#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "fuglede/group.hpp"

namespace fuglede {

/// |f| below this is accepted as zero by the floating-point oracle.
inline constexpr double kFloatZeroTol = 1e-6;
/// Exact nonzeros must keep |f| above this; the gap guards the oracle.
inline constexpr double kFloatNonzeroTol = 1e-4;

/**
 * Occupancy of the parallel planes orthogonal to a direction d: counts[t] is
 * the number of a in A with <d, a> = t, for t in [0, p^n).
 */
struct PlaneCounts {
  Elem direction;
  std::vector<std::uint64_t> counts;
};

PlaneCounts plane_counts(const SubsetMask& a, Elem d);

/**
 * Exact test for sum_{a in A} exp(-2*pi*i*<d,a>/p^n) = 0.
 *
 * The sum is an integer combination of p^n-th roots of unity, and the
 * minimal polynomial of a primitive p^n-th root divides any vanishing
 * combination.  Spelled out on plane counts: the sum vanishes exactly when
 * counts[t] = counts[t'] whenever t = t' (mod p^(n-1)).  No floating point
 * is involved.  Throws std::invalid_argument on the empty set.
 */
bool is_zero(const SubsetMask& a, Elem d);

/**
 * All nonzero directions annihilated by A, as a mask over direction indices.
 * The zero direction is never a member for nonempty A.
 */
class ZeroSet {
 public:
  ZeroSet(SubsetMask subject, SubsetMask directions)
      : subject_(std::move(subject)), directions_(std::move(directions)) {}

  const SubsetMask& subject() const { return subject_; }
  const SubsetMask& mask() const { return directions_; }
  bool contains(Elem d) const { return directions_.contains(d); }
  bool empty() const { return directions_.empty(); }
  std::uint64_t size() const { return directions_.size(); }
  /// Zero directions in ascending index order.
  std::vector<Elem> directions() const { return directions_.elements(); }

 private:
  SubsetMask subject_;
  SubsetMask directions_;
};

/**
 * Computes the full zero set of A.  Small groups are scanned element by
 * element; past 4096 elements the scan walks one representative per unit
 * orbit and expands, which is equivalent because the zero set is a union
 * of unit orbits.  Throws std::invalid_argument on the empty set.
 */
ZeroSet zero_set(const SubsetMask& a);

/**
 * Floating-point oracle: sum_{a in A} exp(-2*pi*i*<d,a>/p^n).  Used to
 * audit the exact test, never to decide anything.
 */
std::complex<double> fourier_value_float(const SubsetMask& a, Elem d);

/// The orbit {r*d : r a unit scalar}, in ascending index order.
std::vector<Elem> unit_orbit(const Group& g, Elem d);

/**
 * One representative per orbit of nonzero elements under the unit scalar
 * action.  For Z_{p^2} x Z_p the list is, in order: (0,1), (1,0), (p,0),
 * then (p,c) and finally (1,c) for c = 1..p-1.  Other groups list the
 * smallest-index member of each orbit in ascending discovery order.
 */
std::vector<Elem> orbit_representatives(const Group& g);

}  // namespace fuglede
