#include "fuglede/fourier.hpp"

#include <cmath>
#include <numbers>

namespace fuglede {
namespace {

// Shared core of plane_counts / is_zero; the scratch buffer keeps the hot
// exhaustive-search paths free of per-call allocation.
void fill_counts(const SubsetMask& a, Elem d, std::vector<std::uint64_t>& counts) {
  const Group& g = a.group();
  counts.assign(g.q1(), 0);
  a.for_each_index(
      [&](std::uint64_t i) { ++counts[g.inner(d, g.element_at(i))]; });
}

bool counts_vanish(const Group& g, const std::vector<std::uint64_t>& counts) {
  // Vanishing <=> counts constant on each residue class mod p^(n-1).
  std::uint64_t cls = g.q1() / g.p();
  for (std::uint64_t r = 0; r < cls; ++r) {
    std::uint64_t base = counts[r];
    for (std::uint64_t k = 1; k < g.p(); ++k)
      if (counts[r + k * cls] != base) return false;
  }
  return true;
}

thread_local std::vector<std::uint64_t> tl_counts;

}  // namespace

PlaneCounts plane_counts(const SubsetMask& a, Elem d) {
  PlaneCounts pc;
  pc.direction = d;
  fill_counts(a, d, pc.counts);
  return pc;
}

bool is_zero(const SubsetMask& a, Elem d) {
  if (a.empty()) throw std::invalid_argument("is_zero: empty set");
  fill_counts(a, d, tl_counts);
  return counts_vanish(a.group(), tl_counts);
}

ZeroSet zero_set(const SubsetMask& a) {
  if (a.empty()) throw std::invalid_argument("zero_set: empty set");
  const Group& g = a.group();
  SubsetMask dirs(g);
  if (g.order() <= 4096) {
    for (std::uint64_t i = 1; i < g.order(); ++i)
      if (is_zero(a, g.element_at(i))) dirs.insert_index(i);
  } else {
    for (Elem rep : orbit_representatives(g))
      if (is_zero(a, rep))
        for (Elem e : unit_orbit(g, rep)) dirs.insert(e);
  }
  return ZeroSet(a, std::move(dirs));
}

std::complex<double> fourier_value_float(const SubsetMask& a, Elem d) {
  const Group& g = a.group();
  std::complex<double> sum = 0.0;
  double scale = -2.0 * std::numbers::pi / static_cast<double>(g.q1());
  a.for_each_index([&](std::uint64_t i) {
    double phase = scale * static_cast<double>(g.inner(d, g.element_at(i)));
    sum += std::complex<double>(std::cos(phase), std::sin(phase));
  });
  return sum;
}

std::vector<Elem> unit_orbit(const Group& g, Elem d) {
  SubsetMask seen(g);
  for (std::uint64_t r = 1; r < g.q1(); ++r)
    if (g.is_unit(r)) seen.insert(g.scalar_mul(r, d));
  return seen.elements();
}

std::vector<Elem> orbit_representatives(const Group& g) {
  std::vector<Elem> reps;
  if (g.n() == 2 && g.m() == 1) {
    std::uint32_t p = g.p();
    reps.push_back(g.element(0, 1));
    reps.push_back(g.element(1, 0));
    reps.push_back(g.element(p, 0));
    for (std::uint32_t c = 1; c < p; ++c) reps.push_back(g.element(p, c));
    for (std::uint32_t c = 1; c < p; ++c) reps.push_back(g.element(1, c));
    return reps;
  }
  SubsetMask seen(g);
  for (std::uint64_t i = 1; i < g.order(); ++i) {
    if (seen.test(i)) continue;
    Elem d = g.element_at(i);
    reps.push_back(d);
    for (Elem e : unit_orbit(g, d)) seen.insert(e);
  }
  return reps;
}

}  // namespace fuglede
