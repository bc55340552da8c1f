#include "fuglede/certificates.hpp"

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <numbers>

namespace fuglede {
namespace {

std::atomic<bool> g_tiling_cross_check{false};

void require_pair(const SubsetMask& a, const SubsetMask& b, const char* who) {
  if (a.group() != b.group())
    throw std::invalid_argument(std::string(who) + ": group mismatch");
  if (a.empty() || b.empty())
    throw std::invalid_argument(std::string(who) + ": empty set");
}

std::uint32_t mod_inverse(std::uint32_t v, std::uint32_t p) {
  // Fermat inverse; p is prime and v is nonzero mod p.
  std::uint64_t base = v % p, result = 1;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

void validate(const PairList& list) {
  if (list.items.size() != list.p)
    throw std::invalid_argument("pair list: needs exactly p pairs");
  if (list.p < 2)
    throw std::invalid_argument("pair list: p must be at least 2");
}

}  // namespace

PairVerdict is_spectral_pair(const SubsetMask& a, const SubsetMask& b) {
  require_pair(a, b, "is_spectral_pair");
  PairVerdict v{PairKind::spectral};
  if (a.size() != b.size()) {
    v.note = "cardinality mismatch: " + std::to_string(a.size()) +
             " != " + std::to_string(b.size());
    return v;
  }
  const Group& g = a.group();
  SubsetMask diffs = difference_set(b);
  std::optional<Elem> bad;
  diffs.for_each_index([&](std::uint64_t i) {
    if (bad || i == 0) return;
    Elem d = g.element_at(i);
    if (!is_zero(a, d)) bad = d;
  });
  if (bad) {
    v.witness = bad;
    v.note = "difference not annihilated";
    return v;
  }
  v.holds = true;
  return v;
}

bool tiling_zero_criterion(const SubsetMask& a, const SubsetMask& b) {
  const Group& g = a.group();
  if (a.size() * b.size() != g.order()) return false;
  for (std::uint64_t i = 1; i < g.order(); ++i) {
    Elem d = g.element_at(i);
    if (!is_zero(a, d) && !is_zero(b, d)) return false;
  }
  return true;
}

void set_tiling_cross_check(bool on) { g_tiling_cross_check.store(on); }

PairVerdict is_tiling_pair(const SubsetMask& a, const SubsetMask& b) {
  require_pair(a, b, "is_tiling_pair");
  PairVerdict v{PairKind::tiling};
  const Group& g = a.group();
  if (a.size() * b.size() != g.order()) {
    v.note = "cardinality mismatch: " + std::to_string(a.size()) + " * " +
             std::to_string(b.size()) +
             " != " + std::to_string(g.order());
  } else {
    std::vector<std::uint32_t> cover(g.order(), 0);
    b.for_each_index([&](std::uint64_t bi) {
      Elem shift = g.element_at(bi);
      a.for_each_index([&](std::uint64_t ai) {
        ++cover[g.index_of(g.add(g.element_at(ai), shift))];
      });
    });
    std::uint64_t bad = g.order();
    for (std::uint64_t i = 0; i < g.order(); ++i)
      if (cover[i] != 1) {
        bad = i;
        break;
      }
    if (bad == g.order()) {
      v.holds = true;
    } else {
      v.witness = g.element_at(bad);
      v.note = cover[bad] == 0 ? "uncovered element" : "doubly covered element";
    }
  }
  if (g_tiling_cross_check.load(std::memory_order_relaxed)) {
    bool fourier = tiling_zero_criterion(a, b);
    if (fourier != v.holds) {
      std::fprintf(stderr,
                   "is_tiling_pair: direct check (%d) and Fourier criterion "
                   "(%d) disagree; #A=%llu #B=%llu |G|=%llu\n",
                   int(v.holds), int(fourier),
                   static_cast<unsigned long long>(a.size()),
                   static_cast<unsigned long long>(b.size()),
                   static_cast<unsigned long long>(g.order()));
      std::abort();
    }
  }
  return v;
}

bool verify_hadamard(const SubsetMask& a, const SubsetMask& b, double tol) {
  require_pair(a, b, "verify_hadamard");
  if (a.size() != b.size())
    throw std::invalid_argument("verify_hadamard: cardinality mismatch");
  const Group& g = a.group();
  std::vector<Elem> rows = b.elements();
  std::vector<Elem> cols = a.elements();
  std::size_t k = rows.size();
  double scale = 2.0 * std::numbers::pi / static_cast<double>(g.q1());
  std::vector<std::complex<double>> mat(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      double phase = scale * static_cast<double>(g.inner(rows[i], cols[j]));
      mat[i * k + j] = {std::cos(phase), std::sin(phase)};
    }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::complex<double> dot = 0.0;
      for (std::size_t t = 0; t < k; ++t)
        dot += mat[i * k + t] * std::conj(mat[j * k + t]);
      std::complex<double> expect = i == j ? std::complex<double>(k, 0) : 0.0;
      if (std::abs(dot - expect) > tol) return false;
    }
  return true;
}

std::optional<Elem> direction_coverage(const SubsetMask& a) {
  const Group& g = a.group();
  std::optional<SubsetMask> diffs;
  if (!a.empty()) diffs = difference_set(a);
  for (Elem rep : orbit_representatives(g)) {
    bool hit = false;
    if (diffs)
      for (Elem e : unit_orbit(g, rep))
        if (diffs->contains(e)) {
          hit = true;
          break;
        }
    if (!hit) return rep;
  }
  return std::nullopt;
}

bool is_compatible(std::uint32_t c, const PairList& list) {
  validate(list);
  std::uint32_t p = list.p;
  std::vector<bool> seen(p, false);
  for (const auto& [x, y] : list.items) {
    std::uint32_t v = (x % p + static_cast<std::uint64_t>(c % p) * (y % p)) % p;
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

std::optional<std::uint32_t> find_incompatible(const PairList& list) {
  validate(list);
  std::uint32_t p = list.p;
  std::vector<bool> seen(p, false);
  bool xs_distinct = true;
  for (const auto& [x, y] : list.items) {
    (void)y;
    if (seen[x % p]) xs_distinct = false;
    seen[x % p] = true;
  }
  bool ys_all_equal = true;
  for (const auto& [x, y] : list.items) {
    (void)x;
    if (y % p != list.items.front().second % p) ys_all_equal = false;
  }

  if (xs_distinct && !ys_all_equal) {
    for (std::size_t j = 0; j < list.items.size(); ++j)
      for (std::size_t k = j + 1; k < list.items.size(); ++k) {
        std::uint32_t yj = list.items[j].second % p;
        std::uint32_t yk = list.items[k].second % p;
        if (yj == yk) continue;
        std::uint32_t xj = list.items[j].first % p;
        std::uint32_t xk = list.items[k].first % p;
        std::uint32_t dx = (xk + p - xj) % p;
        std::uint32_t dy = (yj + p - yk) % p;
        std::uint32_t u =
            static_cast<std::uint32_t>(
                static_cast<std::uint64_t>(dx) * mod_inverse(dy, p) % p);
        if (is_compatible(u, list))
          throw std::logic_error("find_incompatible: witness formula failed");
        return u;
      }
  }
  for (std::uint32_t c = 0; c < p; ++c)
    if (!is_compatible(c, list)) return c;
  return std::nullopt;
}

std::vector<std::uint32_t> compatible_set(const PairList& list) {
  validate(list);
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 0; c < list.p; ++c)
    if (is_compatible(c, list)) out.push_back(c);
  return out;
}

}  // namespace fuglede
