#include "fuglede/group.hpp"

#include <algorithm>

namespace fuglede {
namespace {

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

// p^e with the group order cap enforced; 0 signals overflow past the cap.
std::uint64_t pow_capped(std::uint64_t p, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) {
    if (r > Group::kMaxOrder / p) return 0;
    r *= p;
  }
  return r;
}

}  // namespace

Group::Group(std::uint32_t p, std::uint32_t n, std::uint32_t m) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument("group: p must be prime");
  if (n < 1 || m < 1) throw std::invalid_argument("group: exponents must be >= 1");
  if (n < m) {
    std::swap(n, m);
    swapped_ = true;
  }
  n_ = n;
  m_ = m;
  std::uint64_t order = pow_capped(p, n + m);
  if (order == 0)
    throw std::invalid_argument("group: order exceeds 2^20");
  order_ = order;
  q1_ = pow_capped(p, n);
  q2_ = pow_capped(p, m);
  step_ = q1_ / q2_;
}

SubsetMask SubsetMask::full(const Group& g) {
  SubsetMask s(g);
  std::uint64_t order = g.order();
  for (std::size_t wi = 0; wi < s.words_.size(); ++wi) {
    std::uint64_t remaining = order - (wi << 6);
    s.words_[wi] = remaining >= 64 ? ~0ull : (1ull << remaining) - 1;
  }
  s.size_ = order;
  return s;
}

std::vector<Elem> SubsetMask::elements() const {
  std::vector<Elem> out;
  out.reserve(size_);
  for_each_index([&](std::uint64_t i) { out.push_back(group_.element_at(i)); });
  return out;
}

std::vector<std::uint64_t> SubsetMask::indices() const {
  std::vector<std::uint64_t> out;
  out.reserve(size_);
  for_each_index([&](std::uint64_t i) { out.push_back(i); });
  return out;
}

int SubsetMask::compare(const SubsetMask& o) const {
  if (group_ != o.group_)
    throw std::invalid_argument("subset compare: group mismatch");
  for (std::size_t wi = words_.size(); wi-- > 0;) {
    if (words_[wi] != o.words_[wi])
      return words_[wi] < o.words_[wi] ? -1 : 1;
  }
  return 0;
}

bool SubsetMask::intersects(const SubsetMask& o) const {
  for (std::size_t wi = 0; wi < words_.size(); ++wi)
    if (words_[wi] & o.words_[wi]) return true;
  return false;
}

SubsetMask& SubsetMask::operator|=(const SubsetMask& o) {
  std::uint64_t count = 0;
  for (std::size_t wi = 0; wi < words_.size(); ++wi) {
    words_[wi] |= o.words_[wi];
    count += static_cast<std::uint64_t>(__builtin_popcountll(words_[wi]));
  }
  size_ = count;
  return *this;
}

SubsetMask difference_set(const SubsetMask& a) {
  if (a.empty()) throw std::invalid_argument("difference_set: empty set");
  const Group& g = a.group();
  SubsetMask out(g);
  std::vector<Elem> elems = a.elements();
  for (Elem x : elems)
    for (Elem y : elems) out.insert(g.sub(x, y));
  return out;
}

SubsetMask translate(const SubsetMask& a, Elem g) {
  const Group& grp = a.group();
  SubsetMask out(grp);
  a.for_each_index(
      [&](std::uint64_t i) { out.insert(grp.add(grp.element_at(i), g)); });
  return out;
}

std::optional<Subgroup> proper_subgroup_containment(const SubsetMask& a) {
  const Group& g = a.group();
  if (g.n() != 2 || g.m() != 1)
    throw std::invalid_argument(
        "proper_subgroup_containment: requires Z_{p^2} x Z_p");
  if (a.empty())
    throw std::invalid_argument("proper_subgroup_containment: empty set");

  std::uint64_t a0_index = g.order();
  a.for_each_index([&](std::uint64_t i) {
    if (i < a0_index) a0_index = i;
  });
  Elem a0 = g.element_at(a0_index);
  SubsetMask shifted = translate(a, g.neg(a0));

  // Closure of the shifted set under addition, grown breadth-first.
  SubsetMask closure(g);
  closure.insert(g.element(0, 0));
  std::vector<Elem> frontier{g.element(0, 0)};
  std::vector<Elem> gens = shifted.elements();
  while (!frontier.empty()) {
    std::vector<Elem> next;
    for (Elem x : frontier)
      for (Elem gen : gens) {
        Elem s = g.add(x, gen);
        if (!closure.contains(s)) {
          closure.insert(s);
          next.push_back(s);
        }
      }
    frontier = std::move(next);
  }

  std::uint64_t h = closure.size();
  if (h == g.order()) return std::nullopt;
  SubgroupKind kind;
  if (h == 1) {
    kind = SubgroupKind::trivial;
  } else if (h == g.p()) {
    kind = SubgroupKind::cyclic_p;
  } else {
    // Order p^2: cyclic exactly when some member has a unit first coordinate.
    bool has_unit = false;
    closure.for_each_index([&](std::uint64_t i) {
      if (g.is_unit(g.element_at(i).d1)) has_unit = true;
    });
    kind = has_unit ? SubgroupKind::cyclic_p2 : SubgroupKind::product_p_p;
  }
  return Subgroup{kind, std::move(closure), a0};
}

}  // namespace fuglede
