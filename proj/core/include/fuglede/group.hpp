#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace fuglede {

/// Element of Z_{p^n} x Z_{p^m}, stored with both coordinates reduced.
struct Elem {
  std::uint32_t d1 = 0;
  std::uint32_t d2 = 0;

  friend bool operator==(const Elem&, const Elem&) = default;
};

/**
 * The finite abelian group G = Z_{p^n} x Z_{p^m} with p prime and
 * n >= m >= 1.
 *
 * Descriptors given with n < m are accepted and normalized by swapping the
 * exponents; swapped() reports when that happened so that callers can
 * transpose element coordinates on input and output.
 *
 * The bilinear pairing
 *
 *     <d, x> = d1*x1 + p^(n-m)*d2*x2   (mod p^n)
 *
 * identifies G with its character group: d corresponds to the character
 * x -> exp(-2*pi*i*<d,x>/p^n).  All Fourier-side computations in this
 * library are phrased through this pairing.
 *
 * Elements are indexed by index(d) = d1*p^m + d2, which gives a fixed
 * bijection between G and [0, p^(n+m)).  Subset bitmasks, enumeration
 * order and all "smallest element" tie-breaks refer to this index.
 */
class Group {
 public:
  /// Group orders are capped so subset bitmasks stay affordable.
  static constexpr std::uint64_t kMaxOrder = 1ull << 20;

  Group(std::uint32_t p, std::uint32_t n, std::uint32_t m);

  std::uint32_t p() const { return p_; }
  std::uint32_t n() const { return n_; }
  std::uint32_t m() const { return m_; }
  /// p^n, the order of the first factor (and the modulus of the pairing).
  std::uint64_t q1() const { return q1_; }
  /// p^m, the order of the second factor.
  std::uint64_t q2() const { return q2_; }
  std::uint64_t order() const { return order_; }
  /// p^(n-m), the weight of the second coordinate in the pairing.
  std::uint64_t step() const { return step_; }
  /// True when the constructor swapped the exponents to enforce n >= m.
  bool swapped() const { return swapped_; }

  bool operator==(const Group& o) const {
    return p_ == o.p_ && n_ == o.n_ && m_ == o.m_;
  }
  bool operator!=(const Group& o) const { return !(*this == o); }

  /// Reduces arbitrary coordinates into a canonical element.
  Elem element(std::uint64_t d1, std::uint64_t d2) const {
    return Elem{static_cast<std::uint32_t>(d1 % q1_),
                static_cast<std::uint32_t>(d2 % q2_)};
  }

  std::uint64_t index_of(Elem e) const {
    return static_cast<std::uint64_t>(e.d1) * q2_ + e.d2;
  }
  Elem element_at(std::uint64_t index) const {
    return Elem{static_cast<std::uint32_t>(index / q2_),
                static_cast<std::uint32_t>(index % q2_)};
  }

  Elem add(Elem a, Elem b) const {
    return element(static_cast<std::uint64_t>(a.d1) + b.d1,
                   static_cast<std::uint64_t>(a.d2) + b.d2);
  }
  Elem neg(Elem a) const {
    return Elem{static_cast<std::uint32_t>((q1_ - a.d1) % q1_),
                static_cast<std::uint32_t>((q2_ - a.d2) % q2_)};
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  /// <d, x> = d1*x1 + p^(n-m)*d2*x2 (mod p^n).
  std::uint64_t inner(Elem d, Elem x) const {
    std::uint64_t v = static_cast<std::uint64_t>(d.d1) * x.d1 +
                      step_ * d.d2 % q1_ * x.d2;
    return v % q1_;
  }

  /// r*d with the scalar acting on both coordinates.
  Elem scalar_mul(std::uint64_t r, Elem d) const {
    return element(r % q1_ * d.d1, r % q2_ * d.d2);
  }

  /// Scalars coprime to p act invertibly; everything else does not.
  bool is_unit(std::uint64_t r) const { return r % p_ != 0; }

 private:
  std::uint32_t p_, n_, m_;
  std::uint64_t q1_, q2_, order_, step_;
  bool swapped_ = false;
};

/**
 * Subset of a group as a bit vector over element indices, with a cached
 * cardinality.  Word 0 bit 0 is element index 0, so comparing the words
 * from the top down orders masks by their value as a big binary integer;
 * that order is what "lexicographically smallest translate" and the
 * enumeration stream refer to.
 */
class SubsetMask {
 public:
  explicit SubsetMask(const Group& g)
      : group_(g), words_((g.order() + 63) / 64, 0) {}

  static SubsetMask full(const Group& g);

  const Group& group() const { return group_; }
  std::uint64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool test(std::uint64_t index) const {
    return (words_[index >> 6] >> (index & 63)) & 1;
  }
  bool contains(Elem e) const { return test(group_.index_of(e)); }

  void insert_index(std::uint64_t index) {
    std::uint64_t& w = words_[index >> 6];
    std::uint64_t bit = 1ull << (index & 63);
    if (!(w & bit)) {
      w |= bit;
      ++size_;
    }
  }
  void insert(Elem e) { insert_index(group_.index_of(e)); }
  void erase_index(std::uint64_t index) {
    std::uint64_t& w = words_[index >> 6];
    std::uint64_t bit = 1ull << (index & 63);
    if (w & bit) {
      w &= ~bit;
      --size_;
    }
  }

  /// Visits set bits in ascending index order.
  template <typename F>
  void for_each_index(F f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        std::uint64_t bit = w & (~w + 1);
        f((wi << 6) + static_cast<std::uint64_t>(__builtin_ctzll(w)));
        w ^= bit;
      }
    }
  }

  /// Elements in ascending index order.
  std::vector<Elem> elements() const;
  std::vector<std::uint64_t> indices() const;

  /// Three-way comparison of the masks as big binary integers.
  int compare(const SubsetMask& o) const;

  bool operator==(const SubsetMask& o) const {
    return group_ == o.group_ && words_ == o.words_;
  }
  bool operator!=(const SubsetMask& o) const { return !(*this == o); }

  bool intersects(const SubsetMask& o) const;
  SubsetMask& operator|=(const SubsetMask& o);

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  Group group_;
  std::vector<std::uint64_t> words_;
  std::uint64_t size_ = 0;
};

/**
 * The difference set A - A (always contains 0 for nonempty A).
 * Throws std::invalid_argument on the empty set.
 */
SubsetMask difference_set(const SubsetMask& a);

/// The translate A + g.
SubsetMask translate(const SubsetMask& a, Elem g);

enum class SubgroupKind {
  trivial,      // {0}
  cyclic_p,     // Z_p
  cyclic_p2,    // Z_{p^2}
  product_p_p,  // Z_p x Z_p
};

struct Subgroup {
  SubgroupKind kind;
  SubsetMask members;
  /// The translation applied before taking the closure: A - shift contains 0.
  Elem shift;
};

/**
 * For G = Z_{p^2} x Z_p only: translates A by its smallest-index element a0
 * and returns the smallest subgroup containing A - a0, classified by
 * isomorphism type.  Returns nullopt when A - a0 generates all of G.
 * Throws std::invalid_argument for other exponent shapes or an empty set.
 */
std::optional<Subgroup> proper_subgroup_containment(const SubsetMask& a);

}  // namespace fuglede
