#pragma once

#include "qnk/bigint.hpp"

#include <initializer_list>
#include <span>
#include <vector>

namespace qnk {

/// Coprime pair n > k >= 1.
struct Slope {
  BigInt n;
  BigInt k;

  static Slope make(const BigInt& n, const BigInt& k);
  bool operator==(const Slope&) const = default;
};

/// Negative continued fraction [n1,...,ng] with every entry >= 2.
class NCF {
 public:
  explicit NCF(std::vector<BigInt> entries);
  static NCF of(std::initializer_list<long long> entries);

  const std::vector<BigInt>& entries() const { return entries_; }
  std::size_t g() const { return entries_.size(); }
  const BigInt& operator[](std::size_t i) const { return entries_[i]; }

  // Entries as machine integers; throws if one does not fit.
  std::vector<int> small_entries() const;
  NCF reversed() const;
  bool operator==(const NCF&) const = default;

 private:
  std::vector<BigInt> entries_;
};

/// k_0..k_{g+1}, l_0..l_{g+1} and the inverse k' of k mod n.
struct SlopeSequences {
  std::vector<BigInt> k_seq;
  std::vector<BigInt> l_seq;
  BigInt k_prime;
};

/// Image of T^{n1} S ... S T^{ng} S (1,0)^T in (degree, rank) coordinates.
struct SL2Bookkeeping {
  BigInt degree;
  BigInt rank;
  Slope slope;
};

NCF expand(const Slope& s);
Slope evaluate(const NCF& f);
SlopeSequences sequences(const NCF& f);

/// Determinant of the tridiagonal matrix with diagonal `entries` and -1 off the diagonal.
/// Empty input gives 1.
BigInt d(std::span<const BigInt> entries);
BigInt d(std::initializer_list<long long> entries);

/// Signed sum over parity-alternating subsequences; equals the numerator n.
BigInt combinatorial_n(const NCF& f);

SL2Bookkeeping slope_via_sl2(const NCF& f);

}  // namespace qnk
