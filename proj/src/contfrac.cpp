#include "qnk/contfrac.hpp"

#include <algorithm>
#include <array>

namespace qnk {

Slope Slope::make(const BigInt& n, const BigInt& k) {
  if (!(n > k && k >= 1))
    throw PreconditionError("slope requires n > k >= 1, got " + n.str() + "/" + k.str());
  if (boost::multiprecision::gcd(n, k) != 1)
    throw PreconditionError("slope requires gcd(n,k) = 1, got " + n.str() + "/" + k.str());
  return Slope{n, k};
}

NCF::NCF(std::vector<BigInt> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw PreconditionError("continued fraction must have g >= 1");
  for (const auto& e : entries_)
    if (e < 2) throw PreconditionError("continued fraction entries must be >= 2, got " + e.str());
}

NCF NCF::of(std::initializer_list<long long> entries) {
  std::vector<BigInt> v;
  for (long long e : entries) v.emplace_back(e);
  return NCF(std::move(v));
}

std::vector<int> NCF::small_entries() const {
  std::vector<int> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) {
    if (e > 1'000'000) throw PreconditionError("entry too large for numeric use: " + e.str());
    out.push_back(static_cast<int>(e));
  }
  return out;
}

NCF NCF::reversed() const {
  std::vector<BigInt> v(entries_.rbegin(), entries_.rend());
  return NCF(std::move(v));
}

NCF expand(const Slope& s) {
  BigInt n = s.n, k = s.k;
  std::vector<BigInt> out;
  while (k != 0) {
    BigInt q = n / k;
    if (q * k != n) q += 1;  // ceiling, n and k positive
    out.push_back(q);
    BigInt next = q * k - n;
    n = k;
    k = next;
  }
  return NCF(std::move(out));
}

BigInt d(std::span<const BigInt> entries) {
  // d_j = n_j d_{j-1} - d_{j-2}, d_{-1} = 0, d_0 = 1
  BigInt prev = 0, cur = 1;
  for (const auto& x : entries) {
    BigInt next = x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

BigInt d(std::initializer_list<long long> entries) {
  std::vector<BigInt> v(entries.begin(), entries.end());
  return d(std::span<const BigInt>(v));
}

Slope evaluate(const NCF& f) {
  std::span<const BigInt> e(f.entries());
  BigInt n = d(e);
  BigInt k = d(e.subspan(1));
  return Slope::make(n, k);
}

SlopeSequences sequences(const NCF& f) {
  const auto& e = f.entries();
  const std::size_t g = e.size();
  SlopeSequences s;
  s.k_seq.assign(g + 2, 0);
  s.l_seq.assign(g + 2, 0);
  // k_i = d(n_{i+1},...,n_g): fill backwards with k_{g+1} = 0, k_g = 1.
  s.k_seq[g + 1] = 0;
  s.k_seq[g] = 1;
  for (std::size_t i = g; i >= 1; --i) s.k_seq[i - 1] = e[i - 1] * s.k_seq[i] - s.k_seq[i + 1];
  // l_i = d(n_{i-1},...,n_1): l_0 = 0, l_1 = 1.
  s.l_seq[0] = 0;
  s.l_seq[1] = 1;
  for (std::size_t i = 1; i <= g; ++i) s.l_seq[i + 1] = e[i - 1] * s.l_seq[i] - s.l_seq[i - 1];
  s.k_prime = s.l_seq[g];
  return s;
}

BigInt combinatorial_n(const NCF& f) {
  // Subsequences i_1 < ... < i_j with i_1 odd, consecutive gaps odd and g - i_j even.
  // Each skipped block of 2t indices contributes (-1)^t.
  const auto& e = f.entries();
  const std::size_t g = e.size();
  auto sign = [](std::size_t skipped) { return (skipped / 2) % 2 == 0 ? 1 : -1; };
  std::vector<BigInt> ending(g + 1, 0);  // 1-based
  for (std::size_t i = 1; i <= g; ++i) {
    BigInt acc = 0;
    if (i % 2 == 1) acc += sign(i - 1);
    for (std::size_t p = (i % 2 == 0) ? 1 : 2; p < i; p += 2) {
      if (ending[p] == 0) continue;
      if (sign(i - p - 1) > 0) acc += ending[p]; else acc -= ending[p];
    }
    ending[i] = e[i - 1] * acc;
  }
  BigInt total = 0;
  if (g % 2 == 0) total += sign(g);
  for (std::size_t i = g % 2 == 0 ? 2 : 1; i <= g; i += 2) {
    if (sign(g - i) > 0) total += ending[i]; else total -= ending[i];
  }
  return total;
}

SL2Bookkeeping slope_via_sl2(const NCF& f) {
  using M2 = std::array<BigInt, 4>;  // row-major
  auto mul = [](const M2& a, const M2& b) {
    return M2{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
              a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
  };
  const M2 S{0, -1, 1, 0};
  M2 m{1, 0, 0, 1};
  for (const auto& x : f.entries()) {
    m = mul(m, M2{1, x, 0, 1});
    m = mul(m, S);
  }
  // m * (1,0)^T
  SL2Bookkeeping out;
  out.degree = m[0];
  out.rank = m[2];
  out.slope = Slope::make(out.degree, out.rank);
  return out;
}

}  // namespace qnk
