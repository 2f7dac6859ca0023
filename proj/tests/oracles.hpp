#pragma once
// Independent reference computations used only by the tests.

#include "qnk/bigint.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <complex>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using BigInt = qnk::BigInt;
using Rational = qnk::Rational;
using hpc = boost::multiprecision::cpp_complex_50;
using hpf = boost::multiprecision::cpp_bin_float_50;

/// Determinant by cofactor expansion along the first row.
inline BigInt laplace_det(const std::vector<std::vector<BigInt>>& m) {
  const std::size_t g = m.size();
  if (g == 0) return 1;
  if (g == 1) return m[0][0];
  BigInt total = 0;
  for (std::size_t c = 0; c < g; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<BigInt>> minor;
    for (std::size_t r = 1; r < g; ++r) {
      std::vector<BigInt> row;
      for (std::size_t cc = 0; cc < g; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(row);
    }
    BigInt t = m[0][c] * laplace_det(minor);
    total += (c % 2 == 0) ? t : BigInt(-t);
  }
  return total;
}

inline std::vector<std::vector<BigInt>> tridiag(const std::vector<long long>& e, long long off) {
  std::vector<std::vector<BigInt>> m(e.size(), std::vector<BigInt>(e.size(), 0));
  for (std::size_t i = 0; i < e.size(); ++i) {
    m[i][i] = e[i];
    if (i + 1 < e.size()) m[i][i + 1] = m[i + 1][i] = off;
  }
  return m;
}

/// Signed sum over parity-alternating subsequences, enumerated over all subsets.
inline BigInt combinatorial_brute(const std::vector<long long>& e) {
  const std::size_t g = e.size();
  BigInt total = 0;
  for (unsigned long mask = 0; mask < (1ul << g); ++mask) {
    std::vector<std::size_t> idx;  // 1-based
    for (std::size_t i = 0; i < g; ++i)
      if (mask >> i & 1) idx.push_back(i + 1);
    bool ok;
    if (idx.empty()) {
      ok = g % 2 == 0;
    } else {
      ok = idx.front() % 2 == 1 && idx.back() % 2 == g % 2;
      for (std::size_t t = 1; t < idx.size(); ++t)
        if (idx[t] % 2 == idx[t - 1] % 2) ok = false;
    }
    if (!ok) continue;
    BigInt prod = 1;
    for (auto i : idx) prod *= e[i - 1];
    long long half = static_cast<long long>(g - idx.size()) / 2;
    total += (half % 2 == 0) ? prod : BigInt(-prod);
  }
  return total;
}

/// Smith invariant factors from gcds of k x k minors.
inline std::vector<BigInt> smith_by_minors(const std::vector<std::vector<BigInt>>& m) {
  const std::size_t g = m.size();
  std::vector<BigInt> delta{1};
  for (std::size_t k = 1; k <= g; ++k) {
    BigInt gk = 0;
    std::vector<std::size_t> rows(k), cols(k);
    // iterate over all k-subsets of rows and columns
    std::vector<bool> rsel(g, false), csel(g, false);
    std::fill(rsel.begin(), rsel.begin() + k, true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + k, true);
      do {
        std::vector<std::vector<BigInt>> sub;
        for (std::size_t r = 0; r < g; ++r) {
          if (!rsel[r]) continue;
          std::vector<BigInt> row;
          for (std::size_t c = 0; c < g; ++c)
            if (csel[c]) row.push_back(m[r][c]);
          sub.push_back(row);
        }
        BigInt d = laplace_det(sub);
        gk = boost::multiprecision::gcd(gk, d < 0 ? BigInt(-d) : d);
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    delta.push_back(gk);
  }
  std::vector<BigInt> s;
  for (std::size_t k = 1; k <= g; ++k) s.push_back(delta[k - 1] == 0 ? BigInt(0) : BigInt(delta[k] / delta[k - 1]));
  return s;
}

inline hpc e_hp(const hpc& x) {
  const hpf two_pi = 2 * boost::math::constants::pi<hpf>();
  return exp(hpc(0, 1) * two_pi * x);
}

/// theta(z) = sum (-1)^m e(m z + m(m-1) eta/2), summed directly over |m| <= terms at 50 digits.
inline std::complex<double> theta_hp(std::complex<double> z, std::complex<double> eta, int terms = 60) {
  hpc zz(z.real(), z.imag()), ee(eta.real(), eta.imag());
  hpc sum = 0;
  for (int m = -terms; m <= terms; ++m) {
    hpc t = e_hp(hpc(m) * zz + hpc(m) * hpc(m - 1) * ee / 2);
    sum += (m % 2 == 0) ? t : hpc(-t);
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

/// theta_alpha from the product formula, every factor at 50 digits.
inline std::complex<double> theta_alpha_hp(long long a, int n, std::complex<double> z, std::complex<double> eta) {
  hpc zz(z.real(), z.imag()), ee(eta.real(), eta.imag());
  hpc prod = e_hp(hpc(a) * zz + hpc(a) / (2 * n) + hpc(a) * hpc(a - n) * ee / (2 * n));
  for (int j = 0; j < n; ++j) {
    hpc x = zz + hpc(j) / n + hpc(a) * ee / n;
    hpc s = 0;
    for (int m = -60; m <= 60; ++m) {
      hpc t = e_hp(hpc(m) * x + hpc(m) * hpc(m - 1) * ee / 2);
      s += (m % 2 == 0) ? t : hpc(-t);
    }
    prod *= s;
  }
  return {static_cast<double>(prod.real()), static_cast<double>(prod.imag())};
}

/// Number of classes of Z^g / D Z^g met by the box [-r, r]^g, with membership via D^{-1} over Q.
inline std::size_t coset_count_by_inverse(const std::vector<std::vector<Rational>>& dinv, int r,
                                          std::vector<std::vector<long long>>* reps = nullptr) {
  const std::size_t g = dinv.size();
  std::vector<std::vector<long long>> found;
  std::vector<long long> v(g, -r);
  auto same = [&](const std::vector<long long>& a, const std::vector<long long>& b) {
    for (std::size_t i = 0; i < g; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < g; ++j) s += dinv[i][j] * Rational(a[j] - b[j]);
      if (boost::multiprecision::denominator(s) != 1) return false;
    }
    return true;
  };
  while (true) {
    bool fresh = true;
    for (const auto& f : found)
      if (same(f, v)) {
        fresh = false;
        break;
      }
    if (fresh) found.push_back(v);
    std::size_t i = 0;
    while (i < g && v[i] == r) v[i++] = -r;
    if (i == g) break;
    ++v[i];
  }
  if (reps) *reps = found;
  return found.size();
}

/// |ker| of (z_a) -> sum (i_a/d) z_a on prod E[i_a], enumerating both real coordinates of every point.
inline long long etale_kernel_brute(const std::vector<long long>& sizes) {
  long long d = 0;
  for (auto s : sizes) d = std::gcd(d, s);
  std::vector<long long> radix;
  for (auto s : sizes) {
    radix.push_back(s);
    radix.push_back(s);
  }
  std::vector<long long> v(radix.size(), 0);
  long long count = 0;
  while (true) {
    Rational x = 0, y = 0;
    for (std::size_t a = 0; a < sizes.size(); ++a) {
      Rational w = Rational(sizes[a] / d);
      x += w * Rational(v[2 * a], sizes[a]);
      y += w * Rational(v[2 * a + 1], sizes[a]);
    }
    if (boost::multiprecision::denominator(x) == 1 && boost::multiprecision::denominator(y) == 1) ++count;
    std::size_t i = 0;
    while (i < v.size() && v[i] == radix[i] - 1) v[i++] = 0;
    if (i == v.size()) break;
    ++v[i];
  }
  return count;
}

}  // namespace oracle
