#pragma once

#include "qnk/contfrac.hpp"
#include "qnk/epoint.hpp"
#include "qnk/thetag.hpp"
#include "qnk/zlinalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qnk {

struct SigmaGroup {
  std::vector<std::size_t> generator_indices;  // 1-based i with n_i = 2
  std::vector<std::size_t> run_lengths;        // maximal runs of consecutive 2's
  BigInt order;                                // prod (t+1)!
  bool trivial() const { return generator_indices.empty(); }
};
SigmaGroup sigma_group(const NCF& f);

/// Orbits of Sigma on {1,...,g+1}, 1-based.
struct OrbitPartition {
  std::size_t points = 0;  // g + 1
  std::vector<std::size_t> fixed;              // J
  std::vector<std::vector<std::size_t>> orbits;  // I_1..I_s, sizes >= 2
};
OrbitPartition orbit_partition(const NCF& f);

enum class BundleTag { Eg, SgE, Pg, Generic };
std::string tag_name(BundleTag t);

struct BundleStructure {
  std::size_t base_dim = 0;
  std::vector<std::size_t> fibers;  // projective dimensions i_a - 1
  BundleTag tag = BundleTag::Generic;
  bool very_ample = false;
};
BundleStructure bundle_structure(const NCF& f);

/// |E[i_1] x ... x E[i_s]| when J is nonempty, |ker theta| otherwise.
BigInt etale_cover_group_order(const OrbitPartition& p);

// Maps between E^g and E^{g+1}. Templates cover integers, EPoint and complex lifts.
template <class T>
std::vector<T> weyl_epsilon(const std::vector<T>& z) {
  std::vector<T> out;
  out.reserve(z.size() + 1);
  T prev{};
  for (const T& x : z) {
    out.push_back(x - prev);
    prev = x;
  }
  out.push_back(T{} - prev);
  return out;
}

template <class T>
std::vector<T> weyl_omega(const std::vector<T>& z) {
  if (z.empty()) throw PreconditionError("omega needs at least one coordinate");
  std::vector<T> out;
  T acc{};
  for (std::size_t i = 0; i + 1 < z.size(); ++i) {
    acc = acc + z[i];
    out.push_back(acc);
  }
  return out;
}

template <class T>
T weyl_sum(const std::vector<T>& z) {
  T acc{};
  for (const T& x : z) acc = acc + x;
  return acc;
}

/// s_i(z): z_i -> z_{i-1} - z_i + z_{i+1} + lift, z_0 = z_{g+1} = 0; i is 1-based.
template <class T>
std::vector<T> weyl_s(std::size_t i, const std::vector<T>& z, const T& lift = T{}) {
  if (i < 1 || i > z.size()) throw PreconditionError("reflection index out of range");
  std::vector<T> out = z;
  T left = i >= 2 ? z[i - 2] : T{};
  T right = i < z.size() ? z[i] : T{};
  out[i - 1] = left - z[i - 1] + right + lift;
  return out;
}

/// s_i over C^g with the +eta lift that makes it act on Theta_{n/k}.
CVector weyl_s_lifted(std::size_t i, const CVector& z, cplx eta);

struct SigmaTranslation {
  CVector t;                              // (k_i + l_i - n) tau
  std::vector<std::size_t> checked;       // j with n_j = 2
  bool certificate = true;                // 2(k_j+l_j) = k_{j-1}+l_{j-1}+k_{j+1}+l_{j+1} at every checked j
};
SigmaTranslation sigma_translation(const NCF& f, cplx tau);
/// Exact form over E-points.
EVector sigma_translation_exact(const NCF& f, const EPoint& tau);

struct PhiDescentReport {
  std::vector<std::size_t> reflections;  // j with n_j = 2
  bool exact_ok = true;
  int samples = 0;
  double max_distance = 0;               // chordal distance between Phi(z) and Phi(s_j z)
  std::vector<cplx> worst_sample;
  std::size_t worst_reflection = 0;
  bool vacuous() const { return reflections.empty(); }
};

/// Exact conditions for s_j, n_j = 2: e_j = d(E - A^{-T}) N^{-1}, A N A^T = N, k(A - E)/n integral.
bool phi_descent_exact(const NCF& f, std::size_t j);
/// Exact check at every j with n_j = 2, then the numeric comparison at random points.
PhiDescentReport phi_descent_check(const WBasis& wb, int samples, std::uint64_t seed);

/// Multiset image of z for [m,2,...,2] or [2,...,2,m], sorted; none for other shapes.
std::optional<EVector> symmetric_power_quotient(const NCF& f, const EVector& z);

struct CharVarReport {
  NCF ncf;
  SigmaGroup sigma;
  OrbitPartition partition;
  BundleStructure bundle;
  BigInt etale_order;
};
CharVarReport charvar_report(const NCF& f);

}  // namespace qnk
