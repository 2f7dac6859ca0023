#pragma once

#include "qnk/contfrac.hpp"
#include "qnk/numeric.hpp"
#include "qnk/theta1.hpp"

#include <memory>
#include <vector>

namespace qnk {

using IVector = std::vector<long long>;

/// Parameters of Theta_{n/k}: c = n/2 + m*eta with integer m.
struct ThetaSpaceParams {
  NCF ncf;
  IVector m;
  LatticeParams lattice;
  int trunc_radius = 0;          // 0 selects the default
  double coverage = 2.0;         // raw series valid for |Im z_i| <= coverage * Im(eta)

  /// m_i = [i = 1] - 1.
  static ThetaSpaceParams standard(const NCF& f, const LatticeParams& lattice = {});
  CVector c() const;
};

/// Precomputed data of Theta_{n/k}: coset seeds, truncated expansions and operator constants.
class ThetaSpace {
 public:
  static std::shared_ptr<const ThetaSpace> create(const ThetaSpaceParams& p);

  const ThetaSpaceParams& params() const { return params_; }
  int n() const { return n_; }
  int g() const { return g_; }
  const std::vector<int>& entries() const { return entries_; }
  const IVector& k_vec() const { return kv_; }  // (k_1..k_g)
  const IVector& l_vec() const { return lv_; }  // (l_1..l_g)
  long long k() const { return kv_[0]; }
  long long k_prime() const { return lv_.back(); }
  const CVector& c() const { return c_; }
  cplx C() const { return C_; }
  cplx C_prime() const { return Cp_; }
  int trunc_radius() const { return radius_; }
  double lambda_min() const { return lambda_min_; }

  const std::vector<IVector>& coset_seeds() const { return seeds_; }
  /// beta.k mod n, which identifies the coset of beta.
  long long coset_key(const IVector& beta) const;
  std::size_t coset_index(const IVector& beta) const;
  /// beta = seed_j + D m.
  IVector coset_offset(std::size_t j, const IVector& beta) const;
  /// a_{seed_j + D m} / a_{seed_j}.
  cplx relative_coefficient(std::size_t j, const IVector& m) const;
  /// Stored support of coset j: pairs (beta, a_beta / a_seed).
  std::vector<std::pair<IVector, cplx>> support(std::size_t j) const;

  /// Values of the n coset functions at z via the truncated series (no argument reduction).
  CVector coset_values_series(const CVector& z) const;
  /// Same, after reducing z modulo the lattice and applying the quasi-periodicity factor.
  CVector coset_values(const CVector& z) const;
  /// Relative truncation bound of the series at z (relative to the largest term).
  double tail_bound(const CVector& z) const;
  /// Factor F with f(x + p eta) = F f(x) for every f in the space.
  cplx quasi_period_factor(const CVector& x, const IVector& p) const;

 private:
  explicit ThetaSpace(const ThetaSpaceParams& p);
  double gaussian_shift(const CVector& z) const;

  ThetaSpaceParams params_;
  int n_ = 0, g_ = 0;
  std::vector<int> entries_;
  IVector kv_, lv_;
  std::vector<std::vector<long long>> dinv_num_;  // D^{-1} = dinv_num_ / n
  CVector c_;
  cplx C_, Cp_;
  double lambda_min_ = 0, radius_gauss_ = 0, center_norm_ = 0, coverage_norm_ = 0;
  int radius_ = 0;
  std::vector<IVector> seeds_;
  std::vector<std::size_t> key_to_coset_;

  struct Segment {
    std::vector<double> coef_re, coef_im;
    std::vector<std::int32_t> offsets;  // g x terms, dimension-major
    std::size_t terms = 0;
  };
  std::vector<Segment> segments_;
  std::vector<long long> lo_, hi_, base_;
  std::size_t table_size_ = 0;
};

using ThetaSpacePtr = std::shared_ptr<const ThetaSpace>;

/// Element of Theta_{n/k}, stored by its coefficients at the n coset seeds.
class GLatticeFn {
 public:
  GLatticeFn(ThetaSpacePtr space, CVector seed_coeffs);

  const ThetaSpacePtr& space() const { return space_; }
  const CVector& seed_coeffs() const { return a_; }
  /// All stored coefficients (beta, a_beta).
  std::vector<std::pair<IVector, cplx>> coefficients() const;

  GLatticeFn operator+(const GLatticeFn& o) const;
  GLatticeFn operator*(cplx s) const;

 private:
  ThetaSpacePtr space_;
  CVector a_;
};

cplx evaluate(const GLatticeFn& f, const CVector& z);
/// Truncated series without argument reduction; throws if z lies outside the covered window.
cplx evaluate_series(const GLatticeFn& f, const CVector& z);

/// Coset functions with seed coefficient 1.
std::vector<GLatticeFn> basis_functions(const ThetaSpacePtr& space);
std::vector<IVector> coset_reps(const NCF& f);

enum class Op { S, T, Sp, Tp };
/// Exact action on Fourier data.
GLatticeFn apply_operator(Op op, const GLatticeFn& f);
/// (op . f)(z) from the defining formula, evaluating f at the shifted point.
cplx apply_operator_pointwise(Op op, const GLatticeFn& f, const CVector& z);

struct WBasis {
  ThetaSpacePtr space;
  std::vector<GLatticeFn> w;
  std::vector<std::size_t> coset_of;  // coset carrying w_alpha
  cplx c_1n;                          // S' w_a = c_1n e(a/n) w_a
  cplx c_etan;                        // T' w_a = c_etan w_{a+k'}
  double scalar_spread = 0;           // max deviation of the per-alpha scalars

  CVector values(const CVector& z) const;
};
WBasis w_basis(const ThetaSpacePtr& space);

/// h(z) = prod e(m_i z_i) theta(z_i)^{deg D_i} prod_{i<g} e(z_{i+1}) theta(z_i - z_{i+1}).
cplx h_section(const ThetaSpaceParams& p, const CVector& z);

/// Projective point (w_0(z),...,w_{n-1}(z)) with largest entry 1.
CVector phi(const WBasis& wb, const CVector& z);

}  // namespace qnk
