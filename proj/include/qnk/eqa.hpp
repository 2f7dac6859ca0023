#pragma once

#include "qnk/contfrac.hpp"
#include "qnk/epoint.hpp"
#include "qnk/thetag.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace qnk {

/// A sample was rejected because a denominator is too close to zero.
class InadmissibleSample : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Coefficients c_{ij,r} of the n^2 quadratic relations R_ij = sum_r c_{ij,r} x_{j-r} x_{i+r}.
struct RelationSet {
  int n = 0;
  int k = 0;
  cplx tau;
  LatticeParams lattice;
  std::vector<CVector> coeffs;  // index i*n + j, then r

  cplx coefficient(long long i, long long j, long long r) const;
};

RelationSet relations(int n, int k, cplx tau, const LatticeParams& lattice);

struct Residual {
  double value = 0;     // |sum| / largest term
  double max_term = 0;
  bool degenerate = false;  // every term vanishes identically
};

/// sigma(y) = y + (k + l - n) tau, componentwise.
CVector sigma_shift(const ThetaSpace& space, cplx tau);

Residual graph_vanishing_residual(const RelationSet& rs, const WBasis& wb, const CVector& y, long long alpha,
                                  long long beta);

/// Residual of the (g+1)-term identity. Denominators below margin * local scale raise InadmissibleSample.
Residual odesskii_identity_residual(const WBasis& wb, cplx u, cplx v, const CVector& y, const CVector& z,
                                    long long alpha, long long beta, double margin = 1e-3);

/// sum_r theta_{b-a}(0) / (theta_{b-a-r}(-tau) theta_r(tau)) theta_{b-r}(y) theta_{a+r}(y + (2-n) tau).
Residual degenerate_identities_residual(int n, cplx tau, cplx y, long long alpha, long long beta,
                                        const LatticeParams& lattice, double margin = 1e-3);

/// Two-sided k = 1 identity in one variable, antisymmetrized left side against the r-sum.
Residual k1_identity_residual(int n, cplx tau, cplx y, cplx z, long long alpha, long long beta,
                              const LatticeParams& lattice, double margin = 1e-3);

struct PointModuleTable {
  CVector z;
  int depth = 0;
  std::vector<CVector> rows;  // rows[i][alpha] = w_alpha(sigma^{-i}(z)), largest entry 1
  double max_residual = 0;    // over relations acting on v_0..v_{depth-1}
  double min_row_distance = 0;
};

PointModuleTable point_module(const RelationSet& rs, const WBasis& wb, const CVector& z, int depth);

/// For each i = 1..g: whether (n - k_i - l_i) tau = 0 in E. Entry 0 is the headline (n-k-1) tau = 0.
std::vector<bool> commutativity_obstruction(const NCF& f, const EPoint& tau);
std::vector<bool> commutativity_obstruction(const NCF& f, cplx tau, const LatticeParams& lattice, double tol = 1e-9);

struct SampleConfig {
  LatticeParams lattice;
  double tolerance = 1e-8;
  std::uint64_t seed = 20240601;
  int samples = 20;
};

struct VerificationReport {
  std::string identity;
  int n = 0;
  int k = 0;
  int samples = 0;
  int rejected = 0;
  int degenerate = 0;
  double max_residual = 0;
  double mean_residual = 0;
  double tolerance = 0;
  bool passed() const { return max_residual < tolerance; }
};

/// Uniform point a + b eta, a, b in [-1/2, 1/2).
cplx random_point(std::mt19937_64& rng, cplx eta);
CVector random_vector(std::mt19937_64& rng, cplx eta, std::size_t g);

VerificationReport verify_odesskii(int n, int k, const SampleConfig& cfg);
VerificationReport verify_graph_vanishing(int n, int k, const SampleConfig& cfg);
VerificationReport verify_degenerate(int n, const SampleConfig& cfg);
VerificationReport verify_k1_identity(int n, const SampleConfig& cfg);
VerificationReport verify_point_modules(int n, int k, int depth, const SampleConfig& cfg);

}  // namespace qnk
