#include "qnk/eqa.hpp"

#include "qnk/bigint.hpp"

#include <algorithm>
#include <cmath>

namespace qnk {
namespace {

long long mod(long long a, long long n) { return ((a % n) + n) % n; }

// theta(x), rejecting values below margin * |theta(x + 0.1)|.
cplx guarded_theta(cplx x, const LatticeParams& lp, double margin, const char* what) {
  cplx v = theta(x, lp).value;
  if (margin > 0 && std::abs(v) < margin * std::abs(theta(x + 0.1, lp).value))
    throw InadmissibleSample(std::string("denominator ") + what + " is too close to zero");
  return v;
}

cplx guarded_theta_alpha(long long a, int n, cplx x, const LatticeParams& lp, double margin, const char* what) {
  cplx v = theta_alpha(mod(a, n), n, x, lp).value;
  if (margin > 0 && std::abs(v) < margin * std::abs(theta_alpha(mod(a, n), n, x + 0.1, lp).value))
    throw InadmissibleSample(std::string("denominator ") + what + " is too close to zero");
  return v;
}

// theta_a(0), exactly zero when a = 0 mod n.
cplx theta_alpha_at_zero(long long a, int n, const LatticeParams& lp) {
  if (mod(a, n) == 0) return 0;
  return theta_alpha(mod(a, n), n, 0.0, lp).value;
}

Residual finish(cplx sum, double max_term) {
  Residual r;
  r.max_term = max_term;
  if (max_term == 0) {
    r.degenerate = true;
    return r;
  }
  r.value = std::abs(sum) / max_term;
  return r;
}

}  // namespace

cplx RelationSet::coefficient(long long i, long long j, long long r) const {
  return coeffs[mod(i, n) * n + mod(j, n)][mod(r, n)];
}

RelationSet relations(int n, int k, cplx tau, const LatticeParams& lattice) {
  lattice.validate();
  Slope::make(n, k);
  if (in_torsion_lattice(tau, lattice.eta, n))
    throw PreconditionError("tau lies in (1/n)Lambda: theta_{kr}(tau) vanishes for some r");
  RelationSet rs{n, k, tau, lattice, {}};
  // c_{ij,r} depends on (i,j) only through j - i
  std::vector<CVector> by_diff(n, CVector(n));
  CVector num(n), den_minus(n), den_plus(n);
  for (int a = 0; a < n; ++a) {
    num[a] = theta_alpha_at_zero(a, n, lattice);
    den_minus[a] = theta_alpha(a, n, -tau, lattice).value;
    den_plus[a] = theta_alpha(a, n, tau, lattice).value;
  }
  for (int dlt = 0; dlt < n; ++dlt)
    for (int r = 0; r < n; ++r) {
      cplx den = den_minus[mod(dlt - r, n)] * den_plus[mod(static_cast<long long>(k) * r, n)];
      if (den == cplx(0)) throw PreconditionError("relation coefficient has a zero denominator");
      by_diff[dlt][r] = num[mod(dlt + static_cast<long long>(k - 1) * r, n)] / den;
    }
  rs.coeffs.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rs.coeffs[i * n + j] = by_diff[mod(j - i, n)];
  return rs;
}

CVector sigma_shift(const ThetaSpace& space, cplx tau) {
  CVector t(space.g());
  for (int i = 0; i < space.g(); ++i)
    t[i] = static_cast<double>(space.k_vec()[i] + space.l_vec()[i] - space.n()) * tau;
  return t;
}

namespace {

Residual relation_on_rows(const RelationSet& rs, const CVector& left, const CVector& right, long long alpha,
                          long long beta) {
  const int n = rs.n;
  cplx sum = 0;
  double mx = 0;
  for (int r = 0; r < n; ++r) {
    cplx term = rs.coefficient(alpha, beta, r) * left[mod(beta - r, n)] * right[mod(alpha + r, n)];
    sum += term;
    mx = std::max(mx, std::abs(term));
  }
  return finish(sum, mx);
}

void check_match(const RelationSet& rs, const WBasis& wb) {
  if (rs.n != wb.space->n() || rs.k != wb.space->k())
    throw PreconditionError("relation set and theta space have different (n,k)");
}

}  // namespace

Residual graph_vanishing_residual(const RelationSet& rs, const WBasis& wb, const CVector& y, long long alpha,
                                  long long beta) {
  check_match(rs, wb);
  CVector t = sigma_shift(*wb.space, rs.tau);
  CVector sy = y;
  for (std::size_t i = 0; i < sy.size(); ++i) sy[i] += t[i];
  return relation_on_rows(rs, wb.values(y), wb.values(sy), alpha, beta);
}

Residual odesskii_identity_residual(const WBasis& wb, cplx u, cplx v, const CVector& y, const CVector& z,
                                    long long alpha, long long beta, double margin) {
  const ThetaSpace& sp = *wb.space;
  const LatticeParams& lp = sp.params().lattice;
  const int n = sp.n(), g = sp.g();
  const double nn = n;
  const long long k = sp.k();
  const IVector& kv = sp.k_vec();
  const IVector& lv = sp.l_vec();
  if (static_cast<int>(y.size()) != g || static_cast<int>(z.size()) != g)
    throw PreconditionError("points have wrong dimension");
  alpha = mod(alpha, n);
  beta = mod(beta, n);

  // mixed argument: first t coordinates from a, the rest from b, shifted by shift*s
  auto mixed = [&](const CVector& a, const CVector& b, int t, const IVector& shift, cplx s) {
    CVector out(g);
    for (int i = 0; i < g; ++i) out[i] = (i < t ? a[i] : b[i]) + static_cast<double>(shift[i]) * s;
    return out;
  };

  double mx = 0;
  cplx lhs = 0;
  auto add_lhs = [&](cplx term) {
    lhs += term;
    mx = std::max(mx, std::abs(term));
  };
  {
    cplx c = theta(-nn * u + y[0] - z[0], lp).value /
             (guarded_theta(-nn * u, lp, margin, "theta(-nu)") * guarded_theta(y[0] - z[0], lp, margin, "theta(y1-z1)"));
    add_lhs(c * wb.values(mixed(z, y, 0, kv, u))[alpha] * wb.values(mixed(y, z, 0, lv, v))[beta]);
  }
  for (int t = 1; t <= g - 1; ++t) {
    cplx a = z[t - 1] - y[t - 1], b = y[t] - z[t];
    cplx c = theta(a + b, lp).value /
             (guarded_theta(a, lp, margin, "theta(z_t-y_t)") * guarded_theta(b, lp, margin, "theta(y_{t+1}-z_{t+1})"));
    add_lhs(c * wb.values(mixed(z, y, t, kv, u))[alpha] * wb.values(mixed(y, z, t, lv, v))[beta]);
  }
  {
    cplx c = theta(z[g - 1] - y[g - 1] + nn * v, lp).value /
             (guarded_theta(z[g - 1] - y[g - 1], lp, margin, "theta(z_g-y_g)") * guarded_theta(nn * v, lp, margin, "theta(nv)"));
    add_lhs(c * wb.values(mixed(z, y, g, kv, u))[alpha] * wb.values(mixed(y, z, g, lv, v))[beta]);
  }

  cplx pref = 1.0 / nn;
  for (int j = 1; j < n; ++j) pref *= theta(j / nn, lp).value;
  CVector wy = wb.values(y);
  CVector zz(g);
  for (int i = 0; i < g; ++i) zz[i] = z[i] + static_cast<double>(kv[i]) * u + static_cast<double>(lv[i]) * v;
  CVector wz = wb.values(zz);
  cplx rhs = 0;
  for (int r = 0; r < n; ++r) {
    cplx c = theta_alpha(mod(beta - alpha + r * (k - 1), n), n, -u + v, lp).value /
             (guarded_theta_alpha(beta - alpha - r, n, -u, lp, margin, "theta_{b-a-r}(-u)") *
              guarded_theta_alpha(r * k, n, v, lp, margin, "theta_{rk}(v)"));
    cplx term = pref * c * wy[mod(beta - r, n)] * wz[mod(alpha + r, n)];
    rhs += term;
    mx = std::max(mx, std::abs(term));
  }
  return finish(lhs - rhs, mx);
}

Residual degenerate_identities_residual(int n, cplx tau, cplx y, long long alpha, long long beta,
                                        const LatticeParams& lp, double margin) {
  if (in_torsion_lattice(tau, lp.eta, n)) throw PreconditionError("tau lies in (1/n)Lambda");
  cplx num = theta_alpha_at_zero(beta - alpha, n, lp);
  cplx sum = 0;
  double mx = 0;
  for (int r = 0; r < n; ++r) {
    cplx den = guarded_theta_alpha(beta - alpha - r, n, -tau, lp, margin, "theta_{b-a-r}(-tau)") *
               guarded_theta_alpha(r, n, tau, lp, margin, "theta_r(tau)");
    cplx term = num / den * theta_alpha(mod(beta - r, n), n, y, lp).value *
                theta_alpha(mod(alpha + r, n), n, y + (2.0 - n) * tau, lp).value;
    sum += term;
    mx = std::max(mx, std::abs(term));
  }
  return finish(sum, mx);
}

Residual k1_identity_residual(int n, cplx tau, cplx y, cplx z, long long alpha, long long beta,
                              const LatticeParams& lp, double margin) {
  if (in_torsion_lattice(tau, lp.eta, n)) throw PreconditionError("tau lies in (1/n)Lambda");
  const double nn = n;
  auto th = [&](long long a, cplx x) { return theta_alpha(mod(a, n), n, x, lp).value; };
  cplx c = theta(-nn * tau + y - z, lp).value /
           (guarded_theta(-nn * tau, lp, margin, "theta(-n tau)") * guarded_theta(y - z, lp, margin, "theta(y-z)"));
  cplx t1 = c * th(alpha, y + tau) * th(beta, z + tau);
  cplx t2 = -c * th(alpha, z + tau) * th(beta, y + tau);
  double mx = std::max(std::abs(t1), std::abs(t2));
  cplx pref = 1.0 / nn;
  for (int j = 1; j < n; ++j) pref *= theta(j / nn, lp).value;
  cplx num = theta_alpha_at_zero(beta - alpha, n, lp);
  cplx rhs = 0;
  for (int r = 0; r < n; ++r) {
    cplx den = guarded_theta_alpha(beta - alpha - r, n, -tau, lp, margin, "theta_{b-a-r}(-tau)") *
               guarded_theta_alpha(r, n, tau, lp, margin, "theta_r(tau)");
    cplx term = pref * num / den * th(beta - r, y) * th(alpha + r, z + 2.0 * tau);
    rhs += term;
    mx = std::max(mx, std::abs(term));
  }
  return finish(t1 + t2 - rhs, mx);
}

PointModuleTable point_module(const RelationSet& rs, const WBasis& wb, const CVector& z, int depth) {
  check_match(rs, wb);
  if (depth < 0) throw PreconditionError("depth must be >= 0");
  const int n = rs.n;
  PointModuleTable pm{z, depth, {}, 0, 0};
  CVector t = sigma_shift(*wb.space, rs.tau);
  for (int i = 0; i <= depth; ++i) {
    CVector zi = z;
    for (std::size_t c = 0; c < zi.size(); ++c) zi[c] -= static_cast<double>(i) * t[c];
    CVector row = wb.values(zi);
    if (!normalize_projective(row)) throw NumericalError("point module row " + std::to_string(i) + " is zero");
    pm.rows.push_back(std::move(row));
  }
  for (int i = 0; i + 1 <= depth; ++i)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Residual r = relation_on_rows(rs, pm.rows[i + 1], pm.rows[i], a, b);
        if (!r.degenerate) pm.max_residual = std::max(pm.max_residual, r.value);
      }
  pm.min_row_distance = depth > 0 ? 1.0 : 0.0;
  for (int i = 0; i <= depth; ++i)
    for (int j = i + 1; j <= depth; ++j)
      pm.min_row_distance = std::min(pm.min_row_distance, chordal_distance(pm.rows[i], pm.rows[j]));
  return pm;
}

std::vector<bool> commutativity_obstruction(const NCF& f, const EPoint& tau) {
  Slope s = evaluate(f);
  SlopeSequences seq = sequences(f);
  std::vector<bool> out;
  for (std::size_t i = 1; i <= f.g(); ++i) out.push_back(tau.scaled(s.n - seq.k_seq[i] - seq.l_seq[i]).is_zero());
  return out;
}

std::vector<bool> commutativity_obstruction(const NCF& f, cplx tau, const LatticeParams& lattice, double tol) {
  Slope s = evaluate(f);
  SlopeSequences seq = sequences(f);
  std::vector<bool> out;
  for (std::size_t i = 1; i <= f.g(); ++i) {
    double c = BigInt(s.n - seq.k_seq[i] - seq.l_seq[i]).convert_to<double>();
    out.push_back(in_torsion_lattice(c * tau, lattice.eta, 1, tol));
  }
  return out;
}

cplx random_point(std::mt19937_64& rng, cplx eta) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  double a = u(rng), b = u(rng);
  return a + b * eta;
}

CVector random_vector(std::mt19937_64& rng, cplx eta, std::size_t g) {
  CVector v(g);
  for (auto& x : v) x = random_point(rng, eta);
  return v;
}

namespace {

template <class Body>
VerificationReport run_samples(const char* name, int n, int k, const SampleConfig& cfg, Body&& body) {
  VerificationReport rep;
  rep.identity = name;
  rep.n = n;
  rep.k = k;
  rep.tolerance = cfg.tolerance;
  std::mt19937_64 rng(cfg.seed);
  double total = 0;
  int attempts = 0;
  while (rep.samples < cfg.samples) {
    if (++attempts > 50 * cfg.samples + 50) throw NumericalError("too many inadmissible samples");
    try {
      Residual r = body(rng);
      if (r.degenerate) {
        ++rep.degenerate;
        continue;
      }
      ++rep.samples;
      total += r.value;
      rep.max_residual = std::max(rep.max_residual, r.value);
    } catch (const InadmissibleSample&) {
      ++rep.rejected;
    }
  }
  rep.mean_residual = rep.samples ? total / rep.samples : 0;
  return rep;
}

// random pair alpha != beta in Z_n
std::pair<long long, long long> distinct_pair(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<long long> d(0, n - 1);
  long long a = d(rng), b = d(rng);
  while (n > 1 && b == a) b = d(rng);
  return {a, b};
}

cplx sample_tau(std::mt19937_64& rng, const SampleConfig& cfg) {
  if (cfg.lattice.tau != cplx(0)) return cfg.lattice.tau;
  return random_point(rng, cfg.lattice.eta);
}

}  // namespace

VerificationReport verify_odesskii(int n, int k, const SampleConfig& cfg) {
  NCF f = expand(Slope::make(n, k));
  WBasis wb = w_basis(ThetaSpace::create(ThetaSpaceParams::standard(f, cfg.lattice)));
  const cplx eta = cfg.lattice.eta;
  return run_samples("odesskii", n, k, cfg, [&](std::mt19937_64& rng) {
    cplx u = random_point(rng, eta), v = random_point(rng, eta);
    CVector y = random_vector(rng, eta, f.g()), z = random_vector(rng, eta, f.g());
    std::uniform_int_distribution<long long> d(0, n - 1);
    long long a = d(rng), b = d(rng);
    return odesskii_identity_residual(wb, u, v, y, z, a, b);
  });
}

VerificationReport verify_graph_vanishing(int n, int k, const SampleConfig& cfg) {
  NCF f = expand(Slope::make(n, k));
  WBasis wb = w_basis(ThetaSpace::create(ThetaSpaceParams::standard(f, cfg.lattice)));
  return run_samples("graph", n, k, cfg, [&](std::mt19937_64& rng) {
    cplx tau = sample_tau(rng, cfg);
    RelationSet rs = relations(n, k, tau, cfg.lattice);
    CVector y = random_vector(rng, cfg.lattice.eta, f.g());
    std::uniform_int_distribution<long long> d(0, n - 1);
    long long a = d(rng), b = d(rng);
    return graph_vanishing_residual(rs, wb, y, a, b);
  });
}

VerificationReport verify_degenerate(int n, const SampleConfig& cfg) {
  return run_samples("degenerate", n, 1, cfg, [&](std::mt19937_64& rng) {
    cplx tau = sample_tau(rng, cfg);
    cplx y = random_point(rng, cfg.lattice.eta);
    auto [a, b] = distinct_pair(rng, n);
    return degenerate_identities_residual(n, tau, y, a, b, cfg.lattice);
  });
}

VerificationReport verify_k1_identity(int n, const SampleConfig& cfg) {
  return run_samples("k1-identity", n, 1, cfg, [&](std::mt19937_64& rng) {
    cplx tau = sample_tau(rng, cfg);
    cplx y = random_point(rng, cfg.lattice.eta), z = random_point(rng, cfg.lattice.eta);
    auto [a, b] = distinct_pair(rng, n);
    return k1_identity_residual(n, tau, y, z, a, b, cfg.lattice);
  });
}

VerificationReport verify_point_modules(int n, int k, int depth, const SampleConfig& cfg) {
  NCF f = expand(Slope::make(n, k));
  WBasis wb = w_basis(ThetaSpace::create(ThetaSpaceParams::standard(f, cfg.lattice)));
  return run_samples("point-module", n, k, cfg, [&](std::mt19937_64& rng) {
    cplx tau = sample_tau(rng, cfg);
    RelationSet rs = relations(n, k, tau, cfg.lattice);
    CVector z = random_vector(rng, cfg.lattice.eta, f.g());
    PointModuleTable pm = point_module(rs, wb, z, depth);
    Residual r;
    r.value = pm.max_residual;
    r.max_term = 1;
    return r;
  });
}

}  // namespace qnk
