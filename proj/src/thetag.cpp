#include "qnk/thetag.hpp"

#include "qnk/kernels.hpp"
#include "qnk/zlinalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

namespace qnk {

ThetaSpaceParams ThetaSpaceParams::standard(const NCF& f, const LatticeParams& lattice) {
  IVector m(f.g(), -1);
  m[0] = 0;
  return ThetaSpaceParams{f, m, lattice};
}

CVector ThetaSpaceParams::c() const {
  CVector out(ncf.g());
  for (std::size_t i = 0; i < ncf.g(); ++i)
    out[i] = 0.5 * static_cast<double>(ncf[i]) + static_cast<double>(m[i]) * lattice.eta;
  return out;
}

namespace {

using Eigen::MatrixXd;

MatrixXd dense_d(const std::vector<int>& e) {
  const int g = static_cast<int>(e.size());
  MatrixXd D = MatrixXd::Zero(g, g);
  for (int i = 0; i < g; ++i) {
    D(i, i) = e[i];
    if (i + 1 < g) D(i, i + 1) = D(i + 1, i) = -1;
  }
  return D;
}

long long quad_form(const std::vector<int>& e, const IVector& v) {
  long long q = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    q += e[i] * v[i] * v[i];
    if (i + 1 < e.size()) q -= 2 * v[i] * v[i + 1];
  }
  return q;
}

IVector d_times(const std::vector<int>& e, const IVector& v) {
  const std::size_t g = e.size();
  IVector out(g);
  for (std::size_t i = 0; i < g; ++i) {
    out[i] = e[i] * v[i];
    if (i > 0) out[i] -= v[i - 1];
    if (i + 1 < g) out[i] -= v[i + 1];
  }
  return out;
}

long long dot(const IVector& a, const IVector& b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

long long mod(long long a, long long n) { return ((a % n) + n) % n; }

// All integer vectors v with v^T D v <= bound (Fincke-Pohst).
void enumerate_ellipsoid(const std::vector<int>& e, double bound, const std::function<void(const IVector&)>& visit) {
  const int g = static_cast<int>(e.size());
  MatrixXd R = dense_d(e).llt().matrixU();
  IVector v(g, 0);
  std::function<void(int, double)> rec = [&](int i, double rem) {
    if (i < 0) {
      if (quad_form(e, v) <= static_cast<long long>(std::floor(bound + 1e-9))) visit(v);
      return;
    }
    double c = 0;
    for (int j = i + 1; j < g; ++j) c += R(i, j) * static_cast<double>(v[j]);
    double r = std::sqrt(std::max(rem, 0.0)) + 1e-9;
    long long lo = static_cast<long long>(std::ceil((-r - c) / R(i, i)));
    long long hi = static_cast<long long>(std::floor((r - c) / R(i, i)));
    for (long long x = lo; x <= hi; ++x) {
      v[i] = x;
      double t = R(i, i) * static_cast<double>(x) + c;
      rec(i - 1, rem - t * t);
    }
    v[i] = 0;
  };
  rec(g - 1, bound);
}

std::vector<IVector> compute_seeds(const std::vector<int>& e, const IVector& kv, long long n) {
  std::vector<IVector> best(n);
  std::vector<long long> bestq(n, -1);
  for (double bound = 1;; bound *= 2) {
    enumerate_ellipsoid(e, bound, [&](const IVector& b) {
      long long key = mod(dot(b, kv), n);
      long long q = quad_form(e, b);
      if (bestq[key] < 0 || q < bestq[key] || (q == bestq[key] && b < best[key])) {
        bestq[key] = q;
        best[key] = b;
      }
    });
    if (std::all_of(bestq.begin(), bestq.end(), [](long long q) { return q >= 0; })) break;
  }
  // order by coset key so that seed j has key j
  return best;
}

}  // namespace

ThetaSpace::ThetaSpace(const ThetaSpaceParams& p) : params_(p) {
  params_.lattice.validate();
  entries_ = p.ncf.small_entries();
  g_ = static_cast<int>(entries_.size());
  if (static_cast<int>(p.m.size()) != g_) throw PreconditionError("c shift vector must have length g");
  Slope s = evaluate(p.ncf);
  if (s.n > 100000) throw PreconditionError("n too large for theta-function evaluation");
  n_ = static_cast<int>(s.n);
  SlopeSequences seq = sequences(p.ncf);
  for (int i = 1; i <= g_; ++i) {
    kv_.push_back(static_cast<long long>(seq.k_seq[i]));
    lv_.push_back(static_cast<long long>(seq.l_seq[i]));
  }
  DInverse di = d_inverse(p.ncf);
  dinv_num_.assign(g_, std::vector<long long>(g_));
  for (int i = 0; i < g_; ++i)
    for (int j = 0; j < g_; ++j) dinv_num_[i][j] = static_cast<long long>(di.numerators(i, j));

  const cplx eta = params_.lattice.eta;
  c_ = params_.c();
  const double nn = n_;
  cplx sk = 0, sl = 0;
  for (int i = 0; i < g_; ++i) {
    sk += static_cast<double>(kv_[i]) * (c_[i] + eta);
    sl += static_cast<double>(lv_[i]) * (c_[i] + eta);
  }
  C_ = -(sk + ((nn - 1) / 2 - static_cast<double>(k())) * eta) / nn;
  Cp_ = -(sl + ((nn - 1) / 2 - static_cast<double>(k_prime())) * eta) / nn;

  MatrixXd D = dense_d(entries_);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(D);
  lambda_min_ = es.eigenvalues().minCoeff();

  seeds_ = compute_seeds(entries_, kv_, n_);
  key_to_coset_.resize(n_);
  for (int j = 0; j < n_; ++j) key_to_coset_[coset_key(seeds_[j])] = j;

  // Gaussian center of coset j (for Im z = 0) sits at -D^{-1}(s_j - n/2 - m) in m-space.
  const double imeta = eta.imag();
  const double tol = params_.lattice.tolerance;
  radius_gauss_ = std::sqrt(std::log(1e2 / tol) / (std::numbers::pi * imeta));
  for (int j = 0; j < n_; ++j) {
    Eigen::VectorXd r(g_);
    for (int i = 0; i < g_; ++i) r(i) = seeds_[j][i] - 0.5 * entries_[i] - static_cast<double>(params_.m[i]);
    Eigen::VectorXd mu = -D.llt().solve(r);
    center_norm_ = std::max(center_norm_, std::sqrt(mu.dot(D * mu)));
  }
  double dsum = 0;
  for (int i = 0; i < g_; ++i) dsum += entries_[i] + (i + 1 < g_ ? 2 : 0);
  const double wanted_cover = params_.coverage * std::sqrt(dsum);
  const double needed = radius_gauss_ + center_norm_;
  if (params_.trunc_radius > 0) {
    if (params_.trunc_radius < needed)
      throw NumericalError("trunc_radius " + std::to_string(params_.trunc_radius) + " too small for tolerance (need >= " +
                           std::to_string(needed) + ")");
    radius_ = params_.trunc_radius;
  } else {
    radius_ = static_cast<int>(std::ceil(needed + wanted_cover));
  }
  coverage_norm_ = radius_ - needed;

  // Truncated expansions of the coset functions.
  std::vector<std::vector<IVector>> ms(n_);
  std::vector<IVector> offsets_list;
  enumerate_ellipsoid(entries_, static_cast<double>(radius_) * radius_, [&](const IVector& m) { offsets_list.push_back(m); });
  lo_.assign(g_, std::numeric_limits<long long>::max());
  hi_.assign(g_, std::numeric_limits<long long>::min());
  std::vector<std::vector<IVector>> betas(n_);
  for (int j = 0; j < n_; ++j) {
    for (const auto& m : offsets_list) {
      IVector dm = d_times(entries_, m);
      IVector b(g_);
      for (int i = 0; i < g_; ++i) {
        b[i] = seeds_[j][i] + dm[i];
        lo_[i] = std::min(lo_[i], b[i]);
        hi_[i] = std::max(hi_[i], b[i]);
      }
      betas[j].push_back(std::move(b));
    }
  }
  base_.assign(g_, 0);
  for (int i = 0; i < g_; ++i) {
    base_[i] = static_cast<long long>(table_size_);
    table_size_ += static_cast<std::size_t>(hi_[i] - lo_[i] + 1);
  }
  segments_.resize(n_);
  for (int j = 0; j < n_; ++j) {
    Segment& sg = segments_[j];
    sg.terms = offsets_list.size();
    sg.coef_re.resize(sg.terms);
    sg.coef_im.resize(sg.terms);
    sg.offsets.resize(sg.terms * g_);
    for (std::size_t t = 0; t < sg.terms; ++t) {
      cplx a = relative_coefficient(j, offsets_list[t]);
      sg.coef_re[t] = a.real();
      sg.coef_im[t] = a.imag();
      for (int i = 0; i < g_; ++i)
        sg.offsets[i * sg.terms + t] = static_cast<std::int32_t>(betas[j][t][i] - lo_[i] + base_[i]);
    }
  }
}

std::shared_ptr<const ThetaSpace> ThetaSpace::create(const ThetaSpaceParams& p) {
  return std::shared_ptr<const ThetaSpace>(new ThetaSpace(p));
}

long long ThetaSpace::coset_key(const IVector& beta) const { return mod(dot(beta, kv_), n_); }

std::size_t ThetaSpace::coset_index(const IVector& beta) const { return key_to_coset_[coset_key(beta)]; }

IVector ThetaSpace::coset_offset(std::size_t j, const IVector& beta) const {
  IVector diff(g_), m(g_, 0);
  for (int i = 0; i < g_; ++i) diff[i] = beta[i] - seeds_[j][i];
  for (int i = 0; i < g_; ++i) {
    long long s = 0;
    for (int l = 0; l < g_; ++l) s += dinv_num_[i][l] * diff[l];
    if (s % n_ != 0) throw PreconditionError("lattice point is not in the requested coset");
    m[i] = s / n_;
  }
  return m;
}

cplx ThetaSpace::relative_coefficient(std::size_t j, const IVector& m) const {
  // a_{s + Dm} = a_s e(eta (m.s + m^T D m / 2 - sum n_i m_i / 2 - m.mc) - m.n / 2)
  const IVector& s = seeds_[j];
  long long twice_a = 2 * dot(m, s) + quad_form(entries_, m);
  long long mn = 0, mm = 0;
  for (int i = 0; i < g_; ++i) {
    mn += entries_[i] * m[i];
    mm += m[i] * params_.m[i];
  }
  twice_a -= mn;
  double re = -0.5 * static_cast<double>(mn);
  return e(re + (0.5 * static_cast<double>(twice_a) - static_cast<double>(mm)) * params_.lattice.eta);
}

std::vector<std::pair<IVector, cplx>> ThetaSpace::support(std::size_t j) const {
  std::vector<std::pair<IVector, cplx>> out;
  const Segment& sg = segments_[j];
  for (std::size_t t = 0; t < sg.terms; ++t) {
    IVector b(g_);
    for (int i = 0; i < g_; ++i) b[i] = sg.offsets[i * sg.terms + t] - base_[i] + lo_[i];
    out.emplace_back(std::move(b), cplx(sg.coef_re[t], sg.coef_im[t]));
  }
  return out;
}

double ThetaSpace::gaussian_shift(const CVector& z) const {
  const double imeta = params_.lattice.eta.imag();
  double q = 0;
  for (int i = 0; i < g_; ++i) {
    double ti = z[i].imag() / imeta;
    q += entries_[i] * ti * ti;
    if (i + 1 < g_) q -= 2 * ti * (z[i + 1].imag() / imeta);
  }
  return std::sqrt(std::max(q, 0.0));
}

double ThetaSpace::tail_bound(const CVector& z) const {
  double gap = radius_ - center_norm_ - gaussian_shift(z);
  if (gap <= 0) return std::numeric_limits<double>::infinity();
  double terms = segments_.empty() ? 0.0 : static_cast<double>(segments_[0].terms);
  return terms * std::exp(-std::numbers::pi * params_.lattice.eta.imag() * gap * gap);
}

CVector ThetaSpace::coset_values_series(const CVector& z) const {
  if (static_cast<int>(z.size()) != g_) throw PreconditionError("point has wrong dimension");
  if (gaussian_shift(z) > coverage_norm_ + 1e-12)
    throw NumericalError("truncation insufficient: point lies outside the window covered by the stored series");
  std::vector<double> tre(table_size_), tim(table_size_);
  for (int i = 0; i < g_; ++i)
    for (long long b = lo_[i]; b <= hi_[i]; ++b) {
      cplx v = e(static_cast<double>(b) * z[i]);
      tre[base_[i] + b - lo_[i]] = v.real();
      tim[base_[i] + b - lo_[i]] = v.imag();
    }
  CVector out(n_);
  for (int j = 0; j < n_; ++j) {
    const Segment& sg = segments_[j];
    kernels::LatticeSumView view{sg.coef_re.data(), sg.coef_im.data(), sg.offsets.data(), sg.terms,
                                 static_cast<std::size_t>(g_), tre.data(), tim.data()};
    out[j] = kernels::lattice_sum(view);
  }
  return out;
}

cplx ThetaSpace::quasi_period_factor(const CVector& x, const IVector& p) const {
  // f(x + p eta) = e(x N p^T + p N p^T eta / 2 + (c - d eta).p) f(x), N = -D, d = -n/2
  IVector dp = d_times(entries_, p);
  cplx ex = 0;
  for (int i = 0; i < g_; ++i) {
    ex -= x[i] * static_cast<double>(dp[i]);
    ex += static_cast<double>(p[i]) * (c_[i] + 0.5 * entries_[i] * params_.lattice.eta);
  }
  ex -= 0.5 * static_cast<double>(dot(p, dp)) * params_.lattice.eta;
  return e(ex);
}

CVector ThetaSpace::coset_values(const CVector& z) const {
  if (static_cast<int>(z.size()) != g_) throw PreconditionError("point has wrong dimension");
  CVector x(g_);
  IVector p(g_);
  for (int i = 0; i < g_; ++i) {
    LatticeSplit s = split_lattice(z[i], params_.lattice.eta);
    x[i] = s.reduced;
    p[i] = s.p;
  }
  CVector v = coset_values_series(x);
  cplx f = quasi_period_factor(x, p);
  for (auto& y : v) y *= f;
  return v;
}

GLatticeFn::GLatticeFn(ThetaSpacePtr space, CVector seed_coeffs) : space_(std::move(space)), a_(std::move(seed_coeffs)) {
  if (!space_) throw PreconditionError("null theta space");
  if (static_cast<int>(a_.size()) != space_->n()) throw PreconditionError("need one coefficient per coset");
}

std::vector<std::pair<IVector, cplx>> GLatticeFn::coefficients() const {
  std::vector<std::pair<IVector, cplx>> out;
  for (int j = 0; j < space_->n(); ++j) {
    if (a_[j] == cplx(0)) continue;
    for (auto& [b, c] : space_->support(j)) out.emplace_back(b, c * a_[j]);
  }
  return out;
}

GLatticeFn GLatticeFn::operator+(const GLatticeFn& o) const {
  if (o.space_ != space_) throw PreconditionError("functions live in different spaces");
  CVector r = a_;
  for (std::size_t j = 0; j < r.size(); ++j) r[j] += o.a_[j];
  return GLatticeFn(space_, r);
}

GLatticeFn GLatticeFn::operator*(cplx s) const {
  CVector r = a_;
  for (auto& x : r) x *= s;
  return GLatticeFn(space_, r);
}

namespace {

cplx combine(const CVector& a, const CVector& v) {
  cplx s = 0;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] != cplx(0)) s += a[j] * v[j];
  return s;
}

}  // namespace

cplx evaluate(const GLatticeFn& f, const CVector& z) { return combine(f.seed_coeffs(), f.space()->coset_values(z)); }

cplx evaluate_series(const GLatticeFn& f, const CVector& z) {
  return combine(f.seed_coeffs(), f.space()->coset_values_series(z));
}

std::vector<GLatticeFn> basis_functions(const ThetaSpacePtr& space) {
  std::vector<GLatticeFn> out;
  for (int j = 0; j < space->n(); ++j) {
    CVector a(space->n(), 0);
    a[j] = 1;
    out.emplace_back(space, a);
  }
  return out;
}

std::vector<IVector> coset_reps(const NCF& f) {
  std::vector<int> e = f.small_entries();
  SlopeSequences seq = sequences(f);
  IVector kv;
  for (std::size_t i = 1; i <= f.g(); ++i) kv.push_back(static_cast<long long>(seq.k_seq[i]));
  return compute_seeds(e, kv, static_cast<long long>(seq.k_seq[0]));
}

GLatticeFn apply_operator(Op op, const GLatticeFn& f) {
  const ThetaSpace& sp = *f.space();
  const int n = sp.n(), g = sp.g();
  const cplx eta = sp.params().lattice.eta;
  const CVector& a = f.seed_coeffs();
  CVector out(n, 0);
  const bool primed = (op == Op::Sp || op == Op::Tp);
  const IVector& shift = primed ? sp.l_vec() : sp.k_vec();
  for (int j = 0; j < n; ++j) {
    if (a[j] == cplx(0)) continue;
    const IVector& s = sp.coset_seeds()[j];
    long long sk = dot(s, shift);
    if (op == Op::S || op == Op::Sp) {
      out[j] += a[j] * e(static_cast<double>(mod(sk, n)) / n);
      continue;
    }
    IVector b = s;
    b[primed ? g - 1 : 0] += 1;
    std::size_t jt = sp.coset_index(b);
    IVector m = sp.coset_offset(jt, b);
    // coefficient at b is a_s e(C + (s.k) eta / n); convert to the target seed
    cplx lead = (primed ? sp.C_prime() : sp.C()) + static_cast<double>(sk) * eta / static_cast<double>(n);
    out[jt] += a[j] * e(lead) / sp.relative_coefficient(jt, m);
  }
  return GLatticeFn(f.space(), out);
}

cplx apply_operator_pointwise(Op op, const GLatticeFn& f, const CVector& z) {
  const ThetaSpace& sp = *f.space();
  const int g = sp.g();
  const double n = sp.n();
  const cplx eta = sp.params().lattice.eta;
  const bool primed = (op == Op::Sp || op == Op::Tp);
  const IVector& shift = primed ? sp.l_vec() : sp.k_vec();
  const bool twisted = (op == Op::T || op == Op::Tp);
  CVector w = z;
  for (int i = 0; i < g; ++i) w[i] += static_cast<double>(shift[i]) / n * (twisted ? eta : cplx(1));
  cplx v = evaluate(f, w);
  if (!twisted) return v;
  cplx lead = primed ? z[g - 1] + sp.C_prime() : z[0] + sp.C();
  return e(lead) * v;
}

CVector WBasis::values(const CVector& z) const {
  CVector cv = space->coset_values(z);
  CVector out(w.size());
  for (std::size_t a = 0; a < w.size(); ++a) out[a] = w[a].seed_coeffs()[coset_of[a]] * cv[coset_of[a]];
  return out;
}

WBasis w_basis(const ThetaSpacePtr& space) {
  const int n = space->n();
  WBasis wb{space, {}, {}, 0, 0, 0};
  std::size_t j0 = space->coset_index(IVector(space->g(), 0));
  if (space->coset_key(space->coset_seeds()[j0]) != 0) throw NumericalError("no coset with S-eigenvalue 1");
  CVector a(n, 0);
  a[j0] = 1;
  wb.w.emplace_back(space, a);
  wb.coset_of.push_back(j0);
  for (int al = 1; al < n; ++al) {
    wb.w.push_back(apply_operator(Op::T, wb.w.back()));
    const CVector& s = wb.w.back().seed_coeffs();
    std::size_t j = 0;
    while (j < s.size() && s[j] == cplx(0)) ++j;
    wb.coset_of.push_back(j);
  }
  const long long kp = space->k_prime();
  for (int al = 0; al < n; ++al) {
    std::size_t ja = wb.coset_of[al];
    cplx wa = wb.w[al].seed_coeffs()[ja];
    cplx s1 = apply_operator(Op::Sp, wb.w[al]).seed_coeffs()[ja] / (wa * e(static_cast<double>(al) / n));
    std::size_t target = static_cast<std::size_t>((al + kp) % n);
    GLatticeFn tp = apply_operator(Op::Tp, wb.w[al]);
    std::size_t jt = wb.coset_of[target];
    for (int j = 0; j < n; ++j)
      if (static_cast<std::size_t>(j) != jt && tp.seed_coeffs()[j] != cplx(0))
        throw NumericalError("T' does not map w_alpha to a multiple of w_{alpha+k'}");
    cplx s2 = tp.seed_coeffs()[jt] / wb.w[target].seed_coeffs()[jt];
    if (al == 0) {
      wb.c_1n = s1;
      wb.c_etan = s2;
    }
    wb.scalar_spread = std::max({wb.scalar_spread, std::abs(s1 - wb.c_1n) / std::abs(wb.c_1n),
                                 std::abs(s2 - wb.c_etan) / std::abs(wb.c_etan)});
  }
  return wb;
}

cplx h_section(const ThetaSpaceParams& p, const CVector& z) {
  const std::vector<int> ent = p.ncf.small_entries();
  const std::size_t g = ent.size();
  if (z.size() != g) throw PreconditionError("point has wrong dimension");
  if (p.m.size() != g) throw PreconditionError("c shift vector must have length g");
  cplx h = 1;
  for (std::size_t i = 0; i < g; ++i) {
    int neighbours = (i > 0) + (i + 1 < g);
    int power = ent[i] - neighbours;
    h *= e(static_cast<double>(p.m[i]) * z[i]) * std::pow(theta(z[i], p.lattice).value, power);
    if (i + 1 < g) h *= e(z[i + 1]) * theta(z[i] - z[i + 1], p.lattice).value;
  }
  return h;
}

CVector phi(const WBasis& wb, const CVector& z) {
  CVector v = wb.values(z);
  if (!normalize_projective(v)) throw NumericalError("all w_alpha vanish: base point");
  return v;
}

}  // namespace qnk
