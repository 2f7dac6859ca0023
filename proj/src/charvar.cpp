#include "qnk/charvar.hpp"

#include "qnk/eqa.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace qnk {

SigmaGroup sigma_group(const NCF& f) {
  SigmaGroup s;
  s.order = 1;
  std::size_t run = 0;
  auto close_run = [&] {
    if (run == 0) return;
    s.run_lengths.push_back(run);
    BigInt fact = 1;
    for (std::size_t m = 2; m <= run + 1; ++m) fact *= m;
    s.order *= fact;
    run = 0;
  };
  for (std::size_t i = 0; i < f.g(); ++i) {
    if (f[i] == 2) {
      s.generator_indices.push_back(i + 1);
      ++run;
    } else {
      close_run();
    }
  }
  close_run();
  return s;
}

OrbitPartition orbit_partition(const NCF& f) {
  const std::size_t pts = f.g() + 1;
  std::vector<std::size_t> parent(pts);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // s_i swaps the points i and i+1
  for (std::size_t i = 0; i < f.g(); ++i)
    if (f[i] == 2) parent[find(i + 1)] = find(i);

  OrbitPartition p;
  p.points = pts;
  std::vector<std::vector<std::size_t>> groups(pts);
  for (std::size_t x = 0; x < pts; ++x) groups[find(x)].push_back(x + 1);
  for (auto& grp : groups) {
    if (grp.size() == 1) p.fixed.push_back(grp[0]);
    else if (grp.size() >= 2) p.orbits.push_back(grp);
  }
  std::sort(p.fixed.begin(), p.fixed.end());
  std::sort(p.orbits.begin(), p.orbits.end());
  return p;
}

std::string tag_name(BundleTag t) {
  switch (t) {
    case BundleTag::Eg: return "E^g";
    case BundleTag::SgE: return "S^gE";
    case BundleTag::Pg: return "P^g";
    case BundleTag::Generic: return "generic";
  }
  return "generic";
}

BundleStructure bundle_structure(const NCF& f) {
  BundleStructure b;
  OrbitPartition p = orbit_partition(f);
  b.base_dim = p.fixed.size() + p.orbits.size() - 1;
  for (const auto& o : p.orbits) b.fibers.push_back(o.size() - 1);

  const std::size_t g = f.g();
  bool all3 = true, all2 = true;
  for (const auto& x : f.entries()) {
    if (x < 3) all3 = false;
    if (x != 2) all2 = false;
  }
  auto twos = [&](std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i)
      if (f[i] != 2) return false;
    return true;
  };
  bool head = g >= 2 && f[0] >= 3 && twos(1, g);
  bool tail = g >= 2 && f[g - 1] >= 3 && twos(0, g - 1);
  b.very_ample = all3;
  if (all3) b.tag = BundleTag::Eg;
  else if (all2) b.tag = BundleTag::Pg;
  else if (head || tail) b.tag = BundleTag::SgE;
  return b;
}

BigInt etale_cover_group_order(const OrbitPartition& p) {
  if (p.orbits.empty()) return 1;
  if (!p.fixed.empty()) {
    BigInt order = 1;
    for (const auto& o : p.orbits) order *= BigInt(o.size() * o.size());
    return order;
  }
  // ker of (z_a) -> sum (i_a/d) z_a on prod E[i_a]; per real coordinate the point
  // a/i_a maps to a/d, so count tuples with sum a = 0 mod d and square the result.
  std::size_t d = 0;
  for (const auto& o : p.orbits) d = std::gcd(d, o.size());
  std::vector<BigInt> count(d, 0);
  count[0] = 1;
  for (const auto& o : p.orbits) {
    std::vector<BigInt> next(d, 0);
    for (std::size_t r = 0; r < d; ++r) {
      if (count[r] == 0) continue;
      for (std::size_t a = 0; a < o.size(); ++a) next[(r + a) % d] += count[r];
    }
    count.swap(next);
  }
  return count[0] * count[0];
}

CVector weyl_s_lifted(std::size_t i, const CVector& z, cplx eta) { return weyl_s<cplx>(i, z, eta); }

SigmaTranslation sigma_translation(const NCF& f, cplx tau) {
  Slope s = evaluate(f);
  SlopeSequences seq = sequences(f);
  SigmaTranslation out;
  const std::size_t g = f.g();
  for (std::size_t i = 1; i <= g; ++i) {
    BigInt c = seq.k_seq[i] + seq.l_seq[i] - s.n;
    out.t.push_back(c.convert_to<double>() * tau);
  }
  for (std::size_t j = 1; j <= g; ++j) {
    if (f[j - 1] != 2) continue;
    out.checked.push_back(j);
    BigInt lhs = 2 * (seq.k_seq[j] + seq.l_seq[j]);
    BigInt rhs = seq.k_seq[j - 1] + seq.l_seq[j - 1] + seq.k_seq[j + 1] + seq.l_seq[j + 1];
    if (lhs != rhs) out.certificate = false;
  }
  return out;
}

EVector sigma_translation_exact(const NCF& f, const EPoint& tau) {
  Slope s = evaluate(f);
  SlopeSequences seq = sequences(f);
  EVector t;
  for (std::size_t i = 1; i <= f.g(); ++i) t.push_back(tau.scaled(seq.k_seq[i] + seq.l_seq[i] - s.n));
  return t;
}

namespace {

using RMatrix = std::vector<std::vector<Rational>>;

RMatrix to_rational(const IntMatrix& m, int sign) {
  RMatrix r(m.dim(), std::vector<Rational>(m.dim()));
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) r[i][j] = Rational(BigInt(sign * m(i, j)));
  return r;
}

RMatrix identity(std::size_t g) {
  RMatrix r(g, std::vector<Rational>(g, Rational(0)));
  for (std::size_t i = 0; i < g; ++i) r[i][i] = 1;
  return r;
}

RMatrix mul(const RMatrix& a, const RMatrix& b) {
  std::size_t g = a.size();
  RMatrix r(g, std::vector<Rational>(g, Rational(0)));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t k = 0; k < g; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < g; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

RMatrix transpose(const RMatrix& a) {
  std::size_t g = a.size();
  RMatrix r(g, std::vector<Rational>(g));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) r[i][j] = a[j][i];
  return r;
}

RMatrix inverse(RMatrix a) {
  std::size_t g = a.size();
  RMatrix inv = identity(g);
  for (std::size_t c = 0; c < g; ++c) {
    std::size_t piv = c;
    while (piv < g && a[piv][c] == 0) ++piv;
    if (piv == g) throw std::logic_error("singular matrix in descent check");
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    Rational p = a[c][c];
    for (std::size_t j = 0; j < g; ++j) {
      a[c][j] /= p;
      inv[c][j] /= p;
    }
    for (std::size_t r = 0; r < g; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational m = a[r][c];
      for (std::size_t j = 0; j < g; ++j) {
        a[r][j] -= m * a[c][j];
        inv[r][j] -= m * inv[c][j];
      }
    }
  }
  return inv;
}

std::vector<Rational> row_times(const std::vector<Rational>& v, const RMatrix& m) {
  std::vector<Rational> r(v.size(), Rational(0));
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[j] += v[i] * m[i][j];
  return r;
}

}  // namespace

bool phi_descent_exact(const NCF& f, std::size_t j) {
  const std::size_t g = f.g();
  if (j < 1 || j > g) throw PreconditionError("reflection index out of range");
  if (f[j - 1] != 2) throw PreconditionError("s_j descends only when n_j = 2");
  const std::size_t jj = j - 1;
  RMatrix N = to_rational(dmatrix(f), -1);
  RMatrix E = identity(g);
  std::vector<Rational> d(g);
  for (std::size_t i = 0; i < g; ++i) d[i] = Rational(-f[i]) / 2;

  // A = E + v_j^T e_j: column j gains row j of N
  RMatrix A = E;
  for (std::size_t i = 0; i < g; ++i) A[i][jj] += N[jj][i];

  RMatrix AinvT = inverse(transpose(A));
  RMatrix diff = E;
  for (std::size_t r = 0; r < g; ++r)
    for (std::size_t c = 0; c < g; ++c) diff[r][c] -= AinvT[r][c];
  std::vector<Rational> u = row_times(row_times(d, diff), inverse(N));
  for (std::size_t i = 0; i < g; ++i)
    if (u[i] != (i == jj ? 1 : 0)) return false;

  if (mul(mul(A, N), transpose(A)) != N) return false;

  Slope s = evaluate(f);
  SlopeSequences seq = sequences(f);
  std::vector<Rational> kv(g);
  for (std::size_t i = 0; i < g; ++i) kv[i] = Rational(seq.k_seq[i + 1]);
  RMatrix AmE = A;
  for (std::size_t i = 0; i < g; ++i) AmE[i][i] -= 1;
  for (const Rational& x : row_times(kv, AmE)) {
    Rational q = x / Rational(s.n);
    if (boost::multiprecision::denominator(q) != 1) return false;
  }
  return true;
}

PhiDescentReport phi_descent_check(const WBasis& wb, int samples, std::uint64_t seed) {
  const NCF& f = wb.space->params().ncf;
  const cplx eta = wb.space->params().lattice.eta;
  PhiDescentReport rep;
  rep.reflections = sigma_group(f).generator_indices;
  for (std::size_t j : rep.reflections)
    if (!phi_descent_exact(f, j)) {
      rep.exact_ok = false;
      throw std::logic_error("exact descent conditions fail at j = " + std::to_string(j));
    }
  if (rep.vacuous()) return rep;
  std::mt19937_64 rng(seed);
  for (std::size_t j : rep.reflections) {
    for (int s = 0; s < samples; ++s) {
      CVector z = random_vector(rng, eta, f.g());
      double dist = chordal_distance(phi(wb, z), phi(wb, weyl_s_lifted(j, z, eta)));
      ++rep.samples;
      if (dist >= rep.max_distance) {
        rep.max_distance = dist;
        rep.worst_sample = z;
        rep.worst_reflection = j;
      }
    }
  }
  return rep;
}

std::optional<EVector> symmetric_power_quotient(const NCF& f, const EVector& z) {
  const std::size_t g = f.g();
  if (z.size() != g) throw PreconditionError("point has wrong dimension");
  auto twos = [&](std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i)
      if (f[i] != 2) return false;
    return true;
  };
  EVector out;
  if (f[0] >= 3 && twos(1, g)) {
    for (std::size_t i = 1; i < g; ++i) out.push_back(z[i] - z[i - 1]);
    out.push_back(-z[g - 1]);
  } else if (f[g - 1] >= 3 && twos(0, g - 1)) {
    out.push_back(-z[0]);
    for (std::size_t i = 1; i < g; ++i) out.push_back(z[i - 1] - z[i]);
  } else {
    return std::nullopt;
  }
  std::sort(out.begin(), out.end());
  return out;
}

CharVarReport charvar_report(const NCF& f) {
  CharVarReport r{f, sigma_group(f), orbit_partition(f), bundle_structure(f), 0};
  r.etale_order = etale_cover_group_order(r.partition);
  return r;
}

}  // namespace qnk
