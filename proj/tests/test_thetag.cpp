#include "oracles.hpp"
#include "qnk/eqa.hpp"
#include "qnk/report_json.hpp"
#include "qnk/thetag.hpp"
#include "qnk/zlinalg.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <random>
#include <set>

using namespace qnk;

namespace {

double rel(cplx a, cplx b) {
  double s = std::max(std::abs(a), std::abs(b));
  return s == 0 ? 0 : std::abs(a - b) / s;
}

double vec_rel(const CVector& a, const CVector& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max({den, std::abs(a[i]), std::abs(b[i])});
  }
  return den == 0 ? 0 : num / den;
}

ThetaSpacePtr space_for(long long n, long long k, cplx eta = cplx(0, 0.8)) {
  LatticeParams lp;
  lp.eta = eta;
  return ThetaSpace::create(ThetaSpaceParams::standard(expand(Slope::make(n, k)), lp));
}

GLatticeFn random_fn(const ThetaSpacePtr& sp, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  CVector a(sp->n());
  for (auto& x : a) x = cplx(nd(rng), nd(rng));
  return GLatticeFn(sp, a);
}

std::vector<std::vector<Rational>> dinv_rational(const NCF& f) {
  DInverse di = d_inverse(f);
  std::vector<std::vector<Rational>> out(f.g(), std::vector<Rational>(f.g()));
  for (std::size_t i = 0; i < f.g(); ++i)
    for (std::size_t j = 0; j < f.g(); ++j) out[i][j] = Rational(di.numerators(i, j)) / Rational(di.denominator);
  return out;
}

bool same_coset(const std::vector<std::vector<Rational>>& dinv, const IVector& a, const IVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) s += dinv[i][j] * Rational(a[j] - b[j]);
    if (boost::multiprecision::denominator(s) != 1) return false;
  }
  return true;
}

const std::pair<int, int> kSlopes[] = {{3, 1}, {4, 1}, {5, 2}, {7, 3}, {8, 3}, {7, 5}, {4, 3}};

}  // namespace

TEST_SUITE("thetag") {
  TEST_CASE("coset representatives") {
    auto g1 = coset_reps(NCF::of({5}));
    std::vector<long long> firsts;
    for (auto& r : g1) firsts.push_back(r[0]);
    std::sort(firsts.begin(), firsts.end());
    CHECK(firsts == std::vector<long long>{-2, -1, 0, 1, 2});
    std::set<long long> residues;
    for (auto x : firsts) residues.insert(((x % 5) + 5) % 5);
    CHECK(residues.size() == 5);

    NCF f = NCF::of({3, 3});
    auto reps = coset_reps(f);
    CHECK(reps.size() == 8);
    std::vector<std::vector<long long>> brute;
    CHECK(oracle::coset_count_by_inverse(dinv_rational(f), 4, &brute) == 8);
    auto dinv = dinv_rational(f);
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size(); ++j) CHECK_FALSE(same_coset(dinv, reps[i], reps[j]));
    // every class found by the box search contains exactly one representative
    for (const auto& b : brute) {
      int hits = 0;
      for (const auto& r : reps) hits += same_coset(dinv, r, b);
      CHECK(hits == 1);
    }
  }

  TEST_CASE("coset count equals n for g <= 3") {
    for (long long n = 2; n <= 16; ++n)
      for (long long k = 1; k < n; ++k) {
        if (std::gcd(n, k) != 1) continue;
        NCF f = expand(Slope::make(n, k));
        if (f.g() > 3) continue;
        auto reps = coset_reps(f);
        REQUIRE(reps.size() == static_cast<std::size_t>(n));
        auto dinv = dinv_rational(f);
        for (std::size_t i = 0; i < reps.size(); ++i)
          for (std::size_t j = i + 1; j < reps.size(); ++j) REQUIRE_FALSE(same_coset(dinv, reps[i], reps[j]));
      }
  }

  TEST_CASE("coefficient recursion holds on stored support") {
    auto sp = space_for(8, 3);
    const cplx eta = sp->params().lattice.eta;
    const CVector& c = sp->c();
    const auto& ent = sp->entries();
    for (std::size_t j = 0; j < 8; ++j) {
      auto sup = sp->support(j);
      std::map<IVector, cplx> coef(sup.begin(), sup.end());
      int checked = 0;
      for (const auto& [b, a] : sup) {
        for (int i = 0; i < 2; ++i) {
          IVector t = b;
          t[i] += ent[i];
          if (i > 0) t[i - 1] -= 1;
          if (i + 1 < 2) t[i + 1] -= 1;
          auto it = coef.find(t);
          if (it == coef.end()) continue;
          // a_b e(b_i eta) = a_t e(c_i)
          REQUIRE(rel(a * e(static_cast<double>(b[i]) * eta), it->second * e(c[i])) < 1e-12);
          ++checked;
        }
      }
      CHECK(checked > 10);
    }
  }

  TEST_CASE("single coefficient evaluation") {
    auto sp = space_for(3, 1);
    auto basis = basis_functions(sp);
    // explicit sum over the stored support
    cplx z(0.13, 0.05);
    for (std::size_t j = 0; j < 3; ++j) {
      cplx sum = 0;
      for (const auto& [b, a] : sp->support(j)) sum += a * e(static_cast<double>(b[0]) * z);
      CHECK(rel(evaluate(basis[j], {z}), sum) < 1e-12);
    }
  }

  TEST_CASE("quasi-periodicity of basis functions") {
    std::mt19937_64 rng(21);
    for (cplx eta : {cplx(0, 0.8), cplx(0.3, 0.9)})
      for (auto [n, k] : kSlopes) {
        auto sp = space_for(n, k, eta);
        const int g = sp->g();
        const auto& ent = sp->entries();
        for (int s = 0; s < 10; ++s) {
          CVector z = random_vector(rng, eta, g);
          GLatticeFn f = random_fn(sp, rng);
          cplx v = evaluate_series(f, z);
          for (int i = 0; i < g; ++i) {
            CVector z1 = z, ze = z;
            z1[i] += 1.0;
            ze[i] += eta;
            cplx left = i > 0 ? z[i - 1] : 0.0, right = i + 1 < g ? z[i + 1] : 0.0;
            CHECK(rel(evaluate_series(f, z1), v) < 1e-10);
            CHECK(rel(evaluate_series(f, ze), e(left - static_cast<double>(ent[i]) * z[i] + right + sp->c()[i]) * v) <
                  1e-9);
          }
        }
      }
  }

  TEST_CASE("k- and l-direction laws and general lattice shifts") {
    std::mt19937_64 rng(22);
    for (auto [n, k] : kSlopes) {
      auto sp = space_for(n, k);
      const int g = sp->g();
      const cplx eta = sp->params().lattice.eta;
      const double nn = n, kp = static_cast<double>(sp->k_prime());
      for (int s = 0; s < 8; ++s) {
        CVector z = random_vector(rng, eta, g);
        GLatticeFn f = random_fn(sp, rng);
        CVector zk = z, zl = z;
        cplx sk = 0, sl = 0;
        for (int i = 0; i < g; ++i) {
          zk[i] += static_cast<double>(sp->k_vec()[i]) * eta;
          zl[i] += static_cast<double>(sp->l_vec()[i]) * eta;
          sk += static_cast<double>(sp->k_vec()[i]) * (sp->c()[i] + eta);
          sl += static_cast<double>(sp->l_vec()[i]) * (sp->c()[i] + eta);
        }
        cplx v = evaluate(f, z);
        CHECK(rel(evaluate(f, zk), e(-nn * z[0] + sk - 0.5 * (nn * k - nn + k + 1) * eta) * v) < 1e-8);
        CHECK(rel(evaluate(f, zl), e(-nn * z[g - 1] + sl - 0.5 * (nn * kp - nn + kp + 1) * eta) * v) < 1e-8);
        // f(z + m eta) against the series, for small m >= 0
        IVector m(g);
        for (auto& x : m) x = static_cast<long long>(rng() % 3);
        CVector zm = z;
        for (int i = 0; i < g; ++i) zm[i] += static_cast<double>(m[i]) * eta;
        CVector x = z;
        CHECK(rel(evaluate(f, zm), sp->quasi_period_factor(x, m) * v) < 1e-9);
      }
    }
  }

  TEST_CASE("series window is enforced") {
    auto sp = space_for(5, 2);
    CVector far{cplx(0, 40), cplx(0, -40)};
    CHECK_THROWS_AS(sp->coset_values_series(far), NumericalError);
    CHECK_NOTHROW(sp->coset_values(far));
    ThetaSpaceParams p = ThetaSpaceParams::standard(NCF::of({3, 2}));
    p.trunc_radius = 1;
    CHECK_THROWS_AS(ThetaSpace::create(p), NumericalError);
  }

  TEST_CASE("operators: Fourier data against pointwise formulas") {
    std::mt19937_64 rng(23);
    for (auto [n, k] : kSlopes) {
      auto sp = space_for(n, k);
      for (Op op : {Op::S, Op::T, Op::Sp, Op::Tp}) {
        GLatticeFn f = random_fn(sp, rng);
        GLatticeFn g = apply_operator(op, f);
        for (int s = 0; s < 5; ++s) {
          CVector z = random_vector(rng, sp->params().lattice.eta, sp->g());
          CHECK(rel(evaluate(g, z), apply_operator_pointwise(op, f, z)) < 1e-10);
        }
      }
    }
  }

  TEST_CASE("Heisenberg relations on Fourier data") {
    std::mt19937_64 rng(24);
    for (auto [n, k] : kSlopes) {
      auto sp = space_for(n, k);
      const double nn = n;
      const double kp = static_cast<double>(sp->k_prime());
      GLatticeFn f = random_fn(sp, rng);
      auto A = [&](Op a, Op b) { return apply_operator(a, apply_operator(b, f)).seed_coeffs(); };
      auto scaled = [](CVector v, cplx s) {
        for (auto& x : v) x *= s;
        return v;
      };
      CHECK(vec_rel(A(Op::S, Op::T), scaled(A(Op::T, Op::S), e(k / nn))) < 1e-12);
      CHECK(vec_rel(A(Op::Sp, Op::Tp), scaled(A(Op::Tp, Op::Sp), e(kp / nn))) < 1e-12);
      CHECK(vec_rel(A(Op::S, Op::Sp), A(Op::Sp, Op::S)) < 1e-12);
      CHECK(vec_rel(A(Op::S, Op::Tp), scaled(A(Op::Tp, Op::S), e(1 / nn))) < 1e-12);
      CHECK(vec_rel(A(Op::Sp, Op::T), scaled(A(Op::T, Op::Sp), e(1 / nn))) < 1e-12);
      CHECK(vec_rel(A(Op::T, Op::Tp), A(Op::Tp, Op::T)) < 1e-12);
      for (Op op : {Op::S, Op::T, Op::Sp, Op::Tp}) {
        GLatticeFn g = f;
        for (int i = 0; i < n; ++i) g = apply_operator(op, g);
        CHECK(vec_rel(g.seed_coeffs(), f.seed_coeffs()) < 1e-11);
      }
    }
  }

  TEST_CASE("S then T against T then S, coefficient by coefficient") {
    auto sp = space_for(8, 3);
    auto basis = basis_functions(sp);
    for (const auto& b : basis) {
      auto st = apply_operator(Op::S, apply_operator(Op::T, b)).coefficients();
      auto ts = apply_operator(Op::T, apply_operator(Op::S, b)).coefficients();
      REQUIRE(st.size() == ts.size());
      for (std::size_t i = 0; i < st.size(); ++i) {
        REQUIRE(st[i].first == ts[i].first);
        if (std::abs(ts[i].second) > 1e-250) REQUIRE(std::abs(st[i].second / ts[i].second - e(3.0 / 8)) < 1e-12);
      }
    }
  }

  TEST_CASE("w-basis") {
    std::mt19937_64 rng(25);
    for (auto [n, k] : kSlopes) {
      auto sp = space_for(n, k);
      WBasis wb = w_basis(sp);
      const double nn = n;
      const long long kp = sp->k_prime();
      CHECK(wb.scalar_spread < 1e-8);
      CHECK(std::abs(wb.c_1n) > 0);
      CHECK(std::abs(wb.c_etan) > 0);
      for (int a = 0; a < n; ++a) {
        auto Sw = apply_operator(Op::S, wb.w[a]).seed_coeffs();
        CHECK(vec_rel(Sw, [&] {
                auto v = wb.w[a].seed_coeffs();
                for (auto& x : v) x *= e(static_cast<double>(k) * a / nn);
                return v;
              }()) < 1e-12);
        CHECK(vec_rel(apply_operator(Op::T, wb.w[a]).seed_coeffs(), wb.w[(a + 1) % n].seed_coeffs()) < 1e-12);
        CVector z = random_vector(rng, sp->params().lattice.eta, sp->g());
        CHECK(rel(apply_operator_pointwise(Op::Sp, wb.w[a], z), wb.c_1n * e(a / nn) * evaluate(wb.w[a], z)) < 1e-9);
        CHECK(rel(apply_operator_pointwise(Op::Tp, wb.w[a], z), wb.c_etan * evaluate(wb.w[(a + kp) % n], z)) < 1e-9);
        CHECK(rel(wb.values(z)[a], evaluate(wb.w[a], z)) < 1e-12);
      }
    }
  }

  TEST_CASE("g = 1, k = 1: w-basis is a diagonal transform of theta_alpha") {
    std::mt19937_64 rng(26);
    for (int n = 2; n <= 7; ++n) {
      auto sp = space_for(n, 1);
      WBasis wb = w_basis(sp);
      LatticeParams lp = sp->params().lattice;
      // c = n/2: equals the theta_alpha law for odd n; even n needs the half-step 1/2n
      const double shift = n % 2 ? 0.0 : 0.5 / n;
      cplx z0 = random_point(rng, lp.eta);
      CVector ratio(n);
      for (int a = 0; a < n; ++a) ratio[a] = wb.values({z0})[a] / theta_alpha(a, n, z0 + shift, lp).value;
      for (int s = 0; s < 50; ++s) {
        cplx z = random_point(rng, lp.eta);
        CVector w = wb.values({z});
        for (int a = 0; a < n; ++a) CHECK(rel(w[a], ratio[a] * theta_alpha(a, n, z + shift, lp).value) < 1e-9);
      }
    }
  }

  TEST_CASE("h-section lies in the space and vanishes on the divisor") {
    std::mt19937_64 rng(27);
    for (auto [n, k] : {std::pair{3, 1}, std::pair{5, 2}, std::pair{8, 3}, std::pair{7, 5}}) {
      auto sp = space_for(n, k);
      const ThetaSpaceParams& p = sp->params();
      const int g = sp->g();
      const cplx eta = p.lattice.eta;
      // least-squares fit in the coset basis, then check at fresh points
      const int fit = 3 * n;
      Eigen::MatrixXcd A(fit, n);
      Eigen::VectorXcd b(fit);
      for (int r = 0; r < fit; ++r) {
        CVector z = random_vector(rng, eta, g);
        CVector v = sp->coset_values(z);
        cplx h = h_section(p, z);
        double scale = std::abs(h);
        for (auto x : v) scale = std::max(scale, std::abs(x));
        for (int c = 0; c < n; ++c) A(r, c) = v[c] / scale;
        b(r) = h / scale;
      }
      Eigen::VectorXcd coef = A.colPivHouseholderQr().solve(b);
      for (int s = 0; s < 20; ++s) {
        CVector z = random_vector(rng, eta, g);
        CVector v = sp->coset_values(z);
        cplx fitted = 0;
        for (int c = 0; c < n; ++c) fitted += coef(c) * v[c];
        CHECK(rel(fitted, h_section(p, z)) < 1e-8);
      }
      auto degrees = standard_divisor_degrees(p.ncf);
      for (int s = 0; s < 20; ++s) {
        CVector z = random_vector(rng, eta, g);
        for (int i = 0; i < g; ++i) {
          if (degrees[i] == 0) continue;
          CVector on = z;
          on[i] = 0;
          CVector off = on;
          off[i] += 0.1;
          CHECK(std::abs(h_section(p, on)) < 1e-7 * std::abs(h_section(p, off)));
        }
        for (int i = 0; i + 1 < g; ++i) {
          CVector on = z;
          on[i + 1] = on[i];
          CVector off = on;
          off[i] += 0.1;
          CHECK(std::abs(h_section(p, on)) < 1e-7 * std::abs(h_section(p, off)));
        }
      }
    }
    ThetaSpaceParams one = ThetaSpaceParams::standard(NCF::of({4}));
    cplx z(0.21, 0.13);
    CHECK(rel(h_section(one, {z}), e(static_cast<double>(one.m[0]) * z) * std::pow(theta(z, one.lattice).value, 4)) <
          1e-14);
  }

  TEST_CASE("Phi is base-point free and lattice invariant") {
    std::mt19937_64 rng(28);
    for (auto [n, k] : {std::pair{5, 2}, std::pair{8, 3}, std::pair{4, 3}}) {
      auto sp = space_for(n, k);
      WBasis wb = w_basis(sp);
      const cplx eta = sp->params().lattice.eta;
      for (int s = 0; s < 1000; ++s) {
        CVector z = random_vector(rng, eta, sp->g());
        CVector p = phi(wb, z);
        if (s % 50 == 0) {
          CVector shifted = z;
          for (auto& x : shifted) x += static_cast<double>(rng() % 3) + static_cast<double>(rng() % 3) * eta;
          CHECK(chordal_distance(p, phi(wb, shifted)) < 1e-8);
        }
      }
    }
  }

  TEST_CASE("GLatticeFn JSON") {
    auto sp = space_for(3, 1);
    json j = to_json(basis_functions(sp)[0]);
    CHECK(j["ncf"] == json::array({3}));
    CHECK(j["c"].size() == 1);
    CHECK(j["coeffs"].size() == sp->support(0).size());
    CHECK(j["coeffs"][0].size() == 3);
  }
}
