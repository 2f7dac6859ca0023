#include "oracles.hpp"
#include "qnk/theta1.hpp"

#include <doctest.h>

#include <random>

using namespace qnk;

namespace {

double rel(cplx a, cplx b) {
  double s = std::max(std::abs(a), std::abs(b));
  return s == 0 ? 0 : std::abs(a - b) / s;
}

cplx sample(std::mt19937_64& rng, cplx eta) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  double a = u(rng), b = u(rng);
  return a + b * eta;
}

const cplx kEtas[] = {cplx(0, 0.8), cplx(0.3, 0.9)};

}  // namespace

TEST_SUITE("theta1") {
  TEST_CASE("parameter validation") {
    LatticeParams p;
    p.eta = cplx(0.2, -0.1);
    CHECK_THROWS_AS(theta(0.1, p), PreconditionError);
    LatticeParams q;
    q.tolerance = 0;
    CHECK_THROWS_AS(q.validate(), PreconditionError);
  }

  TEST_CASE("frozen values from the 50-digit series") {
    LatticeParams p;
    CHECK(rel(theta(cplx(0.3, 0.2), p).value, cplx(1.0946404849984004, -0.24906434805947919)) < 1e-13);
    CHECK(rel(theta_alpha(2, 5, cplx(0.11, -0.23), p).value, cplx(-332.03370554122642, 175.12352688945148)) < 1e-12);
    LatticeParams q;
    q.eta = cplx(0.3, 0.9);
    CHECK(rel(theta(cplx(-0.17, 0.41), q).value, cplx(1.0085744241124535, 0.058040113856795215)) < 1e-13);
    CHECK(rel(theta_alpha(3, 7, cplx(0.4, 0.1), q).value, cplx(11.110176149032101, 16.009622640618449)) < 1e-12);
  }

  TEST_CASE("theta agrees with the high-precision series, including far from the fundamental domain") {
    std::mt19937_64 rng(3);
    for (cplx eta : kEtas) {
      LatticeParams p;
      p.eta = eta;
      for (int i = 0; i < 40; ++i) {
        cplx z = sample(rng, eta) + static_cast<double>(i % 5 - 2) * eta + static_cast<double>(i % 3);
        ThetaValue v = theta(z, p);
        CHECK(v.tail_bound <= p.tolerance);
        CHECK(rel(v.value, oracle::theta_hp(z, eta)) < 1e-11);
      }
    }
  }

  TEST_CASE("theta_alpha agrees with the high-precision product") {
    std::mt19937_64 rng(5);
    for (cplx eta : kEtas) {
      LatticeParams p;
      p.eta = eta;
      for (int n = 1; n <= 6; ++n)
        for (int a = -1; a <= n; ++a) {
          cplx z = sample(rng, eta);
          CHECK(rel(theta_alpha(a, n, z, p).value, oracle::theta_alpha_hp(a, n, z, eta)) < 1e-11);
        }
    }
  }

  TEST_CASE("zero at the origin and periodicity") {
    LatticeParams p;
    CHECK(relative_to_local_scale([&](cplx z) { return theta(z, p).value; }, 0.0) < 1e-12);
    std::mt19937_64 rng(9);
    for (cplx eta : kEtas) {
      p.eta = eta;
      for (int i = 0; i < 100; ++i) {
        cplx z = sample(rng, eta);
        cplx t = theta(z, p).value;
        CHECK(rel(theta(z + 1.0, p).value, t) < 1e-12);
        CHECK(rel(theta(z + eta, p).value, e(-z + 0.5) * t) < 1e-12);
        CHECK(rel(oracle::theta_hp(z + eta, eta), e(-z + 0.5) * oracle::theta_hp(z, eta)) < 1e-12);
      }
    }
  }

  TEST_CASE("basis laws for n = 1..8") {
    std::mt19937_64 rng(13);
    for (cplx eta : kEtas) {
      LatticeParams p;
      p.eta = eta;
      for (int n = 1; n <= 8; ++n) {
        const double nn = n;
        for (int i = 0; i < 25; ++i) {
          cplx z = sample(rng, eta);
          long long a = static_cast<long long>(rng() % n);
          cplx t = theta_alpha(a, n, z, p).value;
          CHECK(rel(theta_alpha(a + n, n, z, p).value, t) < 1e-10);
          CHECK(rel(theta_alpha(a, n, z + 1.0 / nn, p).value, e(a / nn) * t) < 1e-10);
          CHECK(rel(theta_alpha(a, n, z + eta / nn, p).value,
                    e(-z - 1 / (2 * nn) + (nn - 1) / (2 * nn) * eta) * theta_alpha(a + 1, n, z, p).value) < 1e-10);
          CHECK(rel(theta_alpha(a, n, -z, p).value, -e(-nn * z + a / nn) * theta_alpha(-a, n, z, p).value) < 1e-10);
          for (int r = 0; r < n; ++r)
            CHECK(rel(theta_alpha(a, n, z + r / nn * eta, p).value,
                      e(-static_cast<double>(r) * z - r / (2 * nn) + (r * nn - r * r) / (2 * nn) * eta) * theta_alpha(a + r, n, z, p).value) <
                  1e-10);
          for (int m = 0; m < n; ++m) {
            cplx zero = (-static_cast<double>(a) * eta + static_cast<double>(m)) / nn;
            CHECK(relative_to_local_scale([&](cplx x) { return theta_alpha(a, n, x, p).value; }, zero) < 1e-8);
          }
        }
      }
    }
  }

  TEST_CASE("Heisenberg action, symbolic") {
    HeisenbergImage s = h1_word_action("S", 2, 5);
    CHECK(s.index == 2);
    CHECK(s.phase_num == 2);
    HeisenbergImage t = h1_word_action("T", 4, 5);
    CHECK(t.index == 0);
    CHECK(t.phase_num == 0);
    // [S,T] = S T s t acts as e(1/n)
    for (int n = 2; n <= 7; ++n)
      for (int a = 0; a < n; ++a) {
        HeisenbergImage c = h1_word_action("STst", a, n);
        CHECK(c.index == a);
        CHECK(((c.phase_num % n) + n) % n == 1);
      }
    CHECK_THROWS_AS(h1_word_action("SX", 0, 3), PreconditionError);
  }

  TEST_CASE("Heisenberg action, symbolic against numeric on random words") {
    std::mt19937_64 rng(17);
    const char letters[] = {'S', 'T', 's', 't'};
    LatticeParams p;
    for (int trial = 0; trial < 200; ++trial) {
      int n = 2 + static_cast<int>(rng() % 6);
      std::string word;
      for (int len = static_cast<int>(rng() % 7); len > 0; --len) word += letters[rng() % 4];
      long long a = static_cast<long long>(rng() % n);
      cplx z = sample(rng, p.eta);
      HeisenbergImage img = h1_word_action(word, a, n);
      cplx symbolic = img.phase() * theta_alpha(img.index, n, z, p).value;
      CHECK(rel(h1_word_numeric(word, a, n, z, p), symbolic) < 1e-9);
    }
  }
}
