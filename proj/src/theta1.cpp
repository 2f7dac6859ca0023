#include "qnk/theta1.hpp"

#include "qnk/bigint.hpp"

#include <cmath>
#include <functional>

namespace qnk {

void LatticeParams::validate() const {
  if (!(eta.imag() > 0)) throw PreconditionError("eta must have positive imaginary part");
  if (!(tolerance > 0)) throw PreconditionError("tolerance must be positive");
  if (max_terms < 1) throw PreconditionError("max_terms must be positive");
}

double LatticeParams::nome_modulus() const { return std::exp(-kTwoPi * eta.imag()); }

ThetaValue theta(cplx z, const LatticeParams& p) {
  p.validate();
  const double q = p.nome_modulus();
  // After reduction |Im x| <= Im(eta)/2, so the j-th terms on both sides are
  // bounded by |q|^{j(j-2)/2}; the tail beyond N is geometric.
  auto tail = [q](int N) {
    double num = 2.0 * std::pow(q, 0.5 * (N + 1.0) * (N - 1.0));
    return num / (1.0 - std::pow(q, N + 0.5));
  };
  int N = 1;
  while (tail(N) > p.tolerance) {
    if (++N > p.max_terms) throw NumericalError("theta series cannot reach tolerance within max_terms");
  }
  LatticeSplit s = split_lattice(z, p.eta);
  const cplx x = s.reduced;
  cplx sum = 0;
  for (int n = -N; n <= N; ++n) {
    double half = 0.5 * n * (n - 1.0);
    cplx term = e(static_cast<double>(n) * x + half * p.eta);
    sum += (n % 2 == 0) ? term : -term;
  }
  // theta(x + P eta) = (-1)^P e(-P x - P(P-1) eta/2) theta(x)
  const double P = static_cast<double>(s.p);
  cplx factor = e(-P * x - 0.5 * P * (P - 1.0) * p.eta);
  if (s.p % 2 != 0) factor = -factor;
  return {factor * sum, 2 * N + 1, tail(N)};
}

ThetaValue theta_alpha(long long alpha, int n, cplx z, const LatticeParams& p) {
  if (n < 1) throw PreconditionError("theta_alpha needs n >= 1");
  const double a = static_cast<double>(alpha), nn = n;
  cplx prod = e(a * z + a / (2 * nn) + a * (a - nn) * p.eta / (2 * nn));
  ThetaValue out{0, 0, 0};
  for (int j = 0; j < n; ++j) {
    ThetaValue t = theta(z + j / nn + a * p.eta / nn, p);
    prod *= t.value;
    out.truncation_terms_used += t.truncation_terms_used;
    out.tail_bound += t.tail_bound;
  }
  out.value = prod;
  return out;
}

cplx HeisenbergImage::phase() const { return e(static_cast<double>(phase_num) / n); }

HeisenbergImage h1_word_action(std::string_view word, long long alpha, int n) {
  if (n < 1) throw PreconditionError("Heisenberg action needs n >= 1");
  long long idx = alpha, ph = 0;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    switch (*it) {
      case 'S': ph += idx; break;
      case 's': ph -= idx; break;
      case 'T': ++idx; break;
      case 't': --idx; break;
      default: throw PreconditionError(std::string("unknown Heisenberg letter '") + *it + "'");
    }
  }
  auto mod = [n](long long x) { return ((x % n) + n) % n; };
  return {mod(idx), mod(ph), n};
}

cplx h1_word_numeric(std::string_view word, long long alpha, int n, cplx z, const LatticeParams& p) {
  if (n < 1) throw PreconditionError("Heisenberg action needs n >= 1");
  const double nn = n;
  const cplx shift = p.eta / nn;
  const cplx a = 1.0 / (2 * nn) - (nn - 1.0) * p.eta / (2 * nn);
  std::function<cplx(std::size_t, cplx)> apply = [&](std::size_t pos, cplx w) -> cplx {
    if (pos == word.size()) return theta_alpha(alpha, n, w, p).value;
    switch (word[pos]) {
      case 'S': return apply(pos + 1, w + 1.0 / nn);
      case 's': return apply(pos + 1, w - 1.0 / nn);
      case 'T': return e(w + a) * apply(pos + 1, w + shift);
      case 't': return e(-(w - shift) - a) * apply(pos + 1, w - shift);
      default: throw PreconditionError(std::string("unknown Heisenberg letter '") + word[pos] + "'");
    }
  };
  return apply(0, z);
}

}  // namespace qnk
