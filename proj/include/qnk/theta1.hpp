#pragma once

#include "qnk/numeric.hpp"

#include <string_view>

namespace qnk {

struct LatticeParams {
  cplx eta{0.0, 0.8};
  cplx tau{0.0, 0.0};
  double tolerance = 1e-12;
  int max_terms = 512;

  void validate() const;
  double nome_modulus() const;  // |e(eta)|
};

struct ThetaValue {
  cplx value;
  int truncation_terms_used = 0;
  // Bound on the truncation error of the reduced series; the error of `value`
  // is at most tail_bound times the modulus of the quasi-periodicity factor.
  double tail_bound = 0.0;
};

/// theta(z) = sum_n (-1)^n e(n z + n(n-1) eta / 2).
ThetaValue theta(cplx z, const LatticeParams& p);

/// theta_alpha(z) = e(alpha z + alpha/2n + alpha(alpha-n) eta/2n) prod_{j<n} theta(z + j/n + alpha eta/n).
/// alpha is used as given (not reduced mod n).
ThetaValue theta_alpha(long long alpha, int n, cplx z, const LatticeParams& p);

/// Result of a Heisenberg word acting on theta_alpha: phase * theta_index, phase = e(phase_num/n).
struct HeisenbergImage {
  long long index;
  long long phase_num;
  int n;
  cplx phase() const;
};

/// Word letters: S, T and their inverses s, t. The word is an operator product,
/// so the rightmost letter acts first.
HeisenbergImage h1_word_action(std::string_view word, long long alpha, int n);

/// (W . theta_alpha)(z) evaluated from the operator formulas
/// (S f)(z) = f(z + 1/n), (T f)(z) = e(z + 1/2n - (n-1)eta/2n) f(z + eta/n).
cplx h1_word_numeric(std::string_view word, long long alpha, int n, cplx z, const LatticeParams& p);

/// |f(z)| relative to |f(z + 0.1)|, the convention for "numerically zero".
template <class F>
double relative_to_local_scale(F&& f, cplx z) {
  double scale = std::abs(f(z + 0.1));
  double here = std::abs(f(z));
  return scale > 0 ? here / scale : here;
}

}  // namespace qnk
