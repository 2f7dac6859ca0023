#pragma once

#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qnk {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// e(x) = exp(2 pi i x); the real part is reduced mod 1 first.
cplx e(cplx x);
inline cplx e(double x) { return e(cplx(x, 0.0)); }

/// Parses "a+bi", "bi", "a", "-a-bi", "i".
cplx parse_complex(const std::string& text);
/// Comma-separated list of complex numbers.
CVector parse_complex_list(const std::string& text);
std::string format_complex(cplx z);

/// Writes z = x + m + p*eta with m, p integers and Im x / Im eta in [-1/2, 1/2).
struct LatticeSplit {
  cplx reduced;
  long long m;  // real-direction integer
  long long p;  // eta-direction integer
};
LatticeSplit split_lattice(cplx z, cplx eta);

/// If z lies in (1/n)(Z + Z eta) within tol, returns true.
bool in_torsion_lattice(cplx z, cplx eta, long long n, double tol = 1e-9);

/// Fubini-Study chordal distance between projective points, computed from 2x2 minors.
double chordal_distance(std::span<const cplx> u, std::span<const cplx> v);

/// Scales v so its largest-magnitude entry is 1; returns false if v is zero.
bool normalize_projective(std::span<cplx> v);

}  // namespace qnk
