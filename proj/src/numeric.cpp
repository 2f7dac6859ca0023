#include "qnk/numeric.hpp"

#include "qnk/bigint.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace qnk {

cplx e(cplx x) {
  double re = x.real() - std::nearbyint(x.real());
  return std::polar(std::exp(-kTwoPi * x.imag()), kTwoPi * re);
}

namespace {

double parse_real(const std::string& s, const std::string& whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw PreconditionError("cannot parse complex number '" + whole + "'");
  }
  if (used != s.size()) throw PreconditionError("cannot parse complex number '" + whole + "'");
  return v;
}

}  // namespace

cplx parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw PreconditionError("empty complex number");
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, raw), 0.0};
  s.pop_back();
  // split at the last sign that is not part of an exponent
  std::size_t cut = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      cut = i;
      break;
    }
  }
  if (cut == std::string::npos) {
    if (s.empty()) return {0.0, 1.0};
    return {0.0, parse_real(s, raw)};
  }
  return {parse_real(s.substr(0, cut), raw), parse_real(s.substr(cut), raw)};
}

CVector parse_complex_list(const std::string& text) {
  CVector out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_complex(item));
  if (out.empty()) throw PreconditionError("empty complex vector");
  return out;
}

std::string format_complex(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

LatticeSplit split_lattice(cplx z, cplx eta) {
  double p = std::floor(z.imag() / eta.imag() + 0.5);
  cplx w = z - p * eta;
  double m = std::floor(w.real() + 0.5);
  return {w - m, static_cast<long long>(m), static_cast<long long>(p)};
}

bool in_torsion_lattice(cplx z, cplx eta, long long n, double tol) {
  cplx w = z * static_cast<double>(n);
  double b = w.imag() / eta.imag();
  double a = w.real() - b * eta.real();
  return std::abs(b - std::nearbyint(b)) < tol && std::abs(a - std::nearbyint(a)) < tol;
}

double chordal_distance(std::span<const cplx> u, std::span<const cplx> v) {
  if (u.size() != v.size()) throw PreconditionError("projective points of different dimension");
  double nu = 0, nv = 0;
  for (auto x : u) nu = std::max(nu, std::abs(x));
  for (auto x : v) nv = std::max(nv, std::abs(x));
  if (nu == 0 || nv == 0) throw NumericalError("zero vector is not a projective point");
  double uu = 0, vv = 0, wedge = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cplx a = u[i] / nu, b = v[i] / nv;
    uu += std::norm(a);
    vv += std::norm(b);
    for (std::size_t j = i + 1; j < u.size(); ++j) wedge += std::norm(a * (v[j] / nv) - (u[j] / nu) * b);
  }
  return std::sqrt(wedge / (uu * vv));
}

bool normalize_projective(std::span<cplx> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  if (v.empty() || v[best] == cplx(0)) return false;
  cplx s = v[best];
  for (auto& x : v) x /= s;
  return true;
}

}  // namespace qnk
