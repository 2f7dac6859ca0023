#include "qnk/epoint.hpp"

namespace qnk {
namespace {

Rational frac(const Rational& x) {
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  return Rational(mod_floor(num, den), den);
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt p(s.substr(0, slash)), q(s.substr(slash + 1));
    if (q == 0) throw PreconditionError("zero denominator in '" + s + "'");
    return Rational(p, q);
  } catch (const std::runtime_error&) {
    throw PreconditionError("cannot parse rational '" + s + "'");
  }
}

}  // namespace

EPoint::EPoint(Rational a, Rational b) : a_(frac(a)), b_(frac(b)) {}

EPoint EPoint::parse(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw PreconditionError("E-point must be 'p/q,r/s', got '" + text + "'");
  return EPoint(parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1)));
}

std::strong_ordering EPoint::operator<=>(const EPoint& o) const {
  if (a_ < o.a_) return std::strong_ordering::less;
  if (a_ > o.a_) return std::strong_ordering::greater;
  if (b_ < o.b_) return std::strong_ordering::less;
  if (b_ > o.b_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string EPoint::str() const { return a_.str() + "," + b_.str(); }

}  // namespace qnk
