#pragma once

#include "qnk/bigint.hpp"

#include <compare>
#include <string>
#include <vector>

namespace qnk {

/// Point a + b*eta of E = C/(Z + Z eta), stored exactly with a, b in [0,1).
class EPoint {
 public:
  EPoint() = default;
  EPoint(Rational a, Rational b);

  static EPoint zero() { return EPoint(); }
  /// Parses "p/q,r/s" (either part may be an integer).
  static EPoint parse(const std::string& text);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  EPoint operator+(const EPoint& o) const { return EPoint(a_ + o.a_, b_ + o.b_); }
  EPoint operator-(const EPoint& o) const { return EPoint(a_ - o.a_, b_ - o.b_); }
  EPoint operator-() const { return EPoint(-a_, -b_); }
  EPoint scaled(const BigInt& m) const { return EPoint(a_ * m, b_ * m); }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool operator==(const EPoint&) const = default;
  std::strong_ordering operator<=>(const EPoint& o) const;
  std::string str() const;

 private:
  Rational a_{0};
  Rational b_{0};
};

using EVector = std::vector<EPoint>;

}  // namespace qnk
