#pragma once

// Inline polynomial syntax: "c*x1^a*x2^b + ... - ...". Coefficients may be
// integers, fractions p/q or decimals and are read exactly. The complex form
// also accepts a<j> and abar<j>.

#include "sbtlab/poly.hpp"

#include <stdexcept>
#include <string>

namespace sbt {

class PolyParseError : public std::invalid_argument {
 public:
  PolyParseError(std::size_t column, const std::string& what);
  /// 1-based column of the offending character.
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

RealPoly<Rational> parse_real_poly(const std::string& text);
CxPoly<Rational> parse_cx_poly(const std::string& text);

/// Text form that parse_real_poly reads back to the same polynomial.
std::string format_poly(const RealPoly<Rational>& p);
std::string format_poly(const CxPoly<Rational>& q);
/// Doubles are written in the shortest form that reads back to the same value.
std::string format_poly(const RealPoly<double>& p);
std::string format_poly(const CxPoly<double>& q);

}  // namespace sbt
