#pragma once

#include "sbtlab/poly_parse.hpp"

#include <doctest.h>

namespace sbt::testing {

inline RealPoly<Rational> rp(const char* text) { return parse_real_poly(text); }
inline RealPoly<double> rpd(const char* text) { return convert<double>(parse_real_poly(text)); }
inline CxPoly<Rational> cp(const char* text) { return parse_cx_poly(text); }
inline CxPoly<double> cpd(const char* text) { return convert<double>(parse_cx_poly(text)); }

inline doctest::Approx near(double x, double eps = 1e-12) { return doctest::Approx(x).epsilon(eps); }

}  // namespace sbt::testing
