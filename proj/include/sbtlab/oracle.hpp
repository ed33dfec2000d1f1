#pragma once

// Independent cross-checks for the moment routines: Monte-Carlo sampling on
// the sphere, Gauss-Hermite tensor quadrature, and Wick/Isserlis pairings.

#include "sbtlab/poly.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace sbt {

struct OracleEstimate {
  double value = 0;
  double im = 0;          // imaginary part, complex families only
  double std_error = 0;
  std::uint64_t samples_or_order = 0;
  std::uint64_t seed = 0;
};

/// Mean of p over `samples` uniform points of S^{N-1}(√N), obtained by
/// normalising standard Gaussian vectors. Samples are split into a fixed
/// number of chunks with their own mt19937_64 streams, so the estimate does
/// not depend on the thread count.
OracleEstimate mc_sphere_moment(const RealPoly<double>& p, int N, std::uint64_t samples, std::uint64_t seed);

/// Probabilists' Gauss-Hermite rule for N(0, 1): nodes and weights summing to 1.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussHermiteRule gauss_hermite(unsigned order);

struct QuadGauss {
  double t = 1;
};
struct QuadXi {
  double s = 1;
  double t = 1;
};
struct QuadGamma {
  double T = 1;
};
using QuadFamily = std::variant<QuadGauss, QuadXi, QuadGamma>;

/// Tensor Gauss-Hermite quadrature with each coordinate scaled to its
/// variance. Exact up to per-coordinate degree 2 * order - 1; a lower order
/// than the polynomial needs throws std::invalid_argument.
OracleEstimate quad_gauss_moment(const RealPoly<double>& p, const QuadFamily& family, unsigned order);
OracleEstimate quad_gauss_moment(const CxPoly<double>& q, const QuadFamily& family, unsigned order);

/// Gaussian moment with covariance t I as a sum over perfect pairings of
/// each monomial's factors.
template <Field S>
S isserlis_moment(const RealPoly<S>& p, const S& t);

}  // namespace sbt
