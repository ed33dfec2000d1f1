#pragma once

// Segal-Bargmann transforms of polynomials: Euclidean B_{s,t}, sphere C_T
// (N, b^2 = N) and the large-N limit B_T, with norm checks.

#include "sbtlab/measures.hpp"
#include "sbtlab/poly.hpp"
#include "sbtlab/semigroup.hpp"

#include <cmath>
#include <string>
#include <variant>

namespace sbt {

/// (e^{(t/2)Δ} p) extended holomorphically; requires 0 < t < 2s.
template <Field S>
CxPoly<S> euclidean_sbt(const RealPoly<S>& p, const S& s, const S& t) {
  if (!(t > 0) || !(t < S(2) * s)) throw std::invalid_argument("Euclidean transform needs 0 < t < 2s");
  return holomorphic_extend(exp_nilpotent(OperatorSpec::laplacian(), t / S(2), p));
}

/// (e^{(T/2)Δ_S} p) extended holomorphically, on S^{N-1}(√N); requires k < N.
CxPoly<double> sphere_sbt(const RealPoly<double>& p, int N, double T);

/// (e^{(T/2)H} p) extended holomorphically.
CxPoly<double> limit_sbt(const RealPoly<double>& p, double T);

/// The same map by the factorization e^{(T/2)H} = e^{-(T/2)E} e^{((1-e^{-T})/2)Δ}:
/// dilate the Euclidean transform with (s, t) = (1, 1 - e^{-T}) by e^{-T/2}.
CxPoly<double> limit_sbt_factored(const RealPoly<double>& p, double T);

struct EuclideanTransform {
  double s = 1;
  double t = 1;
};
struct SphereTransform {
  int N = 2;
  double T = 1;
};
struct LimitTransform {
  double T = 1;
};
using TransformTag = std::variant<EuclideanTransform, SphereTransform, LimitTransform>;

std::string transform_name(const TransformTag& tag);

/// Applies the transform named by tag.
CxPoly<double> apply_transform(const RealPoly<double>& p, const TransformTag& tag);

struct TransformResult {
  RealPoly<double> input;
  CxPoly<double> output;
  TransformTag tag;
  double domain_norm2 = 0;
  double range_norm2 = 0;

  double abs_error() const { return std::fabs(domain_norm2 - range_norm2); }
  /// |domain - range| / domain, or the absolute error when the domain norm is 0.
  double rel_error() const { return domain_norm2 > 0 ? abs_error() / domain_norm2 : abs_error(); }
};

/// Norm of p in the domain space and of its transform in the range space:
/// μ_s / ξ_{s,t} (Euclidean), σ̄ / ν_T (sphere), μ_1 / γ_T (limit).
TransformResult unitarity_report(const RealPoly<double>& p, const TransformTag& tag);
/// Sphere case with a caller-owned quadric moment functional, reused across polynomials.
TransformResult unitarity_report(const RealPoly<double>& p, const QuadricMoments& nu);

/// |<T p1, T p2>_range - <p1, p2>_domain|.
double polarization_error(const RealPoly<double>& p1, const RealPoly<double>& p2, const TransformTag& tag);

}  // namespace sbt
