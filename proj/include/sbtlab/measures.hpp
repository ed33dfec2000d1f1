#pragma once

// Moments of polynomials against the Gaussian, complex-Gaussian, spherical
// and quadric measures.

#include "sbtlab/diffops.hpp"
#include "sbtlab/poly.hpp"
#include "sbtlab/semigroup.hpp"

#include <map>
#include <mutex>
#include <string>
#include <variant>

namespace sbt {

// ---------------------------------------------------------------------------
// Gaussian on R^k with covariance t I

/// (e^{(t/2)Δ} p)(0); exact when S is Rational.
template <Field S>
S gaussian_moment(const RealPoly<S>& p, const S& t) {
  if (!(t > 0)) throw std::invalid_argument("Gaussian variance t must be positive");
  return exp_nilpotent(OperatorSpec::laplacian(), t / S(2), p).coeff(MultiIndex{});
}

/// E[x^{2r}] = (2r-1)!! var^r for a centred normal; zero for odd powers.
template <Field S>
S normal_moment(unsigned power, const S& var) {
  if (power % 2 != 0) return S(0);
  S out(1);
  for (unsigned j = 1; j < power; j += 2) out *= S(static_cast<long long>(j)) * var;
  return out;
}

// ---------------------------------------------------------------------------
// Complex Gaussians: a = u + iv with independent centred u, v per coordinate

/// E[(u+iv)^alpha (u-iv)^beta] for one coordinate.
template <Field S>
Complex<S> complex_normal_moment(unsigned alpha, unsigned beta, const S& var_u, const S& var_v);

/// Moment of q when every coordinate has Var u = var_u and Var v = var_v.
template <Field S>
Complex<S> complex_gaussian_moment(const CxPoly<S>& q, const S& var_u, const S& var_v);

/// ξ_{s,t}: Var u = (2s - t)/2, Var v = t/2; requires 0 < t < 2s.
template <Field S>
Complex<S> xi_moment(const CxPoly<S>& q, const S& s, const S& t);

/// γ_T: Var u = (e^T + 1)/2, Var v = (e^T - 1)/2; requires T > 0.
Complex<double> gamma_moment(const CxPoly<double>& q, double T);

// ---------------------------------------------------------------------------
// Normalised surface measure on S^{N-1}(b)

/// Moment of x^alpha: zero if any exponent is odd, otherwise
/// prod_i (alpha_i - 1)!! * prod_{j<m} b^2 / (N + 2j) with |alpha| = 2m.
template <Field S>
S sphere_monomial_moment(const MultiIndex& alpha, int N, const S& b2) {
  S out(1);
  unsigned m = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const unsigned e = alpha[i];
    if (e % 2 != 0) return S(0);
    for (unsigned j = 1; j < e; j += 2) out *= S(static_cast<long long>(j));
    m += e / 2;
  }
  for (unsigned j = 0; j < m; ++j) out *= b2 / S(static_cast<long long>(N) + 2LL * j);
  return out;
}

template <Field S>
S sphere_moment(const RealPoly<S>& p, int N, const S& b2) {
  if (N < 1) throw std::invalid_argument("sphere dimension N must be at least 1");
  if (!(b2 > 0)) throw std::invalid_argument("b^2 must be positive");
  if (p.nvars() > static_cast<std::size_t>(N))
    throw std::domain_error("polynomial in " + std::to_string(p.nvars()) + " variables on a sphere in R^" +
                            std::to_string(N));
  S out(0);
  for (const auto& [k, c] : p.terms()) out += c * sphere_monomial_moment(k, N, b2);
  return out;
}

/// Sphere moment of a real-variable polynomial with complex coefficients.
Complex<double> sphere_moment(const SparsePoly<MultiIndex, Complex<double>>& p, int N, double b2);

// ---------------------------------------------------------------------------
// Quadric measure ν_{b,T}: ∫ q dν = ∫ (e^{(T/b^2) Γ_N} q)(x) dσ̄_b(x)

/// The moment functional of ν for fixed (N, b^2, T). Monomial moments are
/// memoised, so one functional should be reused across many polynomials.
/// Thread-safe.
class QuadricMoments {
 public:
  QuadricMoments(int N, double T, const Rational& b2);
  QuadricMoments(int N, double T) : QuadricMoments(N, T, Rational(N)) {}

  Complex<double> operator()(const CxPoly<double>& q) const;
  Complex<double> monomial(const BiIndex& m, std::size_t k) const;

  int N() const { return N_; }
  double T() const { return T_; }

 private:
  int N_;
  double T_;
  Rational b2_;
  double b2d_;
  OperatorSpec gamma_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<BiIndex, std::size_t>, Complex<double>> memo_;
};

Complex<double> quadric_moment(const CxPoly<double>& q, int N, double T);
Complex<double> quadric_moment(const CxPoly<double>& q, int N, double T, const Rational& b2);

// ---------------------------------------------------------------------------
// Measure descriptors

struct GaussMeasure {
  double t = 1;
};
struct XiMeasure {
  double s = 1;
  double t = 1;
};
struct GammaMeasure {
  double T = 1;
};
struct SphereMeasure {
  int N = 2;
  Rational b2{2};
};
struct QuadricMeasure {
  int N = 2;
  Rational b2{2};
  double T = 1;
};

using MeasureSpec = std::variant<GaussMeasure, XiMeasure, GammaMeasure, SphereMeasure, QuadricMeasure>;

/// Throws std::invalid_argument if the parameters violate the family's constraints.
void validate(const MeasureSpec& m);
std::string measure_name(const MeasureSpec& m);
bool is_complex_family(const MeasureSpec& m);

Complex<double> moment(const RealPoly<double>& p, const MeasureSpec& m);
Complex<double> moment(const CxPoly<double>& q, const MeasureSpec& m);

/// ∫ q1 conj(q2) dm.
Complex<double> inner_product(const RealPoly<double>& q1, const RealPoly<double>& q2, const MeasureSpec& m);
Complex<double> inner_product(const CxPoly<double>& q1, const CxPoly<double>& q2, const MeasureSpec& m);

}  // namespace sbt
