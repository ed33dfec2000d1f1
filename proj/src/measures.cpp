#include "sbtlab/measures.hpp"

#include <cmath>

namespace sbt {

namespace {

template <Field S>
S binomial(unsigned n, unsigned k) {
  S out(1);
  for (unsigned j = 1; j <= k; ++j) out = out * S(static_cast<long long>(n - k + j)) / S(static_cast<long long>(j));
  return out;
}

/// i^n
template <Field S>
Complex<S> i_power(unsigned n) {
  switch (n % 4) {
    case 0: return Complex<S>(S(1), S(0));
    case 1: return Complex<S>(S(0), S(1));
    case 2: return Complex<S>(S(-1), S(0));
    default: return Complex<S>(S(0), S(-1));
  }
}

}  // namespace

template <Field S>
Complex<S> complex_normal_moment(unsigned alpha, unsigned beta, const S& var_u, const S& var_v) {
  // (u + iv)^alpha (u - iv)^beta = sum C(alpha,i) C(beta,j) u^{i+j} i^{alpha-i} (-i)^{beta-j} v^{alpha-i+beta-j}
  Complex<S> out;
  for (unsigned i = 0; i <= alpha; ++i) {
    for (unsigned j = 0; j <= beta; ++j) {
      const unsigned pu = i + j;
      const unsigned pv = alpha - i + beta - j;
      if (pu % 2 != 0 || pv % 2 != 0) continue;
      S real = binomial<S>(alpha, i) * binomial<S>(beta, j) * normal_moment(pu, var_u) * normal_moment(pv, var_v);
      // (-i)^n = i^{3n}
      Complex<S> phase = i_power<S>(alpha - i) * i_power<S>(3 * (beta - j));
      out += phase * real;
    }
  }
  return out;
}

template <Field S>
Complex<S> complex_gaussian_moment(const CxPoly<S>& q, const S& var_u, const S& var_v) {
  Complex<S> total;
  std::map<std::pair<unsigned, unsigned>, Complex<S>> memo;
  for (const auto& [k, c] : q.terms()) {
    Complex<S> term = c;
    for (std::size_t j = 0; j < k.size() && !is_zero(term); ++j) {
      const std::pair<unsigned, unsigned> key{k.a[j], k.abar[j]};
      auto it = memo.find(key);
      if (it == memo.end()) it = memo.emplace(key, complex_normal_moment(key.first, key.second, var_u, var_v)).first;
      term *= it->second;
    }
    total += term;
  }
  return total;
}

template <Field S>
Complex<S> xi_moment(const CxPoly<S>& q, const S& s, const S& t) {
  if (!(t > 0) || !(t < S(2) * s)) throw std::invalid_argument("xi measure needs 0 < t < 2s");
  return complex_gaussian_moment(q, (S(2) * s - t) / S(2), t / S(2));
}

template Complex<double> complex_normal_moment(unsigned, unsigned, const double&, const double&);
template Complex<Rational> complex_normal_moment(unsigned, unsigned, const Rational&, const Rational&);
template Complex<double> complex_gaussian_moment(const CxPoly<double>&, const double&, const double&);
template Complex<Rational> complex_gaussian_moment(const CxPoly<Rational>&, const Rational&, const Rational&);
template Complex<double> xi_moment(const CxPoly<double>&, const double&, const double&);
template Complex<Rational> xi_moment(const CxPoly<Rational>&, const Rational&, const Rational&);

Complex<double> gamma_moment(const CxPoly<double>& q, double T) {
  if (!(T > 0)) throw std::invalid_argument("gamma measure needs T > 0");
  return complex_gaussian_moment(q, (std::exp(T) + 1) / 2, std::expm1(T) / 2);
}

Complex<double> sphere_moment(const SparsePoly<MultiIndex, Complex<double>>& p, int N, double b2) {
  if (N < 1) throw std::invalid_argument("sphere dimension N must be at least 1");
  if (!(b2 > 0)) throw std::invalid_argument("b^2 must be positive");
  if (p.nvars() > static_cast<std::size_t>(N))
    throw std::domain_error("polynomial in " + std::to_string(p.nvars()) + " variables on a sphere in R^" +
                            std::to_string(N));
  Complex<double> out;
  for (const auto& [k, c] : p.terms()) out += c * sphere_monomial_moment(k, N, b2);
  return out;
}

// ---------------------------------------------------------------------------

QuadricMoments::QuadricMoments(int N, double T, const Rational& b2)
    : N_(N), T_(T), b2_(b2), b2d_(to_double(b2)), gamma_(OperatorSpec::gamma_n(N, b2)) {
  if (!(T > 0)) throw std::invalid_argument("quadric measure needs T > 0");
}

Complex<double> QuadricMoments::monomial(const BiIndex& m, std::size_t k) const {
  const auto key = std::make_pair(m, k);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  CxPoly<double> e(k);
  e.add_term(m, Complex<double>(1.0));
  const CxPoly<double> evolved = exp_graded(gamma_, T_ / b2d_, e, k, m.degree());
  const Complex<double> v = sphere_moment(restrict_to_real(evolved), N_, b2d_);
  std::lock_guard<std::mutex> lock(mutex_);
  memo_.emplace(key, v);
  return v;
}

Complex<double> QuadricMoments::operator()(const CxPoly<double>& q) const {
  require_below_dimension(q.nvars(), N_);
  check_dimension(2 * q.nvars(), q.degree());
  Complex<double> total;
  for (const auto& [k, c] : q.terms()) total += c * monomial(k, q.nvars());
  return total;
}

Complex<double> quadric_moment(const CxPoly<double>& q, int N, double T) { return QuadricMoments(N, T)(q); }

Complex<double> quadric_moment(const CxPoly<double>& q, int N, double T, const Rational& b2) {
  return QuadricMoments(N, T, b2)(q);
}

// ---------------------------------------------------------------------------

void validate(const MeasureSpec& m) {
  std::visit(
      [](const auto& x) {
        using M = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<M, GaussMeasure>) {
          if (!(x.t > 0)) throw std::invalid_argument("Gauss measure needs t > 0");
        } else if constexpr (std::is_same_v<M, XiMeasure>) {
          if (!(x.t > 0) || !(x.t < 2 * x.s)) throw std::invalid_argument("xi measure needs 0 < t < 2s");
        } else if constexpr (std::is_same_v<M, GammaMeasure>) {
          if (!(x.T > 0)) throw std::invalid_argument("gamma measure needs T > 0");
        } else if constexpr (std::is_same_v<M, SphereMeasure>) {
          if (x.N < 2) throw std::invalid_argument("sphere measure needs N >= 2");
          if (x.b2 <= 0) throw std::invalid_argument("sphere measure needs b^2 > 0");
        } else {
          if (x.N < 2) throw std::invalid_argument("quadric measure needs N >= 2");
          if (x.b2 <= 0) throw std::invalid_argument("quadric measure needs b^2 > 0");
          if (!(x.T > 0)) throw std::invalid_argument("quadric measure needs T > 0");
        }
      },
      m);
}

std::string measure_name(const MeasureSpec& m) {
  static const char* names[] = {"gauss", "xi", "gamma", "sphere", "quadric"};
  return names[m.index()];
}

bool is_complex_family(const MeasureSpec& m) {
  return std::holds_alternative<XiMeasure>(m) || std::holds_alternative<GammaMeasure>(m) ||
         std::holds_alternative<QuadricMeasure>(m);
}

Complex<double> moment(const RealPoly<double>& p, const MeasureSpec& m) {
  validate(m);
  if (const auto* g = std::get_if<GaussMeasure>(&m)) return gaussian_moment(p, g->t);
  if (const auto* s = std::get_if<SphereMeasure>(&m)) return sphere_moment(p, s->N, to_double(s->b2));
  throw std::invalid_argument(measure_name(m) + " measure integrates polynomials in (a, abar)");
}

Complex<double> moment(const CxPoly<double>& q, const MeasureSpec& m) {
  validate(m);
  if (const auto* x = std::get_if<XiMeasure>(&m)) return xi_moment(q, x->s, x->t);
  if (const auto* g = std::get_if<GammaMeasure>(&m)) return gamma_moment(q, g->T);
  if (const auto* r = std::get_if<QuadricMeasure>(&m)) return quadric_moment(q, r->N, r->T, r->b2);
  throw std::invalid_argument(measure_name(m) + " measure integrates real-variable polynomials");
}

Complex<double> inner_product(const RealPoly<double>& q1, const RealPoly<double>& q2, const MeasureSpec& m) {
  return moment(q1 * q2, m);
}

Complex<double> inner_product(const CxPoly<double>& q1, const CxPoly<double>& q2, const MeasureSpec& m) {
  return moment(q1 * conjugate(q2), m);
}

}  // namespace sbt
