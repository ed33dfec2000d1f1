#pragma once

// Sparse multivariate polynomials over real variables x_j (RealPoly) and over
// complexified pairs (a_j, abar_j) (CxPoly).

#include "sbtlab/multi_index.hpp"
#include "sbtlab/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sbt {

template <class Key, class Coef>
class SparsePoly {
 public:
  using key_type = Key;
  using coef_type = Coef;
  using map_type = std::map<Key, Coef>;

  SparsePoly() = default;
  explicit SparsePoly(std::size_t nvars) : nvars_(nvars) {}

  static SparsePoly constant(const Coef& c, std::size_t nvars = 0) {
    SparsePoly p(nvars);
    p.add_term(Key{}, c);
    return p;
  }
  static SparsePoly monomial(const Key& key, const Coef& c = Coef(1)) {
    SparsePoly p(key.size());
    p.add_term(key, c);
    return p;
  }

  const map_type& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Declared ambient variable count; never less than the variables in use.
  std::size_t nvars() const { return nvars_; }
  SparsePoly& set_nvars(std::size_t n) {
    for (const auto& [k, c] : terms_)
      if (k.size() > n) throw std::invalid_argument("set_nvars below variables in use");
    nvars_ = n;
    return *this;
  }

  /// Max total degree over the support; 0 for constants and for the zero polynomial.
  unsigned degree() const { return terms_.empty() ? 0U : terms_.rbegin()->first.degree(); }

  Coef coeff(const Key& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Coef(0) : it->second;
  }

  /// Accumulates c into the coefficient of key, dropping it if it cancels.
  void add_term(const Key& key, const Coef& c) {
    if (sbt::is_zero(c)) return;
    nvars_ = std::max(nvars_, key.size());
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (sbt::is_zero(it->second)) terms_.erase(it);
    }
  }

  SparsePoly& operator+=(const SparsePoly& o) {
    nvars_ = std::max(nvars_, o.nvars_);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  SparsePoly& operator-=(const SparsePoly& o) {
    nvars_ = std::max(nvars_, o.nvars_);
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  template <class Scalar>
  SparsePoly& operator*=(const Scalar& s)
    requires requires(Coef c, Scalar x) { c *= x; }
  {
    if (sbt::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }

  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator-(SparsePoly a) {
    for (auto& [k, c] : a.terms_) c = -c;
    return a;
  }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly out(std::max(a.nvars_, b.nvars_));
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) out.add_term(ka + kb, ca * cb);
    return out;
  }
  template <class Scalar>
  friend SparsePoly operator*(const Scalar& s, SparsePoly p)
    requires requires(Coef c, Scalar x) { c *= x; }
  {
    return p *= s;
  }

  /// Equality of the polynomials as functions; the declared ambient count is ignored.
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms_ == b.terms_; }

  /// Applies f to every coefficient, rebuilding (so zeros produced by f are dropped).
  template <class F>
  auto map_coefficients(F f) const {
    using Out = decltype(f(std::declval<const Coef&>()));
    SparsePoly<Key, Out> out(nvars_);
    for (const auto& [k, c] : terms_) out.add_term(k, f(c));
    return out;
  }

  /// Keeps terms whose key satisfies pred.
  template <class Pred>
  SparsePoly filter(Pred pred) const {
    SparsePoly out(nvars_);
    for (const auto& [k, c] : terms_)
      if (pred(k)) out.terms_.emplace(k, c);
    return out;
  }

 private:
  map_type terms_;
  std::size_t nvars_ = 0;
};

template <Field S>
using RealPoly = SparsePoly<MultiIndex, S>;
template <Field S>
using CxPoly = SparsePoly<BiIndex, Complex<S>>;

// ---------------------------------------------------------------------------
// Construction helpers

/// The coordinate x_{var+1}.
template <Field S>
RealPoly<S> variable(std::size_t var) {
  return RealPoly<S>::monomial(MultiIndex::unit(var));
}

template <Field S>
CxPoly<S> var_a(std::size_t var) {
  return CxPoly<S>::monomial(BiIndex{MultiIndex::unit(var), {}});
}

template <Field S>
CxPoly<S> var_abar(std::size_t var) {
  return CxPoly<S>::monomial(BiIndex{{}, MultiIndex::unit(var)});
}

// ---------------------------------------------------------------------------
// Mode conversion (always explicit)

template <Field To, Field From>
RealPoly<To> convert(const RealPoly<From>& p) {
  return p.map_coefficients([](const From& c) {
    if constexpr (std::same_as<To, From>) {
      return c;
    } else if constexpr (std::same_as<To, double>) {
      return to_double(c);
    } else {
      return Rational(c);
    }
  });
}

template <Field To, Field From>
CxPoly<To> convert(const CxPoly<From>& p) {
  return p.map_coefficients([](const Complex<From>& c) {
    if constexpr (std::same_as<To, From>) {
      return c;
    } else if constexpr (std::same_as<To, double>) {
      return Complex<double>(to_double(c.re), to_double(c.im));
    } else {
      return Complex<Rational>(Rational(c.re), Rational(c.im));
    }
  });
}

// ---------------------------------------------------------------------------
// Complexification

/// x_j -> a_j. The result is holomorphic and restricts back to p on real points.
template <Field S>
CxPoly<S> holomorphic_extend(const RealPoly<S>& p) {
  CxPoly<S> out(p.nvars());
  for (const auto& [k, c] : p.terms()) out.add_term(BiIndex{k, {}}, Complex<S>(c));
  return out;
}

/// Swaps a/abar exponents and conjugates coefficients.
template <Field S>
CxPoly<S> conjugate(const CxPoly<S>& q) {
  CxPoly<S> out(q.nvars());
  for (const auto& [k, c] : q.terms()) out.add_term(k.swapped(), conj(c));
  return out;
}

template <Field S>
bool is_holomorphic(const CxPoly<S>& q) {
  return std::all_of(q.terms().begin(), q.terms().end(),
                     [](const auto& kv) { return kv.first.is_holomorphic(); });
}

/// q * conjugate(q) for holomorphic q, i.e. |q|^2 as a polynomial in (a, abar).
template <Field S>
CxPoly<S> mod_square(const CxPoly<S>& q) {
  if (!is_holomorphic(q)) throw std::invalid_argument("mod_square requires a holomorphic polynomial");
  return q * conjugate(q);
}

/// Restriction to real points a = abar = x, keeping complex coefficients.
template <Field S>
SparsePoly<MultiIndex, Complex<S>> restrict_to_real(const CxPoly<S>& q) {
  SparsePoly<MultiIndex, Complex<S>> out(q.nvars());
  for (const auto& [k, c] : q.terms()) out.add_term(k.a + k.abar, c);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation and dilation

template <class Key>
std::size_t key_extent(const Key& k) {
  return k.size();
}

/// Evaluates a real-variable polynomial at a (possibly complex) point.
template <Field S, class Coef>
Complex<S> evaluate(const SparsePoly<MultiIndex, Coef>& p, std::span<const Complex<S>> point) {
  Complex<S> total;
  for (const auto& [k, c] : p.terms()) {
    if (k.size() > point.size()) throw std::invalid_argument("evaluation point has too few coordinates");
    Complex<S> term(c);
    for (std::size_t j = 0; j < k.size(); ++j) term *= ipow(point[j], k[j]);
    total += term;
  }
  return total;
}

/// Evaluates q(a, abar) at abar = conj(a).
template <Field S>
Complex<S> evaluate(const CxPoly<S>& q, std::span<const Complex<S>> point) {
  Complex<S> total;
  for (const auto& [k, c] : q.terms()) {
    if (k.size() > point.size()) throw std::invalid_argument("evaluation point has too few coordinates");
    Complex<S> term = c;
    for (std::size_t j = 0; j < k.a.size(); ++j) term *= ipow(point[j], k.a[j]);
    for (std::size_t j = 0; j < k.abar.size(); ++j) term *= ipow(conj(point[j]), k.abar[j]);
    total += term;
  }
  return total;
}

/// x -> lambda x: each degree-m monomial is scaled by lambda^m.
template <Field S>
RealPoly<S> dilate(const RealPoly<S>& p, const S& lambda) {
  RealPoly<S> out(p.nvars());
  for (const auto& [k, c] : p.terms()) out.add_term(k, c * ipow(lambda, k.degree()));
  return out;
}

/// a -> lambda a, so abar -> conj(lambda) abar. On holomorphic polynomials
/// this scales each degree-m monomial by lambda^m.
template <Field S>
CxPoly<S> dilate(const CxPoly<S>& q, const Complex<S>& lambda) {
  CxPoly<S> out(q.nvars());
  const Complex<S> lambda_bar = conj(lambda);
  for (const auto& [k, c] : q.terms())
    out.add_term(k, c * ipow(lambda, k.a.degree()) * ipow(lambda_bar, k.abar.degree()));
  return out;
}

/// Largest coefficient magnitude; the polynomial norm used for convergence.
template <class Key, class Coef>
double max_abs_coefficient(const SparsePoly<Key, Coef>& p) {
  double m = 0;
  for (const auto& [k, c] : p.terms()) m = std::max(m, magnitude(c));
  return m;
}

template <class Key, class Coef>
double max_abs_difference(const SparsePoly<Key, Coef>& p, const SparsePoly<Key, Coef>& q) {
  return max_abs_coefficient(p - q);
}

// ---------------------------------------------------------------------------
// Seeded random polynomials for test suites.

/// Random polynomial in k variables with total degree exactly `degree`
/// (when degree > 0): small integer coefficients over a random support.
template <Field S>
RealPoly<S> random_real_poly(std::size_t k, unsigned degree, std::mt19937_64& rng, std::size_t max_terms = 8) {
  const std::vector<MultiIndex> basis = graded_monomials(k, degree);
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<int> coef(-4, 4);
  RealPoly<S> p(k);
  // force a top-degree term so the degree is what was asked for
  std::vector<const MultiIndex*> top;
  for (const auto& m : basis)
    if (m.degree() == degree) top.push_back(&m);
  std::uniform_int_distribution<std::size_t> pick_top(0, top.size() - 1);
  int lead = 0;
  while (lead == 0) lead = coef(rng);
  p.add_term(*top[pick_top(rng)], S(lead));
  for (std::size_t t = 1; t < max_terms; ++t) {
    const int c = coef(rng);
    if (c != 0) p.add_term(basis[pick(rng)], S(c));
  }
  while (p.degree() != degree) p.add_term(*top[0], S(1));
  return p;
}

}  // namespace sbt
