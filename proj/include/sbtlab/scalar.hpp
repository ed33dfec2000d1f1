#pragma once

// Coefficient fields: exact rationals (GMP) and binary64, plus a complex pair
// type that works over either.

#include <boost/multiprecision/gmp.hpp>

#include <complex>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace sbt {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class S>
concept Field = std::same_as<S, Rational> || std::same_as<S, double>;

inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  return Rational(num) / Rational(den);
}

/// Parses "p", "p/q", or a decimal literal ("0.25", "-1.5e-3") exactly.
Rational parse_rational(const std::string& text);

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Rational& x) { return x.is_zero(); }

template <Field S>
S from_rational(const Rational& r) {
  if constexpr (std::same_as<S, Rational>) {
    return r;
  } else {
    return r.convert_to<double>();
  }
}

template <Field S>
S from_int(long long v) {
  return S(v);
}

/// Complex number over an exact or float field. Exact mode gives
/// Gaussian-rational arithmetic.
template <Field S>
struct Complex {
  S re{0};
  S im{0};

  Complex() = default;
  Complex(S r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(S r, S i) : re(std::move(r)), im(std::move(i)) {}
  template <std::integral I>
  Complex(I r) : re(static_cast<long long>(r)), im(0) {}  // NOLINT

  static Complex i() { return Complex(S(0), S(1)); }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    S r = re * o.re - im * o.im;
    S i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  Complex& operator*=(const S& s) {
    re *= s;
    im *= s;
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    S den = o.re * o.re + o.im * o.im;
    if (is_zero(den)) throw std::domain_error("complex division by zero");
    S r = (re * o.re + im * o.im) / den;
    S i = (im * o.re - re * o.im) / den;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator*(const S& s, Complex a) { return a *= s; }
  friend Complex operator*(Complex a, const S& s) { return a *= s; }
  friend Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

template <Field S>
Complex<S> conj(const Complex<S>& z) {
  return Complex<S>(z.re, -z.im);
}

template <Field S>
bool is_zero(const Complex<S>& z) {
  return is_zero(z.re) && is_zero(z.im);
}

template <Field S>
std::complex<double> to_std(const Complex<S>& z) {
  return {to_double(z.re), to_double(z.im)};
}

template <Field S>
Complex<S> from_std(std::complex<double> z) requires std::same_as<S, double> {
  return Complex<S>(z.real(), z.imag());
}

/// Integer power by repeated squaring; works for S and Complex<S>.
template <class T>
T ipow(T base, unsigned exponent) {
  T result(1);
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

template <class T>
struct field_of;
template <Field S>
struct field_of<S> {
  using type = S;
};
template <Field S>
struct field_of<Complex<S>> {
  using type = S;
};
template <class T>
using field_of_t = typename field_of<T>::type;

/// Magnitude of a coefficient as a double (absolute value / modulus).
inline double magnitude(double x) { return x < 0 ? -x : x; }
inline double magnitude(const Rational& x) { return magnitude(to_double(x)); }
template <Field S>
double magnitude(const Complex<S>& z) {
  return std::abs(to_std(z));
}

std::string to_string(const Rational& r);

}  // namespace sbt
