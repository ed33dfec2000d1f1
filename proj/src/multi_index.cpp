#include "sbtlab/multi_index.hpp"

#include "sbtlab/scalar.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace sbt {

MultiIndex::MultiIndex(std::initializer_list<unsigned> exponents)
    : MultiIndex(std::span<const unsigned>(exponents.begin(), exponents.size())) {}

MultiIndex::MultiIndex(std::span<const unsigned> exponents) {
  exps_.reserve(exponents.size());
  for (unsigned e : exponents) {
    if (e > std::numeric_limits<std::uint16_t>::max()) throw std::out_of_range("exponent too large");
    exps_.push_back(static_cast<std::uint16_t>(e));
    degree_ += e;
  }
  trim();
}

MultiIndex MultiIndex::unit(std::size_t var, unsigned power) {
  MultiIndex m;
  return m.with(var, power);
}

void MultiIndex::trim() {
  while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
}

unsigned MultiIndex::partial_degree(std::size_t first, std::size_t count) const {
  unsigned d = 0;
  for (std::size_t j = first; j < first + count && j < exps_.size(); ++j) d += exps_[j];
  return d;
}

MultiIndex MultiIndex::with(std::size_t var, unsigned exponent) const {
  if (exponent > std::numeric_limits<std::uint16_t>::max()) throw std::out_of_range("exponent too large");
  MultiIndex out = *this;
  if (var >= out.exps_.size()) {
    if (exponent == 0) return out;
    out.exps_.resize(var + 1, 0);
  }
  out.degree_ = out.degree_ - out.exps_[var] + exponent;
  out.exps_[var] = static_cast<std::uint16_t>(exponent);
  out.trim();
  return out;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  MultiIndex out = exps_.size() >= other.exps_.size() ? *this : other;
  const MultiIndex& shorter = exps_.size() >= other.exps_.size() ? other : *this;
  for (std::size_t j = 0; j < shorter.exps_.size(); ++j) {
    out.exps_[j] = static_cast<std::uint16_t>(out.exps_[j] + shorter.exps_[j]);
  }
  out.degree_ = degree_ + other.degree_;
  return out;
}

std::vector<unsigned> MultiIndex::to_vector(std::size_t min_length) const {
  std::vector<unsigned> v(std::max(min_length, exps_.size()), 0U);
  std::copy(exps_.begin(), exps_.end(), v.begin());
  return v;
}

std::string MultiIndex::to_string(char symbol) const {
  std::string out;
  for (std::size_t j = 0; j < exps_.size(); ++j) {
    if (exps_[j] == 0) continue;
    if (!out.empty()) out += '*';
    out += symbol;
    out += std::to_string(j + 1);
    if (exps_[j] > 1) out += '^' + std::to_string(exps_[j]);
  }
  return out.empty() ? "1" : out;
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
  const std::size_t n = std::max(a.exps_.size(), b.exps_.size());
  for (std::size_t j = 0; j < n; ++j) {
    // larger exponent on an earlier variable sorts first
    if (auto c = b[j] <=> a[j]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const BiIndex& x, const BiIndex& y) {
  if (auto c = x.degree() <=> y.degree(); c != 0) return c;
  if (auto c = y.a.degree() <=> x.a.degree(); c != 0) return c;
  if (auto c = x.a <=> y.a; c != 0) return c;
  return x.abar <=> y.abar;
}

namespace {

void enumerate(std::size_t nvars, unsigned remaining, std::vector<unsigned>& current, std::size_t var,
               std::vector<MultiIndex>& out) {
  if (var == nvars) {
    out.emplace_back(current);
    return;
  }
  for (unsigned e = 0; e <= remaining; ++e) {
    current[var] = e;
    enumerate(nvars, remaining - e, current, var + 1, out);
  }
  current[var] = 0;
}

}  // namespace

std::vector<MultiIndex> graded_monomials(std::size_t nvars, unsigned max_degree) {
  std::vector<MultiIndex> out;
  if (nvars == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<unsigned> current(nvars, 0U);
  enumerate(nvars, max_degree, current, 0, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BiIndex> graded_bimonomials(std::size_t k, unsigned max_degree) {
  // enumerate in 2k variables, then split into (a, abar)
  std::vector<BiIndex> out;
  for (const MultiIndex& m : graded_monomials(2 * k, max_degree)) {
    std::vector<unsigned> a(k), abar(k);
    for (std::size_t j = 0; j < k; ++j) {
      a[j] = m[j];
      abar[j] = m[k + j];
    }
    out.push_back({MultiIndex(a), MultiIndex(abar)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t graded_dimension(std::size_t nvars, unsigned max_degree) {
  // C(n + l, l) computed incrementally; exact for the sizes we allow
  long double c = 1;
  for (unsigned i = 1; i <= max_degree; ++i) c = c * static_cast<long double>(nvars + i) / i;
  return static_cast<std::size_t>(c + 0.5L);
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s += ch;
  if (s.empty()) throw std::invalid_argument("empty number");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den.is_zero()) throw std::domain_error("zero denominator in '" + text + "'");
    return num / den;
  }
  bool negative = false;
  std::size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = s[pos] == '-';
    ++pos;
  }
  std::string digits;
  long long exponent10 = 0;
  bool seen_digit = false;
  bool after_point = false;
  for (; pos < s.size(); ++pos) {
    char ch = s[pos];
    if (ch >= '0' && ch <= '9') {
      digits += ch;
      seen_digit = true;
      if (after_point) --exponent10;
    } else if (ch == '.' && !after_point) {
      after_point = true;
    } else if (ch == 'e' || ch == 'E') {
      break;
    } else {
      throw std::invalid_argument("malformed number '" + text + "'");
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed number '" + text + "'");
  if (pos < s.size()) {
    std::size_t used = 0;
    const std::string tail = s.substr(pos + 1);
    long long e = 0;
    try {
      e = std::stoll(tail, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed exponent in '" + text + "'");
    }
    if (used != tail.size()) throw std::invalid_argument("malformed exponent in '" + text + "'");
    exponent10 += e;
  }
  // mpz reads a leading 0 as an octal prefix
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  boost::multiprecision::mpz_int mant(digits);
  Rational value(mant);
  boost::multiprecision::mpz_int scale = boost::multiprecision::pow(boost::multiprecision::mpz_int(10),
                                                                    static_cast<unsigned>(exponent10 < 0 ? -exponent10 : exponent10));
  if (exponent10 < 0) {
    value /= Rational(scale);
  } else {
    value *= Rational(scale);
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace sbt
