#include "sbtlab/poly_parse.hpp"

#include <cctype>
#include <charconv>

namespace sbt {

PolyParseError::PolyParseError(std::size_t column, const std::string& what)
    : std::invalid_argument("column " + std::to_string(column) + ": " + what), column_(column) {}

namespace {

class Parser {
 public:
  Parser(const std::string& text, bool complex) : s_(text), complex_(complex) {}

  CxPoly<Rational> parse() {
    CxPoly<Rational> out;
    skip();
    if (pos_ == s_.size()) fail("empty polynomial");
    bool first = true;
    while (pos_ < s_.size()) {
      Rational sign(1);
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? Rational(-1) : Rational(1);
        ++pos_;
        skip();
      } else if (!first) {
        fail(std::string("expected '+' or '-', found '") + peek() + "'");
      }
      auto [key, coef] = term();
      out.add_term(key, Complex<Rational>(coef * sign));
      first = false;
      skip();
    }
    return out;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const { throw PolyParseError(pos_ + 1, what); }

  std::pair<BiIndex, Rational> term() {
    BiIndex key;
    Rational coef(1);
    bool any = false;
    while (true) {
      skip();
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        coef *= number();
      } else if (c == 'x' || c == 'a') {
        variable(key);
      } else {
        fail(c == '\0' ? std::string("expected a factor at end of input")
                       : std::string("expected a number or variable, found '") + c + "'");
      }
      any = true;
      skip();
      if (peek() != '*') break;
      ++pos_;
    }
    if (!any) fail("empty term");
    return {key, coef};
  }

  Rational number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') ++pos_;
    };
    digits();
    if (peek() == 'e' || peek() == 'E') {
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("malformed exponent");
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    Rational value;
    try {
      value = parse_rational(s_.substr(start, pos_ - start));
    } catch (const std::exception&) {
      pos_ = start;
      fail("malformed number");
    }
    if (peek() == '/') {
      ++pos_;
      const std::size_t den_start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (den_start == pos_) fail("expected a denominator");
      const Rational den = parse_rational(s_.substr(den_start, pos_ - den_start));
      if (den == 0) {
        pos_ = den_start;
        fail("zero denominator");
      }
      value /= den;
    }
    return value;
  }

  void variable(BiIndex& key) {
    bool bar = false;
    if (peek() == 'a') {
      if (!complex_) fail("variables of a real polynomial are x1, x2, ...");
      ++pos_;
      if (s_.compare(pos_, 3, "bar") == 0) {
        bar = true;
        pos_ += 3;
      }
    } else {
      ++pos_;
    }
    const std::size_t idx_start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (idx_start == pos_) fail("expected a variable index");
    const unsigned long index = std::stoul(s_.substr(idx_start, pos_ - idx_start));
    if (index == 0 || index > 4096) {
      pos_ = idx_start;
      fail("variable indices start at 1");
    }
    unsigned power = 1;
    skip();
    if (peek() == '^') {
      ++pos_;
      skip();
      const std::size_t pw_start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (pw_start == pos_) fail("expected an exponent");
      const unsigned long pw = std::stoul(s_.substr(pw_start, pos_ - pw_start));
      if (pw > 1000) {
        pos_ = pw_start;
        fail("exponent too large");
      }
      power = static_cast<unsigned>(pw);
    }
    MultiIndex& m = bar ? key.abar : key.a;
    m = m + MultiIndex::unit(index - 1, power);
  }

  const std::string& s_;
  bool complex_;
  std::size_t pos_ = 0;
};

std::string monomial_text(const MultiIndex& m, const char* symbol) {
  std::string out;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (m[j] == 0) continue;
    if (!out.empty()) out += "*";
    out += symbol + std::to_string(j + 1);
    if (m[j] > 1) out += "^" + std::to_string(m[j]);
  }
  return out;
}

std::string number_text(const Rational& c) { return to_string(c); }

std::string number_text(double c) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, c);
  return std::string(buf, res.ptr);
}

template <class S>
void append_term(std::string& out, const S& c, const std::string& mono) {
  const bool neg = c < 0;
  const S mag = neg ? S(-c) : c;
  if (out.empty()) {
    if (neg) out += "-";
  } else {
    out += neg ? " - " : " + ";
  }
  if (mono.empty()) {
    out += number_text(mag);
  } else if (mag == S(1)) {
    out += mono;
  } else {
    out += number_text(mag) + "*" + mono;
  }
}

template <class S>
std::string format_real(const RealPoly<S>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : p.terms()) append_term(out, c, monomial_text(k, "x"));
  return out;
}

template <class S>
std::string format_cx(const CxPoly<S>& q) {
  if (q.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : q.terms()) {
    if (c.im != 0) throw std::invalid_argument("inline syntax has no imaginary coefficients");
    std::string mono = monomial_text(k.a, "a");
    const std::string bar = monomial_text(k.abar, "abar");
    if (!mono.empty() && !bar.empty()) mono += "*";
    append_term(out, c.re, mono + bar);
  }
  return out;
}

}  // namespace

RealPoly<Rational> parse_real_poly(const std::string& text) {
  const CxPoly<Rational> q = Parser(text, false).parse();
  RealPoly<Rational> out;
  for (const auto& [k, c] : q.terms()) out.add_term(k.a, c.re);
  return out;
}

CxPoly<Rational> parse_cx_poly(const std::string& text) { return Parser(text, true).parse(); }

std::string format_poly(const RealPoly<Rational>& p) { return format_real(p); }
std::string format_poly(const CxPoly<Rational>& q) { return format_cx(q); }
std::string format_poly(const RealPoly<double>& p) { return format_real(p); }
std::string format_poly(const CxPoly<double>& q) { return format_cx(q); }

}  // namespace sbt
