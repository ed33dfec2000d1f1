#include "sbtlab/io.hpp"

#include <cmath>
#include <cstdio>

namespace sbt {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

Json json_number(double x) { return std::isfinite(x) ? Json(x) : Json(format_number(x)); }

Json coef_json(const Rational& c) {
  return boost::multiprecision::numerator(c).str() + "/" + boost::multiprecision::denominator(c).str();
}
Json coef_json(double c) { return c; }

template <Field S>
S coef_from_json(const Json& j) {
  if constexpr (std::is_same_v<S, Rational>) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number()) return Rational(j.get<double>());
  } else {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
  }
  throw std::invalid_argument("coefficient must be a number or a \"num/den\" string");
}

Json exps_json(const MultiIndex& m) { return m.to_vector(); }

MultiIndex exps_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("exponents must be an array");
  std::vector<unsigned> v;
  for (const auto& e : j) {
    if (!e.is_number_integer() || e.get<long long>() < 0) throw std::invalid_argument("exponents must be nonnegative");
    v.push_back(e.get<unsigned>());
  }
  return MultiIndex(v);
}

template <class Coef>
Json real_terms(const SparsePoly<MultiIndex, Coef>& p) {
  Json out = Json::array();
  for (const auto& [k, c] : p.terms())
    out.push_back({{"a_exponents", exps_json(k)}, {"abar_exponents", Json::array()}, {"re", coef_json(c)},
                   {"im", coef_json(Coef(0))}});
  return out;
}

template <Field S>
Json cx_terms(const CxPoly<S>& q) {
  Json out = Json::array();
  for (const auto& [k, c] : q.terms())
    out.push_back({{"a_exponents", exps_json(k.a)},
                   {"abar_exponents", exps_json(k.abar)},
                   {"re", coef_json(c.re)},
                   {"im", coef_json(c.im)}});
  return out;
}

}  // namespace

Json poly_to_json(const RealPoly<Rational>& p) { return real_terms(p); }
Json poly_to_json(const RealPoly<double>& p) { return real_terms(p); }
Json poly_to_json(const CxPoly<Rational>& q) { return cx_terms(q); }
Json poly_to_json(const CxPoly<double>& q) { return cx_terms(q); }

template <Field S>
CxPoly<S> cx_poly_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial JSON must be a term list");
  CxPoly<S> out;
  for (const auto& t : j) {
    const MultiIndex a = exps_from_json(t.at("a_exponents"));
    const MultiIndex abar = t.contains("abar_exponents") ? exps_from_json(t.at("abar_exponents")) : MultiIndex{};
    const S re = coef_from_json<S>(t.at("re"));
    const S im = t.contains("im") ? coef_from_json<S>(t.at("im")) : S(0);
    out.add_term(BiIndex{a, abar}, Complex<S>(re, im));
  }
  return out;
}

template <Field S>
RealPoly<S> real_poly_from_json(const Json& j) {
  RealPoly<S> out;
  const auto parsed = cx_poly_from_json<S>(j);
  for (const auto& [k, c] : parsed.terms()) {
    if (!k.abar.is_constant()) throw std::invalid_argument("real polynomial with abar exponents");
    if (!is_zero(c.im)) throw std::invalid_argument("real polynomial with an imaginary coefficient");
    out.add_term(k.a, c.re);
  }
  return out;
}

template CxPoly<double> cx_poly_from_json<double>(const Json&);
template CxPoly<Rational> cx_poly_from_json<Rational>(const Json&);
template RealPoly<double> real_poly_from_json<double>(const Json&);
template RealPoly<Rational> real_poly_from_json<Rational>(const Json&);

Json measure_to_json(const MeasureSpec& m) {
  return std::visit(
      [&](const auto& x) -> Json {
        using M = std::decay_t<decltype(x)>;
        Json j{{"family", measure_name(m)}};
        if constexpr (std::is_same_v<M, GaussMeasure>) {
          j["t"] = x.t;
        } else if constexpr (std::is_same_v<M, XiMeasure>) {
          j["s"] = x.s;
          j["t"] = x.t;
        } else if constexpr (std::is_same_v<M, GammaMeasure>) {
          j["T"] = x.T;
        } else if constexpr (std::is_same_v<M, SphereMeasure>) {
          j["N"] = x.N;
          j["b2"] = coef_json(x.b2);
        } else {
          j["N"] = x.N;
          j["b2"] = coef_json(x.b2);
          j["T"] = x.T;
        }
        return j;
      },
      m);
}

MeasureSpec measure_from_json(const Json& j) {
  const std::string family = j.at("family").get<std::string>();
  MeasureSpec m;
  if (family == "gauss") {
    m = GaussMeasure{j.at("t").get<double>()};
  } else if (family == "xi") {
    m = XiMeasure{j.at("s").get<double>(), j.at("t").get<double>()};
  } else if (family == "gamma") {
    m = GammaMeasure{j.at("T").get<double>()};
  } else if (family == "sphere") {
    const int N = j.at("N").get<int>();
    m = SphereMeasure{N, j.contains("b2") ? coef_from_json<Rational>(j.at("b2")) : Rational(N)};
  } else if (family == "quadric") {
    const int N = j.at("N").get<int>();
    m = QuadricMeasure{N, j.contains("b2") ? coef_from_json<Rational>(j.at("b2")) : Rational(N),
                       j.at("T").get<double>()};
  } else {
    throw std::invalid_argument("unknown measure family '" + family + "'");
  }
  validate(m);
  return m;
}

Json transform_result_to_json(const TransformResult& r) {
  Json tag{{"transform", transform_name(r.tag)}};
  std::visit(
      [&](const auto& x) {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, EuclideanTransform>) {
          tag["s"] = x.s;
          tag["t"] = x.t;
        } else if constexpr (std::is_same_v<X, SphereTransform>) {
          tag["N"] = x.N;
          tag["T"] = x.T;
        } else {
          tag["T"] = x.T;
        }
      },
      r.tag);
  return {{"tag", tag},
          {"input", poly_to_json(r.input)},
          {"output", poly_to_json(r.output)},
          {"domain_norm2", r.domain_norm2},
          {"range_norm2", r.range_norm2},
          {"abs_error", json_number(r.abs_error())},
          {"rel_error", json_number(r.rel_error())}};
}

constexpr const char* kRateNote = "empirical log-log slope; not a proven rate";

Json table_to_json(const ConvergenceTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"N", r.N},
                    {"T", r.T},
                    {"quantity", quantity_name(t.quantity)},
                    {"value", json_number(r.value)},
                    {"reference", json_number(r.reference)},
                    {"abs_error", json_number(r.abs_error)},
                    {"rel_error", json_number(r.rel_error)}});
  return {{"quantity", quantity_name(t.quantity)},
          {"subject", t.subject},
          {"rows", rows},
          {"fitted_rate", json_number(t.fitted_rate)},
          {"rate_note", kRateNote}};
}

std::string table_to_csv(const ConvergenceTable& t, bool header) {
  std::string out;
  if (header) out += "N,T,quantity,value,reference,abs_error,rel_error\n";
  for (const auto& r : t.rows) {
    out += std::to_string(r.N) + "," + format_number(r.T) + "," + quantity_name(t.quantity) + "," +
           format_number(r.value) + "," + format_number(r.reference) + "," + format_number(r.abs_error) + "," +
           format_number(r.rel_error) + "\n";
  }
  out += "# fitted_rate," + format_number(t.fitted_rate) + "\n";
  out += std::string("# rate_note,") + kRateNote + "\n";
  return out;
}

}  // namespace sbt
