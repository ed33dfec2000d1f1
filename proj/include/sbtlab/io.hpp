#pragma once

// JSON and CSV serialization of polynomials, measures and result tables.

#include "sbtlab/limits.hpp"
#include "sbtlab/measures.hpp"
#include "sbtlab/poly.hpp"
#include "sbtlab/transforms.hpp"

#include <json.hpp>

#include <string>

namespace sbt {

using Json = nlohmann::json;

/// %.17g, with "inf", "-inf" and "nan" spelled out.
std::string format_number(double x);

/// Term list [{a_exponents, abar_exponents, re, im}]. Exact coefficients are
/// written as strings "num/den".
Json poly_to_json(const RealPoly<Rational>& p);
Json poly_to_json(const RealPoly<double>& p);
Json poly_to_json(const CxPoly<Rational>& q);
Json poly_to_json(const CxPoly<double>& q);

template <Field S>
CxPoly<S> cx_poly_from_json(const Json& j);
/// Rejects terms with abar exponents or imaginary parts.
template <Field S>
RealPoly<S> real_poly_from_json(const Json& j);

Json measure_to_json(const MeasureSpec& m);
MeasureSpec measure_from_json(const Json& j);

Json transform_result_to_json(const TransformResult& r);

Json table_to_json(const ConvergenceTable& t);
/// Header N,T,quantity,value,reference,abs_error,rel_error; a final
/// "# fitted_rate,<rate>" line.
std::string table_to_csv(const ConvergenceTable& t, bool header = true);

}  // namespace sbt
