#include "sbtlab/transforms.hpp"

namespace sbt {

CxPoly<double> sphere_sbt(const RealPoly<double>& p, int N, double T) {
  require_below_dimension(p.nvars(), N);
  if (!(T > 0)) throw std::invalid_argument("sphere transform needs T > 0");
  return holomorphic_extend(exp_graded(OperatorSpec::spherical_laplacian(N, Rational(N)), T / 2, p));
}

CxPoly<double> limit_sbt(const RealPoly<double>& p, double T) {
  if (!(T > 0)) throw std::invalid_argument("limit transform needs T > 0");
  return holomorphic_extend(exp_graded(OperatorSpec::hermite(), T / 2, p));
}

CxPoly<double> limit_sbt_factored(const RealPoly<double>& p, double T) {
  if (!(T > 0)) throw std::invalid_argument("limit transform needs T > 0");
  return dilation_exp(-T / 2, euclidean_sbt(p, 1.0, -std::expm1(-T)));
}

std::string transform_name(const TransformTag& tag) {
  static const char* names[] = {"euclidean", "sphere", "limit"};
  return names[tag.index()];
}

CxPoly<double> apply_transform(const RealPoly<double>& p, const TransformTag& tag) {
  if (const auto* e = std::get_if<EuclideanTransform>(&tag)) return euclidean_sbt(p, e->s, e->t);
  if (const auto* s = std::get_if<SphereTransform>(&tag)) return sphere_sbt(p, s->N, s->T);
  return limit_sbt(p, std::get<LimitTransform>(tag).T);
}

namespace {

MeasureSpec domain_measure(const TransformTag& tag) {
  if (const auto* e = std::get_if<EuclideanTransform>(&tag)) return GaussMeasure{e->s};
  if (const auto* s = std::get_if<SphereTransform>(&tag)) return SphereMeasure{s->N, Rational(s->N)};
  return GaussMeasure{1.0};
}

MeasureSpec range_measure(const TransformTag& tag) {
  if (const auto* e = std::get_if<EuclideanTransform>(&tag)) return XiMeasure{e->s, e->t};
  if (const auto* s = std::get_if<SphereTransform>(&tag)) return QuadricMeasure{s->N, Rational(s->N), s->T};
  return GammaMeasure{std::get<LimitTransform>(tag).T};
}

}  // namespace

TransformResult unitarity_report(const RealPoly<double>& p, const TransformTag& tag) {
  if (const auto* s = std::get_if<SphereTransform>(&tag)) return unitarity_report(p, QuadricMoments(s->N, s->T));
  TransformResult r{p, apply_transform(p, tag), tag};
  r.domain_norm2 = inner_product(p, p, domain_measure(tag)).re;
  r.range_norm2 = moment(mod_square(r.output), range_measure(tag)).re;
  return r;
}

TransformResult unitarity_report(const RealPoly<double>& p, const QuadricMoments& nu) {
  const TransformTag tag = SphereTransform{nu.N(), nu.T()};
  TransformResult r{p, sphere_sbt(p, nu.N(), nu.T()), tag};
  r.domain_norm2 = sphere_moment(p * p, nu.N(), static_cast<double>(nu.N()));
  r.range_norm2 = nu(mod_square(r.output)).re;
  return r;
}

double polarization_error(const RealPoly<double>& p1, const RealPoly<double>& p2, const TransformTag& tag) {
  const Complex<double> domain = inner_product(p1, p2, domain_measure(tag));
  const Complex<double> range = inner_product(apply_transform(p1, tag), apply_transform(p2, tag), range_measure(tag));
  return magnitude(range - domain);
}

}  // namespace sbt
