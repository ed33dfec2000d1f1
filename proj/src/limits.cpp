#include "sbtlab/limits.hpp"

#include "sbtlab/parallel.hpp"
#include "sbtlab/poly_parse.hpp"

#include <cmath>
#include <stdexcept>

namespace sbt {

std::string quantity_name(Quantity q) {
  switch (q) {
    case Quantity::LaplacianToHermite: return "laplacian";
    case Quantity::SphereMomentToGauss: return "sphere-moment";
    case Quantity::QuadricMomentToGamma: return "quadric-moment";
    case Quantity::TransformToLimit: return "transform";
    case Quantity::IsometryChain: return "isometry";
  }
  return "?";
}

Quantity parse_quantity(const std::string& name) {
  for (Quantity q : {Quantity::LaplacianToHermite, Quantity::SphereMomentToGauss, Quantity::QuadricMomentToGamma,
                     Quantity::TransformToLimit, Quantity::IsometryChain})
    if (quantity_name(q) == name) return q;
  throw std::invalid_argument("unknown quantity '" + name + "'");
}

std::vector<int> ConvergenceTable::grid() const {
  std::vector<int> g;
  for (const auto& r : rows) g.push_back(r.N);
  return g;
}

std::vector<double> ConvergenceTable::errors() const {
  std::vector<double> e;
  for (const auto& r : rows) e.push_back(r.abs_error);
  return e;
}

std::vector<int> default_grid() { return {10, 30, 100, 300, 1000, 3000, 10000}; }

double fit_rate(const std::vector<int>& grid, const std::vector<double>& errors) {
  if (grid.size() != errors.size()) throw std::invalid_argument("grid and error lists differ in length");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (errors[i] < 0 || std::isnan(errors[i])) throw std::invalid_argument("errors must be nonnegative");
    if (errors[i] > 0) {
      xs.push_back(std::log(static_cast<double>(grid[i])));
      ys.push_back(std::log(errors[i]));
    }
  }
  if (xs.empty()) return std::numeric_limits<double>::infinity();
  if (xs.size() < 3) throw std::invalid_argument("rate fit needs at least 3 grid points with positive error");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0) throw std::invalid_argument("rate fit needs distinct grid points");
  return -sxy / sxx;
}

namespace {

void check_grid(const std::vector<int>& grid) {
  if (grid.empty()) throw std::invalid_argument("empty N grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1) throw std::invalid_argument("grid values must be positive");
    if (i > 0 && grid[i] <= grid[i - 1]) throw std::invalid_argument("N grid must be strictly increasing");
  }
}

ConvergenceRow make_row(int N, double T, double value, double reference, double abs_error) {
  const double scale = std::fabs(reference);
  return {N, T, value, reference, abs_error, scale > 0 ? abs_error / scale : abs_error};
}

template <class F>
ConvergenceTable run(Quantity q, std::string subject, const std::vector<int>& grid, F row_at) {
  check_grid(grid);
  ConvergenceTable table;
  table.quantity = q;
  table.subject = std::move(subject);
  table.rows = parallel_map(grid.size(), [&](std::size_t i) { return row_at(grid[i]); });
  // a rate needs three positive errors; below that only an all-zero table has one (+inf)
  std::size_t positive = 0;
  for (double e : table.errors()) positive += e > 0 ? 1 : 0;
  table.fitted_rate = positive == 0 || positive >= 3 ? fit_rate(table.grid(), table.errors())
                                                     : std::numeric_limits<double>::quiet_NaN();
  return table;
}

template <class P>
std::string poly_text(const P& p) {
  return format_poly(p);
}

}  // namespace

ConvergenceTable laplacian_limit(const RealPoly<Rational>& p, const std::vector<int>& grid) {
  const RealPoly<Rational> limit = hermite(p);
  return run(Quantity::LaplacianToHermite, poly_text(p), grid, [&](int N) {
    const RealPoly<Rational> finite = spherical_laplacian(p, N, Rational(N));
    return make_row(N, 0, max_abs_coefficient(finite), max_abs_coefficient(limit),
                    max_abs_coefficient(finite - limit));
  });
}

ConvergenceTable sphere_measure_limit(const RealPoly<double>& p, const std::vector<int>& grid) {
  const double limit = gaussian_moment(p, 1.0);
  return run(Quantity::SphereMomentToGauss, poly_text(p), grid, [&](int N) {
    const double v = sphere_moment(p, N, static_cast<double>(N));
    return make_row(N, 0, v, limit, std::fabs(v - limit));
  });
}

ConvergenceTable quadric_measure_limit(const CxPoly<double>& q, double T, const std::vector<int>& grid) {
  const Complex<double> limit = gamma_moment(q, T);
  return run(Quantity::QuadricMomentToGamma, poly_text(q), grid, [&](int N) {
    const Complex<double> v = quadric_moment(q, N, T);
    ConvergenceRow row = make_row(N, T, v.re, limit.re, magnitude(v - limit));
    row.rel_error = magnitude(limit) > 0 ? row.abs_error / magnitude(limit) : row.abs_error;
    return row;
  });
}

ConvergenceTable transform_limit(const RealPoly<double>& p, double T, const std::vector<int>& grid) {
  const CxPoly<double> limit = limit_sbt(p, T);
  return run(Quantity::TransformToLimit, poly_text(p), grid, [&](int N) {
    const CxPoly<double> finite = sphere_sbt(p, N, T);
    return make_row(N, T, max_abs_coefficient(finite), max_abs_coefficient(limit), max_abs_difference(finite, limit));
  });
}

double DiagramReport::finite_rel_error() const {
  const double gap = std::fabs(sphere_norm2 - quadric_norm2);
  return sphere_norm2 > 0 ? gap / sphere_norm2 : gap;
}

double DiagramReport::limit_gap() const { return std::fabs(quadric_norm2 - limit_norm2); }

DiagramReport diagram_check(const RealPoly<double>& p, double T, int N) {
  require_below_dimension(p.nvars(), N);
  DiagramReport r;
  r.N = N;
  r.T = T;
  const TransformResult finite = unitarity_report(p, SphereTransform{N, T});
  const TransformResult limit = unitarity_report(p, LimitTransform{T});
  r.sphere_norm2 = finite.domain_norm2;
  r.quadric_norm2 = finite.range_norm2;
  r.gauss_norm2 = limit.domain_norm2;
  r.limit_norm2 = limit.range_norm2;
  return r;
}

ConvergenceTable isometry_chain(const RealPoly<double>& p, double T, const std::vector<int>& grid) {
  const double limit = unitarity_report(p, LimitTransform{T}).range_norm2;
  return run(Quantity::IsometryChain, poly_text(p), grid, [&](int N) {
    const double v = unitarity_report(p, SphereTransform{N, T}).range_norm2;
    return make_row(N, T, v, limit, std::fabs(v - limit));
  });
}

}  // namespace sbt
