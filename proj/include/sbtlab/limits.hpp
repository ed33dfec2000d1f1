#pragma once

// Large-N convergence experiments: errors on an N grid and a log-log rate fit.

#include "sbtlab/measures.hpp"
#include "sbtlab/poly.hpp"
#include "sbtlab/transforms.hpp"

#include <limits>
#include <string>
#include <vector>

namespace sbt {

enum class Quantity { LaplacianToHermite, SphereMomentToGauss, QuadricMomentToGamma, TransformToLimit, IsometryChain };

std::string quantity_name(Quantity q);
/// Accepts the CLI names: laplacian, sphere-moment, quadric-moment, transform, isometry.
Quantity parse_quantity(const std::string& name);

struct ConvergenceRow {
  int N = 0;
  double T = 0;
  double value = 0;
  double reference = 0;
  double abs_error = 0;
  double rel_error = 0;
};

struct ConvergenceTable {
  Quantity quantity = Quantity::LaplacianToHermite;
  std::string subject;  // the polynomial, as text
  std::vector<ConvergenceRow> rows;
  double fitted_rate = 0;

  std::vector<int> grid() const;
  std::vector<double> errors() const;
};

/// {10, 30, 100, 300, 1000, 3000, 10000}
std::vector<int> default_grid();

/// Negated least-squares slope of log(error) against log(N) over the points
/// with positive error. All errors zero gives +infinity; fewer than three
/// positive errors otherwise is an error.
double fit_rate(const std::vector<int>& grid, const std::vector<double>& errors);

/// Coefficientwise max-abs distance between Δ_{S^{N-1}(√N)} p and H p (exact arithmetic).
ConvergenceTable laplacian_limit(const RealPoly<Rational>& p, const std::vector<int>& grid);

/// |∫ p dσ̄_{√N} - ∫ p dμ_1|.
ConvergenceTable sphere_measure_limit(const RealPoly<double>& p, const std::vector<int>& grid);
/// |∫ q dν_T (N) - ∫ q dγ_T|.
ConvergenceTable quadric_measure_limit(const CxPoly<double>& q, double T, const std::vector<int>& grid);

/// Coefficientwise max-abs distance between C_T p (at N) and B_T p.
ConvergenceTable transform_limit(const RealPoly<double>& p, double T, const std::vector<int>& grid);

struct DiagramReport {
  int N = 0;
  double T = 0;
  double sphere_norm2 = 0;   // ||p||^2 in L^2(σ̄)
  double quadric_norm2 = 0;  // ||C_T p||^2 in HL^2(ν_T)
  double gauss_norm2 = 0;    // ||p||^2 in L^2(μ_1)
  double limit_norm2 = 0;    // ||B_T p||^2 in HL^2(γ_T)

  /// Relative gap of the finite-N isometry.
  double finite_rel_error() const;
  /// |quadric_norm2 - limit_norm2|
  double limit_gap() const;
};

DiagramReport diagram_check(const RealPoly<double>& p, double T, int N);

/// The ν_T-norm of C_T p against the γ_T-norm of B_T p along the grid.
ConvergenceTable isometry_chain(const RealPoly<double>& p, double T, const std::vector<int>& grid);

}  // namespace sbt
