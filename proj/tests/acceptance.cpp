// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include "suite.hpp"

#include "sbtlab/limits.hpp"
#include "sbtlab/oracle.hpp"
#include "sbtlab/parallel.hpp"
#include "sbtlab/poly_parse.hpp"
#include "sbtlab/semigroup.hpp"
#include "sbtlab/transforms.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

using namespace sbt;
using sbt::testing::kSuiteN;
using sbt::testing::kSuiteT;

namespace {

constexpr double kTolFiniteUnitarity = 1e-9;
constexpr double kTolLimitUnitarity = 1e-10;
constexpr double kTolTwoRoute = 1e-12;
constexpr double kTolBch = 1e-11;
constexpr double kTolSphereClosedForm = 1e-12;
constexpr double kTolRateQuadric = 0.1;
constexpr double kTolRateLaplacian = 0.05;
constexpr double kMinRateTransform = 0.9;
constexpr double kTolQuadrature = 1e-12;
constexpr double kMcSigmas = 4.0;
constexpr double kLimitSecondsFinite = 30.0;
constexpr double kLimitSecondsLimit = 5.0;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<RealPoly<double>>& suite() {
  static const auto s = sbt::testing::suite();
  return s;
}

Verdict criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<int, double>> cells;
  for (int N : kSuiteN)
    for (double T : kSuiteT) cells.emplace_back(N, T);
  const auto worst_per_cell = parallel_map(cells.size(), [&](std::size_t i) {
    const QuadricMoments nu(cells[i].first, cells[i].second);
    double worst = 0;
    for (const auto& p : suite()) worst = std::max(worst, unitarity_report(p, nu).rel_error());
    return worst;
  });
  double worst = 0;
  for (double w : worst_per_cell) worst = std::max(worst, w);
  const double secs = seconds_since(t0);
  return {worst <= kTolFiniteUnitarity && secs < kLimitSecondsFinite,
          "max rel error " + fmt("%.3g", worst) + " (tol 1e-9), " + std::to_string(suite().size()) + " polys x " +
              std::to_string(cells.size()) + " (N,T) cells in " + fmt("%.2f", secs) + " s (limit 30 s)"};
}

Verdict criterion_2() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  for (double T : kSuiteT)
    for (const auto& p : suite()) worst = std::max(worst, unitarity_report(p, LimitTransform{T}).rel_error());
  const double secs = seconds_since(t0);
  return {worst <= kTolLimitUnitarity && secs < kLimitSecondsLimit,
          "max rel error " + fmt("%.3g", worst) + " (tol 1e-10) in " + fmt("%.2f", secs) + " s (limit 5 s)"};
}

Verdict criterion_3() {
  double worst = 0;
  for (double T : kSuiteT)
    for (const auto& p : suite()) worst = std::max(worst, max_abs_difference(limit_sbt(p, T), limit_sbt_factored(p, T)));
  return {worst <= kTolTwoRoute, "max coefficient difference " + fmt("%.3g", worst) + " (tol 1e-12)"};
}

Verdict criterion_4() {
  double worst = 0;
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto e = to_matrix<MultiIndex, double>(OperatorSpec::euler(), k, 8);
    const auto d = to_matrix<MultiIndex, double>(OperatorSpec::laplacian(), k, 8);
    const auto g = to_matrix<MultiIndex, double>(g_k_real(k), 2 * k, 8);
    const auto du = to_matrix<MultiIndex, double>(OperatorSpec::laplacian({0, k}), 2 * k, 8);
    for (double T : kSuiteT) {
      worst = std::max(worst, bch_check((-T / 2) * e, (T / 2) * d, T).max_deviation());
      worst = std::max(worst, bch_check(T * g, 0.5 * du, -T).max_deviation());
    }
  }
  return {worst <= kTolBch, "max relative deviation " + fmt("%.3g", worst) +
                                " over k = 1..3, degree <= 8, both instantiations (tol 1e-11)"};
}

Verdict criterion_5() {
  const auto x4 = convert<double>(parse_real_poly("x1^4"));
  double worst = 0;
  for (int N : default_grid())
    worst = std::max(worst, std::fabs(std::fabs(sphere_moment(x4, N, double(N)) - 3.0) - 6.0 / (N + 2)));
  bool pass = worst <= kTolSphereClosedForm;
  std::string detail = "sphere: max | |err| - 6/(N+2) | = " + fmt("%.3g", worst) + " (tol 1e-12); quadric rates";
  const auto q = var_a<double>(0) * var_abar<double>(0);
  for (double T : kSuiteT) {
    const auto table = quadric_measure_limit(q, T, default_grid());
    const auto err = table.errors();
    for (std::size_t i = 1; i < err.size(); ++i) pass = pass && err[i] < err[i - 1];
    pass = pass && std::fabs(table.fitted_rate - 1.0) <= kTolRateQuadric;
    detail += fmt(" %.4f", table.fitted_rate);
  }
  return {pass, detail + " (1 +- 0.1, decreasing)"};
}

Verdict criterion_6() {
  const auto x1 = parse_real_poly("x1");
  bool exact = true;
  for (int N : default_grid()) {
    const auto err = spherical_laplacian(x1, N, Rational(N)) - hermite(x1);
    exact = exact && max_abs_coefficient(err) == 1.0 / N &&
            err == RealPoly<Rational>::monomial(MultiIndex::unit(0), Rational(1) / Rational(N));
  }
  double worst = 0;
  int count = 0;
  for (const auto& p : suite()) {
    if (p.degree() != 4) continue;
    const auto table = laplacian_limit(convert<Rational>(p), default_grid());
    worst = std::max(worst, std::fabs(table.fitted_rate - 1.0));
    ++count;
  }
  return {exact && count > 0 && worst <= kTolRateLaplacian,
          std::string("x1 error equals 1/N exactly: ") + (exact ? "yes" : "no") + "; " + std::to_string(count) +
              " degree-4 polys, max |rate - 1| " + fmt("%.3g", worst) + " (tol 0.05)"};
}

Verdict criterion_7() {
  double lowest = INFINITY;
  for (double T : kSuiteT) {
    const auto rates = parallel_map(suite().size(), [&](std::size_t i) {
      return transform_limit(suite()[i], T, default_grid()).fitted_rate;
    });
    for (double r : rates) lowest = std::min(lowest, r);
  }
  return {lowest >= kMinRateTransform, "min fitted rate " + fmt("%.4f", lowest) + " (>= 0.9)"};
}

Verdict criterion_8() {
  int mismatches = 0;
  const Rational t = make_rational(3, 2);
  for (const auto& m : graded_monomials(4, 10)) {
    const auto p = RealPoly<Rational>::monomial(m);
    mismatches += !(gaussian_moment(p, t) == isserlis_moment(p, t));
  }
  double quad = 0;
  for (const auto& p : suite()) {
    const auto q = mod_square(holomorphic_extend(p));
    const unsigned order = q.degree() / 2 + 2;
    auto rel = [](Complex<double> exact, const OracleEstimate& e) {
      return magnitude(exact - Complex<double>(e.value, e.im)) / std::max(1.0, magnitude(exact));
    };
    for (double T : kSuiteT) quad = std::max(quad, rel(gamma_moment(q, T), quad_gauss_moment(q, QuadGamma{T}, order)));
    quad = std::max(quad, rel(xi_moment(q, 1.0, 0.5), quad_gauss_moment(q, QuadXi{1.0, 0.5}, order)));
    quad = std::max(quad, rel(xi_moment(q, 2.0, 3.0), quad_gauss_moment(q, QuadXi{2.0, 3.0}, order)));
  }
  double sigmas = 0;
  for (std::uint64_t seed : {1, 2, 3})
    for (const char* text : {"x1^2", "x1^4", "x1*x2", "x1^2*x2^2 - x3^3"}) {
      const auto p = convert<double>(parse_real_poly(text));
      const auto est = mc_sphere_moment(p, 50, 1000000, seed);
      sigmas = std::max(sigmas, std::fabs(est.value - sphere_moment(p, 50, 50.0)) / est.std_error);
    }
  return {mismatches == 0 && quad <= kTolQuadrature && sigmas <= kMcSigmas,
          std::to_string(mismatches) + " Isserlis mismatches (4 vars, degree <= 10); quadrature rel error " +
              fmt("%.3g", quad) + " (tol 1e-12); Monte-Carlo max " + fmt("%.2f", sigmas) + " sigma (limit 4)"};
}

Verdict criterion_9() {
  const auto q = var_a<double>(0) * var_abar<double>(0);
  double analytic = 0;
  double quadrature = 0;
  double paper_gap = INFINITY;
  for (double T : kSuiteT) {
    const double e = std::exp(T);
    analytic = std::max(analytic, std::fabs(gamma_moment(q, T).re - e) / e);
    quadrature = std::max(quadrature, std::fabs(quad_gauss_moment(q, QuadGamma{T}, 4).value - e) / e);
    paper_gap = std::min(paper_gap, std::fabs(gamma_moment(q, T).re - 2 * e) / e);
  }
  // ||x1||^2 in L^2(mu_1) is 1, and B_T x1 = e^{-T/2} a1, whose gamma_T-norm is e^{-T} * e^T.
  double chain = 0;
  for (double T : kSuiteT)
    chain = std::max(chain, unitarity_report(convert<double>(parse_real_poly("x1")), LimitTransform{T}).rel_error());
  const bool pass = analytic <= 1e-14 && quadrature <= 1e-12 && paper_gap >= 0.99 && chain <= kTolLimitUnitarity;
  return {pass, "rel error vs e^T: analytic " + fmt("%.3g", analytic) + ", quadrature " + fmt("%.3g", quadrature) +
                    "; relative gap to 2e^T " + fmt("%.3g", paper_gap) + "; limit isometry on x1 " + fmt("%.3g", chain)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 finite-N unitarity", criterion_1},        {"2 limit unitarity", criterion_2},
      {"3 two-route agreement", criterion_3},       {"4 BCH identities", criterion_4},
      {"5 measure convergence", criterion_5},       {"6 operator convergence", criterion_6},
      {"7 transform convergence", criterion_7},     {"8 oracle equivalence", criterion_8},
      {"9 gamma_T moment of a1 abar1", criterion_9},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("criterion %s: %s  %s\n", name.c_str(), v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
