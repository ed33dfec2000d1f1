#include "helpers.hpp"

#include "sbtlab/measures.hpp"
#include "sbtlab/oracle.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace sbt;
using namespace sbt::testing;

TEST_CASE("Gauss-Hermite rule") {
  for (unsigned n : {1U, 2U, 5U, 12U}) {
    const auto rule = gauss_hermite(n);
    REQUIRE(rule.nodes.size() == n);
    CHECK(std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0) == near(1.0));
    // exact for x^{2n-2}: (2n-3)!!
    double m = 0;
    for (unsigned i = 0; i < n; ++i) m += rule.weights[i] * std::pow(rule.nodes[i], 2.0 * n - 2);
    double dfact = 1;
    for (unsigned j = 1; j + 2 <= 2 * n - 1; j += 2) dfact *= j;
    CHECK(m == near(dfact, 1e-11));
  }
  const auto two = gauss_hermite(2);
  CHECK(std::fabs(two.nodes[0]) == near(1.0));
  CHECK_THROWS_AS(gauss_hermite(0), std::invalid_argument);
}

TEST_CASE("quadrature moments") {
  CHECK(quad_gauss_moment(rpd("x1^4"), QuadGauss{1.0}, 3).value == near(3.0));
  CHECK(quad_gauss_moment(cpd("a1*abar1"), QuadGamma{1.0}, 4).value == near(std::exp(1.0)));
  CHECK(quad_gauss_moment(cpd("a1*abar1"), QuadGamma{1.0}, 4).value == near(gamma_moment(cpd("a1*abar1"), 1.0).re));
  for (double T : {0.3, 2.0}) CHECK(quad_gauss_moment(cpd("a1^2"), QuadGamma{T}, 4).value == near(1.0));
  const auto e = quad_gauss_moment(cpd("a1^3*abar1 + 2*a2^2*abar1^2"), QuadXi{1.0, 0.5}, 4);
  const auto exact = xi_moment(cpd("a1^3*abar1 + 2*a2^2*abar1^2"), 1.0, 0.5);
  CHECK(e.value == near(exact.re));
  CHECK(e.im == near(exact.im));
  CHECK(e.std_error == 0.0);
  CHECK(e.samples_or_order == 4);
}

TEST_CASE("insufficient quadrature order is rejected") {
  CHECK_THROWS_AS(quad_gauss_moment(rpd("x1^8"), QuadGauss{1.0}, 4), std::invalid_argument);
  CHECK_NOTHROW(quad_gauss_moment(rpd("x1^7"), QuadGauss{1.0}, 4));
  CHECK_THROWS_AS(quad_gauss_moment(cpd("a1^3*abar1^3"), QuadGamma{1.0}, 3), std::invalid_argument);
}

TEST_CASE("Isserlis pairings") {
  const double t = 1.7;
  CHECK(isserlis_moment(rpd("x1^4"), t) == near(3 * t * t));
  CHECK(isserlis_moment(rpd("x1^2*x2^2"), t) == near(t * t));
  CHECK(isserlis_moment(rpd("x1^3*x2^2"), t) == 0.0);
  CHECK(isserlis_moment(rp("x1^6"), make_rational(1, 2)) == make_rational(15, 8));
}

TEST_CASE("Isserlis agrees with the heat-operator moment exactly") {
  const Rational t = make_rational(2, 3);
  for (const auto& m : graded_monomials(3, 8)) {
    const auto p = RealPoly<Rational>::monomial(m);
    CHECK(isserlis_moment(p, t) == gaussian_moment(p, t));
  }
  std::mt19937_64 rng(21);
  for (int i = 0; i < 5; ++i) {
    const auto p = convert<Rational>(random_real_poly<double>(4, 6, rng));
    CHECK(isserlis_moment(p, Rational(3)) == gaussian_moment(p, Rational(3)));
  }
}

TEST_CASE("Monte-Carlo sphere moments") {
  const int N = 50;
  for (const char* text : {"x1^2", "x1^4", "x1*x2"}) {
    const auto p = rpd(text);
    const auto est = mc_sphere_moment(p, N, 1000000, 17);
    CHECK(est.samples_or_order == 1000000);
    CHECK(est.seed == 17);
    CHECK(est.std_error > 0);
    CHECK(std::fabs(est.value - sphere_moment(p, N, double(N))) <= 3 * est.std_error);
  }
  CHECK(sphere_moment(rpd("x1^4"), N, double(N)) == near(3.0 * 50 / 52));
}

TEST_CASE("Monte-Carlo estimates are reproducible and thread-count independent") {
  const auto p = rpd("x1^2*x2 - x3^4 + 2*x1");
  setenv("SBTLAB_THREADS", "1", 1);
  const auto a = mc_sphere_moment(p, 12, 20000, 5);
  setenv("SBTLAB_THREADS", "3", 1);
  const auto b = mc_sphere_moment(p, 12, 20000, 5);
  unsetenv("SBTLAB_THREADS");
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
  CHECK(mc_sphere_moment(p, 12, 20000, 6).value != a.value);
  CHECK_THROWS_AS(mc_sphere_moment(p, 12, 10, 5), std::invalid_argument);
  CHECK_THROWS_AS(mc_sphere_moment(p, 2, 20000, 5), std::domain_error);
}
