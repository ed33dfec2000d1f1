#include "helpers.hpp"

#include "sbtlab/measures.hpp"

#include <cmath>
#include <random>
#include <thread>

using namespace sbt;
using namespace sbt::testing;

TEST_CASE("Gaussian moments") {
  CHECK(gaussian_moment(rpd("x1^2"), 1.0) == 1.0);
  CHECK(gaussian_moment(rpd("x1^4"), 1.0) == 3.0);
  CHECK(gaussian_moment(rpd("x1*x2"), 2.5) == 0.0);
  CHECK(gaussian_moment(rp("x1^6*x2^2"), make_rational(1, 3)) == Rational(15) * make_rational(1, 81));
  CHECK_THROWS_AS(gaussian_moment(rpd("x1"), 0.0), std::invalid_argument);
}

TEST_CASE("xi moments") {
  CHECK(xi_moment(cpd("a1*abar1"), 1.0, 1.0).re == near(1.0));
  CHECK(xi_moment(cpd("a1"), 1.0, 0.3).re == 0.0);
  const auto v = xi_moment(cpd("a1^2"), 1.0, 0.5);
  CHECK(v.re == near(0.5));
  CHECK(v.im == 0.0);
  CHECK(xi_moment(cp("a1^2*abar1^2"), Rational(1), make_rational(1, 2)) == Complex<Rational>(make_rational(9, 4)));
  CHECK_THROWS_AS(xi_moment(cpd("a1"), 1.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(xi_moment(cpd("a1"), 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("modulus fourth moment of a complex Gaussian") {
  // E|a|^4 = E(u^2+v^2)^2 = 3 su^2 + 2 su sv + 3 sv^2
  const double su = 0.75, sv = 0.25;
  CHECK(xi_moment(cpd("a1^2*abar1^2"), 1.0, 0.5).re == near(3 * su * su + 2 * su * sv + 3 * sv * sv));
}

TEST_CASE("gamma moments") {
  for (double T : {0.1, 1.0, 2.0}) {
    CHECK(gamma_moment(cpd("a1*abar1"), T).re == near(std::exp(T)));
    CHECK(gamma_moment(cpd("a1^2"), T).re == near(1.0));
    CHECK(gamma_moment(cpd("abar1"), T).re == 0.0);
    CHECK(gamma_moment(cpd("a1*abar1*a2*abar2"), T).re == near(std::exp(2 * T)));
  }
  CHECK_THROWS_AS(gamma_moment(cpd("a1"), -1.0), std::invalid_argument);
}

TEST_CASE("sphere moments") {
  for (int N : {3, 10, 50, 1000}) {
    CHECK(sphere_moment(rpd("x1^2"), N, double(N)) == near(1.0));
    CHECK(sphere_moment(rpd("x1^4"), N, double(N)) == near(3.0 * N / (N + 2)));
    CHECK(sphere_moment(rpd("x1^2*x2^2"), N, double(N)) == near(double(N) / (N + 2)));
    CHECK(sphere_moment(rpd("x1*x2^2"), N, double(N)) == 0.0);
  }
  CHECK(sphere_moment(rp("x1^4"), 4, Rational(4)) == 2);
  CHECK(sphere_moment(rp("x1^2 + x2^2 + x3^2"), 3, make_rational(5, 2)) == make_rational(5, 2));
  CHECK_THROWS_AS(sphere_moment(rpd("x1*x2*x3"), 2, 2.0), std::domain_error);
  CHECK_THROWS_AS(sphere_moment(rpd("x1"), 2, -1.0), std::invalid_argument);
}

TEST_CASE("sphere moments are consistent with the radial constraint") {
  // |x|^2 = b^2 on the sphere, so p * (|x|^2 - b^2) integrates to zero
  std::mt19937_64 rng(4);
  const int N = 3;
  const auto r2 = rp("x1^2 + x2^2 + x3^2 - 7");
  for (int i = 0; i < 10; ++i) {
    const auto p = convert<Rational>(random_real_poly<double>(3, 4, rng));
    CHECK(sphere_moment(p * r2, N, Rational(7)) == 0);
  }
}

TEST_CASE("quadric moments") {
  for (int N : {4, 10, 100})
    for (double T : {0.1, 1.0}) {
      CHECK(quadric_moment(cpd("a1*abar1"), N, T).re == near(std::exp(T * (N - 1) / N)));
      CHECK(quadric_moment(cpd("a1^2"), N, T).re == near(1.0));
      CHECK(quadric_moment(cpd("1"), N, T).re == near(1.0));
      CHECK(quadric_moment(cpd("a1"), N, T).re == 0.0);
    }
  CHECK_THROWS_AS(quadric_moment(cpd("a1*a2*a3"), 3, 1.0), std::domain_error);
  CHECK_THROWS_AS(quadric_moment(cpd("a1"), 3, 0.0), std::invalid_argument);
}

TEST_CASE("quadric moment functional is shareable across threads") {
  const QuadricMoments nu(8, 0.5);
  const auto q = cpd("a1^2*abar1^2 - a2*abar1 + 3*a1*abar2^3*a2");
  const auto expected = nu(q);
  std::vector<std::thread> workers;
  std::vector<double> got(4);
  for (int i = 0; i < 4; ++i)
    workers.emplace_back([&, i] { got[i] = nu(q).re; });
  for (auto& w : workers) w.join();
  for (double g : got) CHECK(g == expected.re);
  CHECK(QuadricMoments(8, 0.5)(q).re == expected.re);
}

TEST_CASE("measure descriptors") {
  CHECK_THROWS_AS(validate(XiMeasure{1.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(GammaMeasure{0.0}), std::invalid_argument);
  CHECK_NOTHROW(validate(SphereMeasure{5, Rational(5)}));
  CHECK(measure_name(QuadricMeasure{}) == "quadric");
  CHECK(is_complex_family(GammaMeasure{}));
  CHECK_FALSE(is_complex_family(SphereMeasure{}));
  CHECK_THROWS_AS(moment(rpd("x1"), GammaMeasure{1.0}), std::invalid_argument);
}

TEST_CASE("inner products") {
  CHECK(inner_product(rpd("x1"), rpd("x1"), SphereMeasure{7, Rational(7)}).re == near(1.0));
  for (double T : {0.5, 2.0})
    CHECK(inner_product(cpd("a1"), cpd("a1"), GammaMeasure{T}).re == near(std::exp(T)));
  const auto q = cpd("a1^2*abar2 + 3");
  CHECK(inner_product(q, cpd("1"), XiMeasure{1.0, 0.5}).re == near(moment(q, XiMeasure{1.0, 0.5}).re));
  const auto p = rpd("x1^3 - x2");
  CHECK(inner_product(p, rpd("1"), GaussMeasure{2.0}).re == near(moment(p, GaussMeasure{2.0}).re));
}
