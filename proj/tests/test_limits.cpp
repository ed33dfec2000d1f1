#include "helpers.hpp"

#include "sbtlab/limits.hpp"

#include <cmath>

using namespace sbt;
using namespace sbt::testing;

TEST_CASE("rate fit") {
  const std::vector<int> grid{10, 100, 1000, 10000};
  std::vector<double> exact;
  for (int N : grid) exact.push_back(1.0 / N);
  CHECK(fit_rate(grid, exact) == near(1.0));
  const std::vector<int> three{10, 100, 1000};
  // with three log-equispaced points the least-squares slope is the end-to-end slope
  CHECK(fit_rate(three, {6.0 / 12, 6.0 / 102, 6.0 / 1002}) == near(std::log(1002.0 / 12.0) / std::log(100.0)));
  CHECK(std::isinf(fit_rate(three, {0, 0, 0})));
  CHECK_THROWS_AS(fit_rate(three, {0, 1e-3, 1e-4}), std::invalid_argument);
  CHECK_THROWS_AS(fit_rate(three, {1, -1, 1}), std::invalid_argument);
}

TEST_CASE("Laplacian limit") {
  const auto x1 = laplacian_limit(rp("x1"), default_grid());
  for (const auto& r : x1.rows) CHECK(r.abs_error == 1.0 / r.N);
  CHECK(x1.fitted_rate == near(1.0));
  const auto x1sq = laplacian_limit(rp("x1^2"), default_grid());
  for (const auto& r : x1sq.rows) CHECK(r.abs_error == 0.0);
  CHECK(std::isinf(x1sq.fitted_rate));
  // only degrees other than 0 and 2 carry a correction, which is exactly (E^2 - 2E)p / N
  const auto x4 = laplacian_limit(rp("x1^4"), default_grid());
  for (const auto& r : x4.rows) CHECK(r.abs_error == near(8.0 / r.N));
  CHECK(std::fabs(x4.fitted_rate - 1.0) <= 0.05);
}

TEST_CASE("sphere measure limit") {
  const auto t = sphere_measure_limit(rpd("x1^4"), default_grid());
  for (const auto& r : t.rows) {
    CHECK(r.abs_error == near(6.0 / (r.N + 2)));
    CHECK(r.reference == 3.0);
  }
  CHECK(t.fitted_rate > 0.95);
  CHECK(t.fitted_rate <= 1.0);
  const auto one = sphere_measure_limit(rpd("1"), default_grid());
  CHECK(std::isinf(one.fitted_rate));
}

TEST_CASE("quadric measure limit") {
  const double T = 1.0;
  const auto t = quadric_measure_limit(cpd("a1*abar1"), T, default_grid());
  for (const auto& r : t.rows) {
    CHECK(r.value == near(std::exp(T * (r.N - 1) / r.N)));
    CHECK(r.reference == near(std::exp(T)));
  }
  CHECK(std::fabs(t.fitted_rate - 1.0) < 0.1);
  const auto one = quadric_measure_limit(cpd("1"), T, {10, 100, 1000});
  for (const auto& r : one.rows) CHECK(r.abs_error < 1e-15);
}

TEST_CASE("transform limit") {
  const double T = 0.7;
  const auto t = transform_limit(rpd("x1"), T, default_grid());
  for (const auto& r : t.rows) CHECK(r.abs_error == near(std::fabs(std::exp(-T * (r.N - 1) / (2.0 * r.N)) - std::exp(-T / 2)), 1e-9));
  CHECK(std::fabs(t.fitted_rate - 1.0) < 0.05);
  CHECK(std::isinf(transform_limit(rpd("1"), T, default_grid()).fitted_rate));
  // x1^2 is an eigen-combination whose sphere transform does not depend on N
  for (const auto& r : transform_limit(rpd("x1^2"), T, default_grid()).rows) CHECK(r.abs_error < 1e-14);
  CHECK(transform_limit(rpd("x1^3*x2 - x2^2 + 4*x1"), T, default_grid()).fitted_rate > 0.9);
}

TEST_CASE("diagram check") {
  for (int N : {5, 50}) {
    const auto r = diagram_check(rpd("x1"), 1.0, N);
    CHECK(r.sphere_norm2 == near(1.0));
    CHECK(r.quadric_norm2 == near(1.0));
    CHECK(r.gauss_norm2 == near(1.0));
    CHECK(r.limit_norm2 == near(1.0));
  }
  const auto r = diagram_check(rpd("x1^2"), 1.0, 100);
  CHECK(r.finite_rel_error() < 1e-9);
  CHECK(r.limit_gap() < 10.0 / 100);
  CHECK(r.limit_gap() > 0);
}

TEST_CASE("isometry chain") {
  const auto t = isometry_chain(rpd("x1^2 - x2"), 1.0, {10, 100, 1000, 10000});
  CHECK(std::fabs(t.fitted_rate - 1.0) < 0.1);
  for (const auto& r : t.rows) CHECK(r.reference == near(4.0));
}

TEST_CASE("grid validation and names") {
  CHECK_THROWS_AS(laplacian_limit(rp("x1"), {10, 10}), std::invalid_argument);
  CHECK_THROWS_AS(laplacian_limit(rp("x1"), {}), std::invalid_argument);
  CHECK(parse_quantity("sphere-moment") == Quantity::SphereMomentToGauss);
  CHECK(quantity_name(Quantity::IsometryChain) == "isometry");
  CHECK_THROWS_AS(parse_quantity("bogus"), std::invalid_argument);
}

TEST_CASE("tables do not depend on the thread count") {
  const auto p = rpd("x1^3*x2 - 2*x2^2");
  setenv("SBTLAB_THREADS", "1", 1);
  const auto serial = transform_limit(p, 0.5, default_grid());
  setenv("SBTLAB_THREADS", "4", 1);
  const auto parallel = transform_limit(p, 0.5, default_grid());
  unsetenv("SBTLAB_THREADS");
  REQUIRE(serial.rows.size() == parallel.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i) CHECK(serial.rows[i].abs_error == parallel.rows[i].abs_error);
  CHECK(serial.fitted_rate == parallel.fitted_rate);
}
