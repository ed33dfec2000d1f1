#include <doctest.h>

#include "sbtlab/kernels.hpp"
#include "sbtlab/oracle.hpp"
#include "sbtlab/poly_parse.hpp"
#include "sbtlab/semigroup.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

using namespace sbt::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

const KernelTable& simd() {
  const KernelTable* t = avx2_table();
  return t != nullptr && cpu_has_avx2() ? *t : scalar_table();
}

}  // namespace

TEST_CASE("SIMD kernels match the scalar reference") {
  if (&simd() == &scalar_table()) MESSAGE("no AVX2 on this machine; comparing scalar with itself");
  std::mt19937_64 rng(1);
  for (std::size_t n : {0, 1, 3, 4, 7, 8, 15, 16, 17, 31, 33, 64, 1000, 1003}) {
    const auto x = random_vector(n, rng);
    const auto y = random_vector(n, rng);
    auto y1 = y;
    auto y2 = y;
    scalar_table().axpy(n, 0.37, x.data(), y1.data());
    simd().axpy(n, 0.37, x.data(), y2.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(std::fabs(y1[i] - y2[i]) <= 1e-15 * (std::fabs(0.37 * x[i]) + std::fabs(y[i])));

    const double d1 = scalar_table().dot(n, x.data(), y.data());
    const double d2 = simd().dot(n, x.data(), y.data());
    double scale = 0;
    for (std::size_t i = 0; i < n; ++i) scale += std::fabs(x[i] * y[i]);
    CHECK(std::fabs(d1 - d2) <= 1e-14 * std::max(scale, 1.0));

    const double s1 = scalar_table().sum_squares(n, x.data());
    const double s2 = simd().sum_squares(n, x.data());
    CHECK(std::fabs(s1 - s2) <= 1e-14 * std::max(s1, 1.0));

    CHECK(scalar_table().max_abs_diff(n, x.data(), y.data()) == simd().max_abs_diff(n, x.data(), y.data()));
  }
}

TEST_CASE("max_abs_diff propagates NaN in both variants") {
  std::vector<double> x(19, 1.0), y(19, 1.0);
  for (std::size_t pos : {0, 5, 16, 18}) {
    auto z = y;
    z[pos] = std::numeric_limits<double>::quiet_NaN();
    CHECK(std::isnan(scalar_table().max_abs_diff(x.size(), x.data(), z.data())));
    CHECK(std::isnan(simd().max_abs_diff(x.size(), x.data(), z.data())));
  }
  CHECK(scalar_table().max_abs_diff(0, x.data(), y.data()) == 0.0);
}

TEST_CASE("runtime selection") {
  const KernelTable& before = active();
  CHECK(select("scalar"));
  CHECK(std::string(active().name) == "scalar");
  CHECK_FALSE(select("sse9"));
  if (avx2_table() != nullptr && cpu_has_avx2()) {
    CHECK(select("avx2"));
    CHECK(std::string(active().name) == "avx2");
  }
  CHECK(select(before.name));
}

TEST_CASE("library results agree under both kernel tables") {
  using namespace sbt;
  const std::string before = active().name;
  auto run = [] {
    const auto g = to_matrix<MultiIndex, double>(g_k_real(2), 4, 5);
    const auto du = to_matrix<MultiIndex, double>(OperatorSpec::laplacian({0, 2}), 4, 5);
    const auto prod = exp_matrix(0.7 * g) * exp_matrix(0.5 * du);
    const auto p = convert<double>(parse_real_poly("x1^4 - x2^2*x3"));
    return std::make_pair(prod, mc_sphere_moment(p, 9, 4000, 3).value);
  };
  REQUIRE(select("scalar"));
  const auto [m1, mc1] = run();
  REQUIRE(select(simd().name));
  const auto [m2, mc2] = run();
  select(before);
  CHECK(max_abs_difference(m1, m2) <= 1e-13 * max_abs_entry(m1));
  CHECK(std::fabs(mc1 - mc2) <= 1e-12);
}
