#include "helpers.hpp"

#include "sbtlab/diffops.hpp"

#include <random>

using namespace sbt;
using namespace sbt::testing;

TEST_CASE("Laplacian") {
  CHECK(laplacian(rp("x1^2")) == rp("2"));
  CHECK(laplacian(rp("x1^4")) == rp("12*x1^2"));
  CHECK(laplacian(rp("x1*x2")).is_zero());
  CHECK(laplacian(rp("x1^2 + x2^3"), VarRange{1, 1}) == rp("6*x2"));
}

TEST_CASE("Euler operator") {
  CHECK(euler(rp("x1^2")) == rp("2*x1^2"));
  CHECK(euler(rp("5")).is_zero());
  CHECK(euler(rp("x1 + x2^3")) == rp("x1 + 3*x2^3"));
}

TEST_CASE("Hermite operator") {
  CHECK(hermite(rp("x1")) == rp("-x1"));
  CHECK(hermite(rp("x1^2")) == rp("2 - 2*x1^2"));
  CHECK(hermite(rp("1")).is_zero());
}

TEST_CASE("spherical Laplacian") {
  for (int N : {2, 5, 17, 1000}) {
    const Rational b2(N);
    CHECK(spherical_laplacian(rp("x1"), N, b2) == Rational(-(N - 1)) / b2 * rp("x1"));
    CHECK(spherical_laplacian(rp("x1^2"), N, b2) == rp("2 - 2*x1^2"));
    CHECK(spherical_laplacian(rp("1"), N, make_rational(3, 7)).is_zero());
  }
  CHECK_THROWS_AS(spherical_laplacian(rp("x1*x2*x3"), 3, Rational(3)), std::domain_error);
}

TEST_CASE("spherical Laplacian splits as Hermite plus a 1/N correction") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10; ++i) {
    const auto p = convert<Rational>(random_real_poly<double>(3, 5, rng));
    const int N = 4 + i;
    const auto e = euler(p);
    const auto correction = Rational(1) / Rational(N) * (Rational(2) * e - euler(e));
    CHECK(spherical_laplacian(p, N, Rational(N)) == hermite(p) + correction);
  }
}

TEST_CASE("angular momentum operators") {
  for (int N : {3, 8}) {
    const Rational b2(N);
    CHECK(jsq_a(cp("a1"), N, b2) == Rational(N - 1) * cp("a1"));
    CHECK(jsq_a(cp("a1^2"), N, b2) == Rational(2 * N) * cp("a1^2") - Rational(2 * N) * cp("1"));
    CHECK(jsq_a(cp("abar1"), N, b2).is_zero());
    CHECK(jsq_abar(cp("abar1"), N, b2) == Rational(N - 1) * cp("abar1"));
    CHECK(gamma_n(cp("a1*abar1"), N, b2) == Rational(N - 1) * cp("a1*abar1"));
    CHECK(gamma_n(cp("a1^2"), N, b2) == Rational(N) * cp("a1^2") - Rational(N) * cp("1"));
    CHECK(gamma_n(cp("1"), N, b2).is_zero());
  }
  CHECK(g_k(cp("a1*abar1")) == cp("a1*abar1"));
  CHECK(g_k(cp("a1^2")) == cp("a1^2 - 1"));
  CHECK(g_k(cp("4")).is_zero());
}

TEST_CASE("jsq_abar is the conjugate of jsq_a") {
  const auto q = cp("a1^2*abar2 - 3*a2*abar1^3 + a1");
  CHECK(jsq_abar(q, 6, Rational(6)) == conjugate(jsq_a(conjugate(q), 6, Rational(6))));
}

TEST_CASE("operator specs apply like the symbolic functions") {
  std::mt19937_64 rng(5);
  const auto p = convert<Rational>(random_real_poly<double>(3, 6, rng));
  CHECK(apply(OperatorSpec::laplacian(), p) == laplacian(p));
  CHECK(apply(OperatorSpec::euler(), p) == euler(p));
  CHECK(apply(OperatorSpec::hermite(), p) == hermite(p));
  CHECK(apply(OperatorSpec::spherical_laplacian(7, Rational(7)), p) == spherical_laplacian(p, 7, Rational(7)));
  CHECK(apply(Rational(3) * OperatorSpec::euler() - OperatorSpec::laplacian(), p) == Rational(3) * euler(p) - laplacian(p));
  const auto q = mod_square(holomorphic_extend(p));
  CHECK(apply(OperatorSpec::gamma_n(5, Rational(5)), q) == gamma_n(q, 5, Rational(5)));
  CHECK(apply(OperatorSpec::g_k(), q) == g_k(q));
  CHECK_THROWS_AS(apply(OperatorSpec::g_k(), p), std::invalid_argument);
}

TEST_CASE("operator matrices on k = 1, l = 2") {
  const auto e = to_matrix<MultiIndex, Rational>(OperatorSpec::euler(), 1, 2);
  const auto d = to_matrix<MultiIndex, Rational>(OperatorSpec::laplacian(), 1, 2);
  const auto h = to_matrix<MultiIndex, Rational>(OperatorSpec::hermite(), 1, 2);
  REQUIRE(e.dim() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(e(i, j) == (i == j ? Rational(static_cast<long>(i)) : Rational(0)));
      // columns are inputs, so x1^2 -> 2 lands in row 0, column 2
      CHECK(d(i, j) == ((i == 0 && j == 2) ? Rational(2) : Rational(0)));
    }
  CHECK(h == d - e);
}

TEST_CASE("commutators") {
  const auto e = to_matrix<MultiIndex, Rational>(OperatorSpec::euler(), 2, 4);
  const auto d = to_matrix<MultiIndex, Rational>(OperatorSpec::laplacian(), 2, 4);
  const auto h = to_matrix<MultiIndex, Rational>(OperatorSpec::hermite(), 2, 4);
  CHECK(commutator(e, d) == Rational(-2) * d);
  CHECK(max_abs_entry(commutator(d, d)) == 0.0);
  CHECK(commutator(e, h) == Rational(-2) * d);
}

TEST_CASE("matrix apply matches symbolic apply on the complex space") {
  const auto op = OperatorSpec::gamma_n(4, Rational(4));
  const auto m = to_matrix<BiIndex, Rational>(op, 2, 3);
  const auto q = cp("a1^2*abar2 - a2 + 3*abar1*abar2");
  CHECK(m.apply(coords(q, m.basis())) == coords(apply(op, q), m.basis()));
}

TEST_CASE("matrices on different bases do not mix") {
  const auto a = to_matrix<MultiIndex, double>(OperatorSpec::euler(), 1, 2);
  const auto b = to_matrix<MultiIndex, double>(OperatorSpec::euler(), 2, 2);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
}

TEST_CASE("double and rational matrices agree") {
  const auto op = OperatorSpec::spherical_laplacian(6, Rational(6));
  const auto r = to_matrix<MultiIndex, Rational>(op, 2, 5);
  const auto d = to_matrix<MultiIndex, double>(op, 2, 5);
  for (std::size_t i = 0; i < r.dim(); ++i)
    for (std::size_t j = 0; j < r.dim(); ++j) CHECK(d(i, j) == doctest::Approx(to_double(r(i, j))));
}
