#include "sbtlab/cli.hpp"

#include "sbtlab/io.hpp"
#include "sbtlab/limits.hpp"
#include "sbtlab/oracle.hpp"
#include "sbtlab/poly_parse.hpp"
#include "sbtlab/semigroup.hpp"
#include "sbtlab/transforms.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>

namespace sbt::cli {

namespace {

struct Outcome {
  double measured = 0;  // deviation found
  std::string detail;
};

struct Check {
  std::string name;
  double tol;  // pass iff measured <= tol
  std::function<Outcome()> run;
};

std::vector<RealPoly<double>> random_suite(std::size_t k, unsigned max_degree, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<RealPoly<double>> out;
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned d = 1 + static_cast<unsigned>(i % max_degree);
    out.push_back(random_real_poly<double>(k, d, rng));
  }
  return out;
}

template <class Key, class Coef>
double rel_distance(const SparsePoly<Key, Coef>& a, const SparsePoly<Key, Coef>& b) {
  return max_abs_difference(a, b) / std::max(1.0, max_abs_coefficient(b));
}

double rel_gap(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

}  // namespace

int cmd_verify(const ExperimentConfig& cfg, std::ostream& out) {
  const std::size_t k = cfg.k.value_or(2);
  const unsigned l = cfg.max_degree;
  if (k < 1 || k > 3) throw UsageError("verify supports 1 <= k <= 3");
  if (l < 2 || l > 8) throw UsageError("verify supports 2 <= --max-degree <= 8");
  const std::uint64_t seed = cfg.seed;
  auto tol = [&](double dflt) { return cfg.tol.value_or(dflt); };
  const auto suite = random_suite(k, std::min(l, 6U), 8, seed);

  std::vector<Check> checks;

  checks.push_back({"ring axioms (exact)", tol(0), [&] {
                      std::mt19937_64 rng(seed + 1);
                      int bad = 0;
                      for (int i = 0; i < 6; ++i) {
                        auto p = convert<Rational>(random_real_poly<double>(k, 3, rng));
                        auto q = convert<Rational>(random_real_poly<double>(k, 2, rng));
                        auto r = convert<Rational>(random_real_poly<double>(k, 2, rng));
                        bad += !((p * q) * r == p * (q * r));
                        bad += !(p * (q + r) == p * q + p * r);
                        bad += !(holomorphic_extend(p * q) == holomorphic_extend(p) * holomorphic_extend(q));
                      }
                      return Outcome{static_cast<double>(bad), std::to_string(bad) + " identity failures"};
                    }});

  checks.push_back({"matrix agrees with symbolic operator (exact)", tol(0), [&] {
                      const int N = static_cast<int>(k) + 3;
                      int bad = 0;
                      std::mt19937_64 rng(seed + 2);
                      const auto q = convert<Rational>(random_real_poly<double>(k, l, rng));
                      for (const auto& op : {OperatorSpec::laplacian(), OperatorSpec::euler(), OperatorSpec::hermite(),
                                             OperatorSpec::spherical_laplacian(N, Rational(N))}) {
                        const auto m = to_matrix<MultiIndex, Rational>(op, k, l);
                        const auto lhs = m.apply(coords(q, m.basis()));
                        bad += !(lhs == coords(apply(op, q), m.basis()));
                      }
                      const auto qc = holomorphic_extend(q) * conjugate(holomorphic_extend(
                                                                  convert<Rational>(random_real_poly<double>(k, 1, rng))));
                      const unsigned lc = qc.degree();
                      for (const auto& op : {OperatorSpec::gamma_n(N, Rational(N)), OperatorSpec::g_k(),
                                             OperatorSpec::jsq_a(N, Rational(N))}) {
                        const auto m = to_matrix<BiIndex, Rational>(op, k, lc);
                        bad += !(m.apply(coords(qc, m.basis())) == coords(apply(op, qc), m.basis()));
                      }
                      return Outcome{static_cast<double>(bad), std::to_string(bad) + " mismatches"};
                    }});

  checks.push_back({"[E, Laplacian] = -2 Laplacian (exact)", tol(0), [&] {
                      const auto e = to_matrix<MultiIndex, Rational>(OperatorSpec::euler(), k, l);
                      const auto d = to_matrix<MultiIndex, Rational>(OperatorSpec::laplacian(), k, l);
                      return Outcome{max_abs_difference(commutator(e, d), Rational(-2) * d), ""};
                    }});

  checks.push_back({"sphere Laplacian closed form at b^2 = N (exact)", tol(0), [&] {
                      double worst = 0;
                      for (const auto& pd : suite) {
                        const auto p = convert<Rational>(pd);
                        for (int N : {static_cast<int>(k) + 1, 10, 101}) {
                          const Rational inv = Rational(1) / Rational(N);
                          const auto e = euler(p);
                          const auto rhs = laplacian(p) - e + inv * (Rational(2) * e - euler(e));
                          worst = std::max(worst, max_abs_difference(spherical_laplacian(p, N, Rational(N)), rhs));
                        }
                      }
                      return Outcome{worst, ""};
                    }});

  checks.push_back({"semigroup law e^{(s+t)A} = e^{sA} e^{tA}", tol(1e-12), [&] {
                      const auto op = OperatorSpec::spherical_laplacian(10, Rational(10));
                      double worst = 0;
                      for (const auto& p : suite) {
                        const auto whole = exp_graded(op, 0.7, p);
                        const auto split = exp_graded(op, 0.3, exp_graded(op, 0.4, p));
                        worst = std::max(worst, rel_distance(split, whole));
                      }
                      return Outcome{worst, ""};
                    }});

  checks.push_back({"dilation equals exp of Euler operator", tol(1e-13), [&] {
                      double worst = 0;
                      for (const auto& p : suite)
                        for (double lam : {-0.8, 0.25, 1.1})
                          worst = std::max(worst, rel_distance(exp_graded(OperatorSpec::euler(), lam, p), dilation_exp(lam, p)));
                      return Outcome{worst, ""};
                    }});

  checks.push_back({"finite heat series equals graded exponential", tol(1e-12), [&] {
                      double worst = 0;
                      for (const auto& p : suite)
                        worst = std::max(worst, rel_distance(exp_graded(OperatorSpec::laplacian(), 0.35, p),
                                                             exp_nilpotent(OperatorSpec::laplacian(), 0.35, p)));
                      return Outcome{worst, ""};
                    }});

  checks.push_back({"path-sum exponential equals dense Pade exponential", tol(1e-12), [&] {
                      const auto m = to_matrix<MultiIndex, double>(OperatorSpec::spherical_laplacian(7, Rational(7)), k, l);
                      const auto a = exp_matrix(0.9 * m);
                      const auto b = dense_expm(0.9 * m);
                      return Outcome{max_abs_difference(a, b) / std::max(1.0, max_abs_entry(b)), ""};
                    }});

  checks.push_back({"BCH identities, X = -(T/2)E, Y = (T/2)Laplacian", tol(1e-11), [&] {
                      double worst = 0;
                      const auto e = to_matrix<MultiIndex, double>(OperatorSpec::euler(), k, l);
                      const auto d = to_matrix<MultiIndex, double>(OperatorSpec::laplacian(), k, l);
                      for (double T : {0.1, 0.5, 1.0, 2.0})
                        worst = std::max(worst, bch_check((-T / 2) * e, (T / 2) * d, T).max_deviation());
                      return Outcome{worst, ""};
                    }});

  checks.push_back({"BCH identities, X = T G_k, Y = Laplacian_u / 2", tol(1e-11), [&] {
                      double worst = 0;
                      const auto g = to_matrix<MultiIndex, double>(g_k_real(k), 2 * k, l);
                      const auto du = to_matrix<MultiIndex, double>(OperatorSpec::laplacian({0, k}), 2 * k, l);
                      for (double T : {0.5, 1.0})
                        worst = std::max(worst, bch_check(T * g, 0.5 * du, -T).max_deviation());
                      return Outcome{worst, ""};
                    }});

  checks.push_back({"quadric-limit factorization", tol(1e-11), [&] {
                      double worst = 0;
                      for (double T : {0.5, 1.0}) {
                        worst = std::max(worst, factor_quadric_limit(1, 4, T));
                        worst = std::max(worst, factor_quadric_limit(2, 2, T));
                      }
                      return Outcome{worst, ""};
                    }});

  checks.push_back({"limit transform: Hermite route equals dilated heat route", tol(1e-12), [&] {
                      double worst = 0;
                      for (const auto& p : suite)
                        for (double T : {0.1, 1.0, 2.0}) worst = std::max(worst, rel_distance(limit_sbt_factored(p, T), limit_sbt(p, T)));
                      return Outcome{worst, ""};
                    }});

  checks.push_back({"finite-N unitarity of the sphere transform", tol(1e-9), [&] {
                      double worst = 0;
                      for (int N : {5, 10})
                        for (double T : {0.5, 1.0}) {
                          const QuadricMoments nu(N, T);
                          for (const auto& p : suite) worst = std::max(worst, unitarity_report(p, nu).rel_error());
                        }
                      return Outcome{worst, ""};
                    }});

  checks.push_back({"unitarity of the limit transform", tol(1e-10), [&] {
                      double worst = 0;
                      for (double T : {0.1, 1.0, 2.0})
                        for (const auto& p : suite) worst = std::max(worst, unitarity_report(p, LimitTransform{T}).rel_error());
                      return Outcome{worst, ""};
                    }});

  checks.push_back({"unitarity of the Euclidean transform", tol(1e-10), [&] {
                      double worst = 0;
                      for (auto [s, t] : {std::pair{1.0, 0.5}, std::pair{2.0, 1.5}})
                        for (const auto& p : suite)
                          worst = std::max(worst, unitarity_report(p, EuclideanTransform{s, t}).rel_error());
                      return Outcome{worst, ""};
                    }});

  checks.push_back({"inner products preserved (polarization)", tol(1e-9), [&] {
                      double worst = 0;
                      for (std::size_t i = 0; i + 1 < suite.size(); ++i) {
                        const double scale = std::max(1.0, std::sqrt(unitarity_report(suite[i], LimitTransform{1.0}).domain_norm2 *
                                                                     unitarity_report(suite[i + 1], LimitTransform{1.0}).domain_norm2));
                        worst = std::max(worst, polarization_error(suite[i], suite[i + 1], SphereTransform{8, 1.0}) / scale);
                        worst = std::max(worst, polarization_error(suite[i], suite[i + 1], LimitTransform{1.0}) / scale);
                      }
                      return Outcome{worst, ""};
                    }});

  checks.push_back({"heat-operator Gaussian moments equal Isserlis sums (exact)", tol(0), [&] {
                      int bad = 0;
                      const Rational t = make_rational(3, 2);
                      for (const auto& m : graded_monomials(k, std::min(l, 8U))) {
                        auto p = RealPoly<Rational>::monomial(m);
                        bad += !(gaussian_moment(p, t) == isserlis_moment(p, t));
                      }
                      return Outcome{static_cast<double>(bad), std::to_string(bad) + " mismatches"};
                    }});

  checks.push_back({"gamma and xi moments equal tensor quadrature", tol(1e-12), [&] {
                      double worst = 0;
                      for (const auto& p : suite) {
                        const auto q = mod_square(holomorphic_extend(p));
                        const unsigned order = q.degree() / 2 + 2;
                        for (double T : {0.5, 1.0}) {
                          const auto exact = gamma_moment(q, T);
                          const auto quad = quad_gauss_moment(q, QuadGamma{T}, order);
                          worst = std::max(worst, magnitude(exact - Complex<double>(quad.value, quad.im)) / std::max(1.0, magnitude(exact)));
                        }
                        const auto exact = xi_moment(q, 1.0, 0.5);
                        const auto quad = quad_gauss_moment(q, QuadXi{1.0, 0.5}, order);
                        worst = std::max(worst, magnitude(exact - Complex<double>(quad.value, quad.im)) / std::max(1.0, magnitude(exact)));
                      }
                      return Outcome{worst, ""};
                    }});

  checks.push_back({"Monte-Carlo sphere moments within 4 standard errors", 4.0, [&] {
                      double worst = 0;
                      for (const char* text : {"x1^4", "x1^2*x2^2", "x1*x2"}) {
                        const auto p = convert<double>(parse_real_poly(text));
                        const auto est = mc_sphere_moment(p, 50, 200000, seed);
                        worst = std::max(worst, std::fabs(est.value - sphere_moment(p, 50, 50.0)) / est.std_error);
                      }
                      return Outcome{worst, "measured in standard errors"};
                    }});

  checks.push_back({"integral of a1 abar1 against gamma_T is e^T", tol(1e-12), [&] {
                      double worst = 0;
                      const auto q = var_a<double>(0) * var_abar<double>(0);
                      for (double T : {0.1, 1.0, 2.0}) {
                        worst = std::max(worst, rel_gap(gamma_moment(q, T).re, std::exp(T)));
                        worst = std::max(worst, rel_gap(quad_gauss_moment(q, QuadGamma{T}, 4).value, std::exp(T)));
                      }
                      return Outcome{worst, ""};
                    }});

  checks.push_back({"sphere moment of x1^4 is 3 - 6/(N+2)", tol(1e-12), [&] {
                      double worst = 0;
                      const auto p = convert<double>(parse_real_poly("x1^4"));
                      for (int N : default_grid())
                        worst = std::max(worst, std::fabs(std::fabs(sphere_moment(p, N, double(N)) - 3) - 6.0 / (N + 2)));
                      return Outcome{worst, ""};
                    }});

  int failures = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const Check& c : checks) {
    Outcome o;
    bool pass = false;
    try {
      o = c.run();
      pass = o.measured <= c.tol;
    } catch (const std::exception& e) {
      o.detail = std::string("exception: ") + e.what();
    }
    failures += pass ? 0 : 1;
    out << (pass ? "PASS  " : "FAIL  ") << c.name << "  measured=" << format_number(o.measured)
        << " tol=" << format_number(c.tol);
    if (!o.detail.empty()) out << "  (" << o.detail << ")";
    out << "\n";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out << (checks.size() - failures) << "/" << checks.size() << " checks passed in " << std::fixed
      << std::setprecision(1) << secs << " s\n";
  return failures == 0 ? kOk : kFailure;
}

}  // namespace sbt::cli
