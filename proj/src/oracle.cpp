#include "sbtlab/oracle.hpp"

#include "sbtlab/kernels.hpp"
#include "sbtlab/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <stdexcept>

namespace sbt {

namespace {

constexpr std::size_t kChunks = 64;

struct Moments {
  double sum = 0;
  double sum_sq = 0;
};

struct FlatTerm {
  double coef;
  std::vector<unsigned> exps;
};

std::vector<FlatTerm> flatten(const RealPoly<double>& p) {
  std::vector<FlatTerm> out;
  for (const auto& [k, c] : p.terms()) out.push_back({c, k.to_vector()});
  return out;
}

double eval_flat(const std::vector<FlatTerm>& terms, const double* x) {
  double total = 0;
  for (const auto& t : terms) {
    double v = t.coef;
    for (std::size_t j = 0; j < t.exps.size(); ++j)
      for (unsigned e = 0; e < t.exps[j]; ++e) v *= x[j];
    total += v;
  }
  return total;
}

}  // namespace

OracleEstimate mc_sphere_moment(const RealPoly<double>& p, int N, std::uint64_t samples, std::uint64_t seed) {
  if (samples < 1000) throw std::invalid_argument("Monte-Carlo sphere moment needs at least 1000 samples");
  if (N < 1 || p.nvars() > static_cast<std::size_t>(N))
    throw std::domain_error("polynomial has more variables than the sphere dimension");
  const auto terms = flatten(p);
  const double radius = std::sqrt(static_cast<double>(N));
  const auto chunks = parallel_map(kChunks, [&](std::size_t c) {
    const std::uint64_t begin = samples * c / kChunks;
    const std::uint64_t end = samples * (c + 1) / kChunks;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    std::vector<double> g(static_cast<std::size_t>(N));
    Moments m;
    for (std::uint64_t s = begin; s < end; ++s) {
      for (double& x : g) x = normal(rng);
      const double scale = radius / std::sqrt(kernels::sum_squares(g.size(), g.data()));
      for (std::size_t j = 0; j < p.nvars(); ++j) g[j] *= scale;
      const double v = eval_flat(terms, g.data());
      m.sum += v;
      m.sum_sq += v * v;
    }
    return m;
  });
  Moments total;
  for (const auto& m : chunks) {
    total.sum += m.sum;
    total.sum_sq += m.sum_sq;
  }
  const double n = static_cast<double>(samples);
  const double mean = total.sum / n;
  const double var = std::max(0.0, (total.sum_sq - n * mean * mean) / (n - 1));
  return {mean, 0.0, std::sqrt(var / n), samples, seed};
}

GaussHermiteRule gauss_hermite(unsigned order) {
  if (order == 0) throw std::invalid_argument("quadrature order must be positive");
  // Golub-Welsch on the Jacobi matrix of the probabilists' Hermite polynomials
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(order, order);
  for (unsigned i = 1; i < order; ++i) jac(i, i - 1) = jac(i - 1, i) = std::sqrt(static_cast<double>(i));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  GaussHermiteRule rule;
  for (unsigned i = 0; i < order; ++i) {
    rule.nodes.push_back(es.eigenvalues()(i));
    const double v0 = es.eigenvectors()(0, i);
    rule.weights.push_back(v0 * v0);
  }
  return rule;
}

namespace {

struct Variances {
  double u;
  double v;
};

Variances variances(const QuadFamily& family) {
  if (const auto* g = std::get_if<QuadGauss>(&family)) {
    if (!(g->t > 0)) throw std::invalid_argument("Gauss family needs t > 0");
    return {g->t, 0.0};
  }
  if (const auto* x = std::get_if<QuadXi>(&family)) {
    if (!(x->t > 0) || !(x->t < 2 * x->s)) throw std::invalid_argument("xi family needs 0 < t < 2s");
    return {(2 * x->s - x->t) / 2, x->t / 2};
  }
  const double T = std::get<QuadGamma>(family).T;
  if (!(T > 0)) throw std::invalid_argument("gamma family needs T > 0");
  return {(std::exp(T) + 1) / 2, std::expm1(T) / 2};
}

void require_order(unsigned per_coordinate_degree, unsigned order) {
  if (per_coordinate_degree > 2 * order - 1)
    throw std::invalid_argument("quadrature order " + std::to_string(order) + " is insufficient for degree " +
                                std::to_string(per_coordinate_degree) + " (need order >= " +
                                std::to_string(per_coordinate_degree / 2 + 1) + ")");
}

}  // namespace

OracleEstimate quad_gauss_moment(const RealPoly<double>& p, const QuadFamily& family, unsigned order) {
  if (!std::holds_alternative<QuadGauss>(family)) return quad_gauss_moment(holomorphic_extend(p), family, order);
  const double sd = std::sqrt(variances(family).u);
  const GaussHermiteRule rule = gauss_hermite(order);
  double total = 0;
  for (const auto& [k, c] : p.terms()) {
    double term = c;
    for (std::size_t j = 0; j < k.size(); ++j) {
      require_order(k[j], order);
      double s = 0;
      for (unsigned i = 0; i < order; ++i) s += rule.weights[i] * std::pow(sd * rule.nodes[i], k[j]);
      term *= s;
    }
    total += term;
  }
  return {total, 0.0, 0.0, order, 0};
}

OracleEstimate quad_gauss_moment(const CxPoly<double>& q, const QuadFamily& family, unsigned order) {
  if (std::holds_alternative<QuadGauss>(family))
    throw std::invalid_argument("Gauss family integrates real-variable polynomials");
  const Variances var = variances(family);
  const double su = std::sqrt(var.u);
  const double sv = std::sqrt(var.v);
  const GaussHermiteRule rule = gauss_hermite(order);
  std::complex<double> total = 0;
  for (const auto& [k, c] : q.terms()) {
    std::complex<double> term = to_std(c);
    for (std::size_t j = 0; j < k.size(); ++j) {
      const unsigned alpha = k.a[j];
      const unsigned beta = k.abar[j];
      require_order(alpha + beta, order);
      std::complex<double> s = 0;
      for (unsigned iu = 0; iu < order; ++iu)
        for (unsigned iv = 0; iv < order; ++iv) {
          const std::complex<double> a(su * rule.nodes[iu], sv * rule.nodes[iv]);
          s += rule.weights[iu] * rule.weights[iv] * std::pow(a, static_cast<int>(alpha)) *
               std::pow(std::conj(a), static_cast<int>(beta));
        }
      term *= s;
    }
    total += term;
  }
  return {total.real(), total.imag(), 0.0, order, 0};
}

namespace {

/// Sum over perfect pairings of `labels` where a pair contributes t when the
/// two labels agree and 0 otherwise.
template <Field S>
S pairing_sum(std::vector<std::size_t>& labels, std::size_t from, const S& t) {
  if (from == labels.size()) return S(1);
  S total(0);
  for (std::size_t j = from + 1; j < labels.size(); ++j) {
    if (labels[j] != labels[from]) continue;
    std::swap(labels[from + 1], labels[j]);
    total += t * pairing_sum(labels, from + 2, t);
    std::swap(labels[from + 1], labels[j]);
  }
  return total;
}

}  // namespace

template <Field S>
S isserlis_moment(const RealPoly<S>& p, const S& t) {
  S total(0);
  for (const auto& [k, c] : p.terms()) {
    if (k.degree() % 2 != 0) continue;
    std::vector<std::size_t> labels;
    for (std::size_t j = 0; j < k.size(); ++j) labels.insert(labels.end(), k[j], j);
    total += c * pairing_sum(labels, 0, t);
  }
  return total;
}

template double isserlis_moment(const RealPoly<double>&, const double&);
template Rational isserlis_moment(const RealPoly<Rational>&, const Rational&);

}  // namespace sbt
