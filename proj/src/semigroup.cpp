#include "sbtlab/semigroup.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <Eigen/Dense>

#include <atomic>
#include <cstdio>
#include <limits>

namespace sbt {

namespace {

std::atomic<std::size_t> g_dimension_cap{20000};

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::size_t dimension_cap() { return g_dimension_cap.load(); }
void set_dimension_cap(std::size_t cap) { g_dimension_cap.store(cap); }

void check_dimension(std::size_t nvars, unsigned l) {
  const std::size_t dim = graded_dimension(nvars, l);
  if (dim > dimension_cap())
    throw std::length_error("dim P^{<=" + std::to_string(l) + "} in " + std::to_string(nvars) +
                            " real variables is " + std::to_string(dim) + ", above the cap " +
                            std::to_string(dimension_cap()));
}

// ---------------------------------------------------------------------------
// Divided differences of exp

double exp_divided_difference(std::span<const double> nodes) {
  const std::size_t n = nodes.size();
  if (n == 0) throw std::invalid_argument("divided difference of no nodes");
  const double shift = *std::max_element(nodes.begin(), nodes.end());
  if (n == 1) return std::exp(nodes[0]);
  if (!std::isfinite(shift)) return std::numeric_limits<double>::quiet_NaN();

  // Z = bidiag(x - shift, 1); exp(Z) has exp[x_0..x_{n-1}] * e^{-shift} in its corner
  double spread = 0;
  for (double x : nodes) spread = std::max(spread, shift - x);
  int squarings = 0;
  double scale = 1;
  while ((spread + 1) * scale > 0.25) {
    scale *= 0.5;
    ++squarings;
  }
  auto at = [n](std::vector<double>& m, std::size_t i, std::size_t j) -> double& { return m[i * n + j]; };
  std::vector<double> z(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    at(z, i, i) = (nodes[i] - shift) * scale;
    if (i + 1 < n) at(z, i, i + 1) = scale;
  }
  auto multiply = [&](std::vector<double>& a, std::vector<double>& b) {
    std::vector<double> c(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i; k < n; ++k) {
        const double aik = at(a, i, k);
        if (aik == 0) continue;
        for (std::size_t j = k; j < n; ++j) at(c, i, j) += aik * at(b, k, j);
      }
    return c;
  };
  // Taylor series; ||Z|| <= 1/4 so 24 terms reach far below unit roundoff
  std::vector<double> result(n * n, 0.0);
  std::vector<double> term(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) at(result, i, i) = at(term, i, i) = 1.0;
  for (int p = 1; p <= 24; ++p) {
    term = multiply(term, z);
    for (double& x : term) x /= p;
    for (std::size_t i = 0; i < n * n; ++i) result[i] += term[i];
  }
  for (int s = 0; s < squarings; ++s) result = multiply(result, result);
  return at(result, 0, n - 1) * std::exp(shift);
}

double DividedDifferenceTable::operator()(std::vector<double> nodes) {
  std::sort(nodes.begin(), nodes.end());
  auto it = memo_.find(nodes);
  if (it != memo_.end()) return it->second;
  const double v = exp_divided_difference(nodes);
  memo_.emplace(std::move(nodes), v);
  return v;
}

// ---------------------------------------------------------------------------
// Polynomial exponentials

namespace {

template <class Key, Field S, class Poly>
Poly exp_nilpotent_impl(const OperatorSpec& op, const S& t, const Poly& q) {
  if (!op.strictly_lowering())
    throw std::invalid_argument("exp_nilpotent needs a strictly degree-lowering operator, got " + op.key());
  GradedOperator<Key, S> g(op);
  Poly out = q;
  Poly term = q;
  for (long long n = 1; !term.is_zero(); ++n) {
    term = g.lower(term);
    term *= t / S(n);
    out += term;
  }
  return out;
}

template <class Key, class Poly>
Poly exp_graded_impl(const OperatorSpec& op, double t, const Poly& q, std::size_t nvars, std::size_t k,
                     unsigned l) {
  if (q.degree() > l)
    throw std::invalid_argument("polynomial of degree " + std::to_string(q.degree()) + " outside P^{<=" +
                                std::to_string(l) + "}");
  if (q.nvars() > k) throw std::invalid_argument("polynomial uses more variables than the space allows");
  check_dimension(nvars, l);
  GradedOperator<Key, double> g(op);
  Poly shaped = q;
  shaped.set_nvars(k);
  g.check(shaped);
  return path_sum_exp(
      shaped, t, [&g](const Key& key) { return g.diag(key); }, [&g](const Poly& p) { return g.lower(p); });
}

}  // namespace

template <Field S>
RealPoly<S> exp_nilpotent(const OperatorSpec& op, const S& t, const RealPoly<S>& q) {
  return exp_nilpotent_impl<MultiIndex, S>(op, t, q);
}
template <Field S>
CxPoly<S> exp_nilpotent(const OperatorSpec& op, const S& t, const CxPoly<S>& q) {
  return exp_nilpotent_impl<BiIndex, S>(op, t, q);
}

template RealPoly<double> exp_nilpotent(const OperatorSpec&, const double&, const RealPoly<double>&);
template RealPoly<Rational> exp_nilpotent(const OperatorSpec&, const Rational&, const RealPoly<Rational>&);
template CxPoly<double> exp_nilpotent(const OperatorSpec&, const double&, const CxPoly<double>&);
template CxPoly<Rational> exp_nilpotent(const OperatorSpec&, const Rational&, const CxPoly<Rational>&);

RealPoly<double> exp_graded(const OperatorSpec& op, double t, const RealPoly<double>& q, std::size_t k, unsigned l) {
  return exp_graded_impl<MultiIndex>(op, t, q, k, k, l);
}

CxPoly<double> exp_graded(const OperatorSpec& op, double t, const CxPoly<double>& q, std::size_t k, unsigned l) {
  return exp_graded_impl<BiIndex>(op, t, q, 2 * k, k, l);
}

RealPoly<double> exp_graded(const OperatorSpec& op, double t, const RealPoly<double>& q) {
  return exp_graded(op, t, q, q.nvars(), q.degree());
}

CxPoly<double> exp_graded(const OperatorSpec& op, double t, const CxPoly<double>& q) {
  return exp_graded(op, t, q, q.nvars(), q.degree());
}

RealPoly<double> dilation_exp(double lambda, const RealPoly<double>& q) { return dilate(q, std::exp(lambda)); }

CxPoly<double> dilation_exp(double lambda, const CxPoly<double>& q) {
  return dilate(q, Complex<double>(std::exp(lambda)));
}

// ---------------------------------------------------------------------------
// Matrix exponentials

template <class Key>
bool is_graded_lowering(const RealMatrix<Key>& m) {
  const auto& basis = m.basis();
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (i != j && m(i, j) != 0.0 && basis[i].degree() >= basis[j].degree()) return false;
  return true;
}

template <class Key>
RealMatrix<Key> dense_expm(const RealMatrix<Key>& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = m(i, j);
  Eigen::MatrixXd e = a.exp();
  RealMatrix<Key> out(m.basis_handle());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = e(i, j);
  return out;
}

template <class Key>
RealMatrix<Key> exp_matrix(const RealMatrix<Key>& m) {
  if (!is_graded_lowering(m)) return dense_expm(m);
  const auto& basis = m.basis();
  const std::size_t n = m.dim();
  using Poly = SparsePoly<Key, double>;
  // column lists of the off-diagonal part
  std::vector<std::vector<std::pair<std::size_t, double>>> cols(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && m(i, j) != 0.0) cols[j].emplace_back(i, m(i, j));
  auto diag = [&](const Key& key) { return m(basis.index_of(key), basis.index_of(key)); };
  auto lower = [&](const Poly& p) {
    Poly out(basis.k());
    for (const auto& [key, c] : p.terms())
      for (const auto& [i, v] : cols[basis.index_of(key)]) out.add_term(basis[i], c * v);
    return out;
  };
  RealMatrix<Key> out(m.basis_handle());
  for (std::size_t j = 0; j < n; ++j) {
    Poly e(basis.k());
    e.add_term(basis[j], 1.0);
    const Poly col = path_sum_exp(e, 1.0, diag, lower);
    for (const auto& [key, c] : col.terms()) out(basis.index_of(key), j) = c;
  }
  return out;
}

template <class Key>
std::shared_ptr<const RealMatrix<Key>> SemigroupCache::get(const OperatorSpec& op, double t, std::size_t k,
                                                           unsigned l,
                                                           const std::function<RealMatrix<Key>()>& build) {
  std::string key = std::string(std::is_same_v<Key, MultiIndex> ? "R|" : "C|") + op.key() + "|" +
                    std::to_string(k) + "|" + std::to_string(l) + "|" + format_double(t);
  std::shared_ptr<Entry> entry;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto& slot = entries_[key];
    if (!slot) slot = std::make_shared<Entry>();
    entry = slot;
  }
  std::call_once(entry->once, [&] { entry->value = std::make_shared<const RealMatrix<Key>>(build()); });
  return std::static_pointer_cast<const RealMatrix<Key>>(entry->value);
}

std::size_t SemigroupCache::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.size();
}

void SemigroupCache::clear() {
  std::lock_guard<std::mutex> lock(mutex_);
  entries_.clear();
}

SemigroupCache& default_cache() {
  static SemigroupCache cache;
  return cache;
}

template <class Key>
std::shared_ptr<const RealMatrix<Key>> semigroup_matrix(const OperatorSpec& op, double t, std::size_t k, unsigned l) {
  check_dimension(std::is_same_v<Key, MultiIndex> ? k : 2 * k, l);
  return default_cache().get<Key>(op, t, k, l, [&] {
    auto basis = make_basis<Key>(k, l);
    GradedOperator<Key, double> g(op);
    using Poly = typename GradedOperator<Key, double>::poly_type;
    g.check(Poly(k));
    RealMatrix<Key> out(basis);
    for (std::size_t j = 0; j < basis->size(); ++j) {
      Poly e(k);
      e.add_term((*basis)[j], typename Poly::coef_type(1.0));
      auto col = path_sum_exp(
          e, t, [&g](const Key& key) { return g.diag(key); }, [&g](const Poly& p) { return g.lower(p); });
      for (const auto& [key, c] : col.terms()) {
        if constexpr (std::is_same_v<Key, MultiIndex>) {
          out(basis->index_of(key), j) = c;
        } else {
          out(basis->index_of(key), j) = c.re;
        }
      }
    }
    return out;
  });
}

// ---------------------------------------------------------------------------
// BCH

double bch_coefficient_xy(double alpha) { return alpha == 0.0 ? 1.0 : alpha / -std::expm1(-alpha); }
double bch_coefficient_yx(double alpha) { return alpha == 0.0 ? 1.0 : -alpha / -std::expm1(alpha); }
double bch_coefficient_split(double alpha) { return alpha == 0.0 ? 1.0 : -std::expm1(-alpha) / alpha; }

template <class Key>
BchReport bch_check(const RealMatrix<Key>& x, const RealMatrix<Key>& y, double alpha, double hypothesis_tol) {
  x.require_same_basis(y);
  BchReport r;
  r.alpha = alpha;
  r.hypothesis_residual = max_abs_difference(commutator(x, y), alpha * y);
  const double y_scale = std::max(max_abs_entry(y), 1.0);
  if (!(r.hypothesis_residual <= hypothesis_tol * y_scale))
    throw std::invalid_argument("BCH hypothesis [X,Y] = alpha Y violated: residual " +
                                format_double(r.hypothesis_residual));
  const RealMatrix<Key> ex = exp_matrix(x);
  const RealMatrix<Key> ey = exp_matrix(y);
  auto rel = [](const RealMatrix<Key>& a, const RealMatrix<Key>& ref) {
    return max_abs_difference(a, ref) / std::max(1.0, max_abs_entry(ref));
  };
  r.product_xy = rel(ex * ey, exp_matrix(x + bch_coefficient_xy(alpha) * y));
  r.product_yx = rel(ey * ex, exp_matrix(x + bch_coefficient_yx(alpha) * y));
  r.sum_split = rel(ex * exp_matrix(bch_coefficient_split(alpha) * y), exp_matrix(x + y));
  return r;
}

OperatorSpec g_k_real(std::size_t k) {
  const VarRange u{0, k};
  const VarRange v{k, k};
  const Rational quarter = make_rational(1, 4);
  const Rational half = make_rational(1, 2);
  return quarter * (OperatorSpec::laplacian(v) - OperatorSpec::laplacian(u)) +
         half * (OperatorSpec::euler(u) + OperatorSpec::euler(v));
}

double factor_quadric_limit(std::size_t k, unsigned l, double T) {
  const std::size_t n = 2 * k;
  const VarRange u{0, k};
  const VarRange v{k, k};
  const auto lap_u = OperatorSpec::laplacian(u);
  const auto lap_v = OperatorSpec::laplacian(v);
  const double et = std::exp(T);
  const auto lhs = *semigroup_matrix<MultiIndex>(lap_u, 0.5, n, l) * *semigroup_matrix<MultiIndex>(g_k_real(k), T, n, l);
  const auto rhs = *semigroup_matrix<MultiIndex>(OperatorSpec::euler(u), T / 2, n, l) *
                   *semigroup_matrix<MultiIndex>(lap_u, (et + 1) / 4, n, l) *
                   *semigroup_matrix<MultiIndex>(OperatorSpec::euler(v), T / 2, n, l) *
                   *semigroup_matrix<MultiIndex>(lap_v, std::expm1(T) / 4, n, l);
  return max_abs_difference(lhs, rhs) / std::max(1.0, max_abs_entry(rhs));
}

#define SBT_INSTANTIATE_SEMIGROUP(KEY)                                                                          \
  template bool is_graded_lowering(const RealMatrix<KEY>&);                                                     \
  template RealMatrix<KEY> dense_expm(const RealMatrix<KEY>&);                                                  \
  template RealMatrix<KEY> exp_matrix(const RealMatrix<KEY>&);                                                  \
  template std::shared_ptr<const RealMatrix<KEY>> semigroup_matrix<KEY>(const OperatorSpec&, double, std::size_t, \
                                                                        unsigned);                              \
  template std::shared_ptr<const RealMatrix<KEY>> SemigroupCache::get<KEY>(                                     \
      const OperatorSpec&, double, std::size_t, unsigned, const std::function<RealMatrix<KEY>()>&);             \
  template BchReport bch_check(const RealMatrix<KEY>&, const RealMatrix<KEY>&, double, double);

SBT_INSTANTIATE_SEMIGROUP(MultiIndex)
SBT_INSTANTIATE_SEMIGROUP(BiIndex)
#undef SBT_INSTANTIATE_SEMIGROUP

}  // namespace sbt
