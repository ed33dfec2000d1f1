#include "sbtlab/diffops.hpp"

#include "sbtlab/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace sbt {

void require_below_dimension(std::size_t nvars, int N) {
  if (N < 1) throw std::invalid_argument("dimension parameter N must be at least 1");
  if (nvars >= static_cast<std::size_t>(N))
    throw std::domain_error("polynomial uses " + std::to_string(nvars) + " variables but N = " + std::to_string(N) +
                            " (need k < N)");
}

namespace {

void validate_sphere_params(int N, const Rational& b2) {
  if (N < 1) throw std::invalid_argument("N must be at least 1");
  if (b2 <= 0) throw std::invalid_argument("b^2 must be positive");
}

const char* kind_name(OpKind k) {
  switch (k) {
    case OpKind::Laplacian: return "Laplacian";
    case OpKind::Euler: return "Euler";
    case OpKind::Hermite: return "Hermite";
    case OpKind::SphericalLaplacian: return "SphericalLaplacian";
    case OpKind::LaplacianA: return "Laplacian_a";
    case OpKind::LaplacianAbar: return "Laplacian_abar";
    case OpKind::EulerA: return "Euler_a";
    case OpKind::EulerAbar: return "Euler_abar";
    case OpKind::JsqA: return "Jsq_a";
    case OpKind::JsqAbar: return "Jsq_abar";
    case OpKind::GammaN: return "GammaN";
    case OpKind::Gk: return "Gk";
  }
  return "?";
}

}  // namespace

OperatorSpec::OperatorSpec(Domain d, OpTerm t) : domain_(d) { terms_.push_back(std::move(t)); }

OperatorSpec OperatorSpec::laplacian(VarRange range) { return {Domain::Real, {OpKind::Laplacian, 1, 0, 0, range}}; }
OperatorSpec OperatorSpec::euler(VarRange range) { return {Domain::Real, {OpKind::Euler, 1, 0, 0, range}}; }
OperatorSpec OperatorSpec::hermite() { return {Domain::Real, {OpKind::Hermite}}; }
OperatorSpec OperatorSpec::spherical_laplacian(int N, const Rational& b2) {
  validate_sphere_params(N, b2);
  return {Domain::Real, {OpKind::SphericalLaplacian, 1, N, b2, {}}};
}
OperatorSpec OperatorSpec::laplacian_a() { return {Domain::Complex, {OpKind::LaplacianA}}; }
OperatorSpec OperatorSpec::laplacian_abar() { return {Domain::Complex, {OpKind::LaplacianAbar}}; }
OperatorSpec OperatorSpec::euler_a() { return {Domain::Complex, {OpKind::EulerA}}; }
OperatorSpec OperatorSpec::euler_abar() { return {Domain::Complex, {OpKind::EulerAbar}}; }
OperatorSpec OperatorSpec::jsq_a(int N, const Rational& b2) {
  validate_sphere_params(N, b2);
  return {Domain::Complex, {OpKind::JsqA, 1, N, b2, {}}};
}
OperatorSpec OperatorSpec::jsq_abar(int N, const Rational& b2) {
  validate_sphere_params(N, b2);
  return {Domain::Complex, {OpKind::JsqAbar, 1, N, b2, {}}};
}
OperatorSpec OperatorSpec::gamma_n(int N, const Rational& b2) {
  validate_sphere_params(N, b2);
  return {Domain::Complex, {OpKind::GammaN, 1, N, b2, {}}};
}
OperatorSpec OperatorSpec::g_k() { return {Domain::Complex, {OpKind::Gk}}; }

bool OperatorSpec::strictly_lowering() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const OpTerm& t) {
    return t.weight == 0 || t.kind == OpKind::Laplacian || t.kind == OpKind::LaplacianA ||
           t.kind == OpKind::LaplacianAbar;
  });
}

int OperatorSpec::dimension_bound() const {
  int bound = 0;
  for (const OpTerm& t : terms_)
    if (t.N > 0 && (bound == 0 || t.N < bound)) bound = t.N;
  return bound;
}

std::string OperatorSpec::key() const {
  std::string out;
  for (const OpTerm& t : terms_) {
    if (!out.empty()) out += " + ";
    out += to_string(t.weight) + "*" + kind_name(t.kind);
    if (t.N > 0) out += "(N=" + std::to_string(t.N) + ",b2=" + to_string(t.b2) + ")";
    if (!(t.range == VarRange{})) {
      out += "[" + std::to_string(t.range.first) + ":";
      out += t.range.count == VarRange::all ? std::string("*") : std::to_string(t.range.count);
      out += "]";
    }
  }
  return out;
}

OperatorSpec operator+(OperatorSpec a, const OperatorSpec& b) {
  if (a.domain_ != b.domain_) throw std::invalid_argument("cannot add real-variable and complex-variable operators");
  a.terms_.insert(a.terms_.end(), b.terms_.begin(), b.terms_.end());
  return a;
}

OperatorSpec operator-(OperatorSpec a, const OperatorSpec& b) { return a + Rational(-1) * b; }

OperatorSpec operator*(const Rational& s, OperatorSpec a) {
  for (OpTerm& t : a.terms_) t.weight *= s;
  return a;
}

void wrong_domain(OpKind kind) {
  const bool complex_kind = kind != OpKind::Laplacian && kind != OpKind::Euler && kind != OpKind::Hermite &&
                            kind != OpKind::SphericalLaplacian;
  throw std::invalid_argument(std::string(kind_name(kind)) +
                              (complex_kind ? " acts on complex variables" : " acts on real variables"));
}

// ---------------------------------------------------------------------------

template <class Key, Field S>
OperatorMatrix<Key, S> operator*(const OperatorMatrix<Key, S>& a, const OperatorMatrix<Key, S>& b) {
  a.require_same_basis(b);
  const std::size_t n = a.dim();
  OperatorMatrix<Key, S> c(a.basis_handle());
  for (std::size_t i = 0; i < n; ++i) {
    auto crow = c.row(i);
    for (std::size_t k = 0; k < n; ++k) {
      const S& aik = a(i, k);
      if (is_zero(aik)) continue;
      auto brow = b.row(k);
      if constexpr (std::is_same_v<S, double>) {
        kernels::axpy(n, aik, brow.data(), crow.data());
      } else {
        for (std::size_t j = 0; j < n; ++j)
          if (!is_zero(brow[j])) crow[j] += aik * brow[j];
      }
    }
  }
  return c;
}

template <class Key, Field S>
double max_abs_entry(const OperatorMatrix<Key, S>& m) {
  double r = 0;
  for (const S& x : m.data()) r = std::max(r, magnitude(x));
  return r;
}

template <class Key, Field S>
double max_abs_difference(const OperatorMatrix<Key, S>& a, const OperatorMatrix<Key, S>& b) {
  a.require_same_basis(b);
  if constexpr (std::is_same_v<S, double>) {
    return kernels::max_abs_diff(a.data().size(), a.data().data(), b.data().data());
  } else {
    return max_abs_entry(a - b);
  }
}

template <class Key>
std::shared_ptr<const Basis<Key>> make_basis(std::size_t k, unsigned max_degree) {
  return std::make_shared<const Basis<Key>>(k, max_degree);
}

template <class Key, Field S>
OperatorMatrix<Key, S> to_matrix(const OperatorSpec& op, std::size_t k, unsigned l) {
  auto basis = make_basis<Key>(k, l);
  GradedOperator<Key, S> g(op);
  using Poly = typename GradedOperator<Key, S>::poly_type;
  g.check(Poly(k));
  OperatorMatrix<Key, S> m(basis);
  for (std::size_t j = 0; j < basis->size(); ++j) {
    Poly p(k);
    p.add_term((*basis)[j], typename Poly::coef_type(1));
    const Poly image = g.apply(p);
    for (const auto& [key, c] : image.terms()) {
      if constexpr (std::is_same_v<Key, MultiIndex>) {
        m(basis->index_of(key), j) = c;
      } else {
        m(basis->index_of(key), j) = c.re;
      }
    }
  }
  return m;
}

#define SBT_INSTANTIATE_MATRIX(KEY, S)                                                                 \
  template OperatorMatrix<KEY, S> operator*(const OperatorMatrix<KEY, S>&, const OperatorMatrix<KEY, S>&); \
  template double max_abs_entry(const OperatorMatrix<KEY, S>&);                                        \
  template double max_abs_difference(const OperatorMatrix<KEY, S>&, const OperatorMatrix<KEY, S>&);    \
  template OperatorMatrix<KEY, S> to_matrix<KEY, S>(const OperatorSpec&, std::size_t, unsigned);

SBT_INSTANTIATE_MATRIX(MultiIndex, double)
SBT_INSTANTIATE_MATRIX(MultiIndex, Rational)
SBT_INSTANTIATE_MATRIX(BiIndex, double)
SBT_INSTANTIATE_MATRIX(BiIndex, Rational)
#undef SBT_INSTANTIATE_MATRIX

template std::shared_ptr<const Basis<MultiIndex>> make_basis<MultiIndex>(std::size_t, unsigned);
template std::shared_ptr<const Basis<BiIndex>> make_basis<BiIndex>(std::size_t, unsigned);

}  // namespace sbt
