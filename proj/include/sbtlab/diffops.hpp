#pragma once

// Differential operators on polynomial spaces: symbolic application to sparse
// polynomials, a small tagged representation (OperatorSpec), and dense
// matrices on graded monomial bases.

#include "sbtlab/multi_index.hpp"
#include "sbtlab/poly.hpp"
#include "sbtlab/scalar.hpp"

#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sbt {

/// Variables [first, first + count). The default covers every variable.
struct VarRange {
  static constexpr std::size_t all = std::numeric_limits<std::size_t>::max();
  std::size_t first = 0;
  std::size_t count = all;

  bool contains(std::size_t var) const { return var >= first && (count == all || var - first < count); }
  friend bool operator==(const VarRange&, const VarRange&) = default;
};

// ---------------------------------------------------------------------------
// Symbolic operators

template <class Coef>
SparsePoly<MultiIndex, Coef> laplacian(const SparsePoly<MultiIndex, Coef>& p, VarRange range = {}) {
  SparsePoly<MultiIndex, Coef> out(p.nvars());
  for (const auto& [k, c] : p.terms()) {
    for (std::size_t j = 0; j < k.size(); ++j) {
      const unsigned e = k[j];
      if (e < 2 || !range.contains(j)) continue;
      Coef d = c;
      d *= field_of_t<Coef>(static_cast<long long>(e) * (e - 1));
      out.add_term(k.with(j, e - 2), d);
    }
  }
  return out;
}

template <class Coef>
SparsePoly<MultiIndex, Coef> euler(const SparsePoly<MultiIndex, Coef>& p, VarRange range = {}) {
  SparsePoly<MultiIndex, Coef> out(p.nvars());
  for (const auto& [k, c] : p.terms()) {
    unsigned m = 0;
    for (std::size_t j = 0; j < k.size(); ++j)
      if (range.contains(j)) m += k[j];
    Coef d = c;
    d *= field_of_t<Coef>(static_cast<long long>(m));
    out.add_term(k, d);
  }
  return out;
}

template <Field S>
RealPoly<S> hermite(const RealPoly<S>& p) {
  return laplacian(p) - euler(p);
}

void require_below_dimension(std::size_t nvars, int N);

/// The k-variable representative of the sphere Laplacian on S^{N-1}(b):
/// Δp - (E^2 + (N-2)E)p / b^2.
template <Field S>
RealPoly<S> spherical_laplacian(const RealPoly<S>& p, int N, const S& b2) {
  require_below_dimension(p.nvars(), N);
  RealPoly<S> e = euler(p);
  RealPoly<S> radial = euler(e) + S(N - 2) * e;
  return laplacian(p) - (S(1) / b2) * radial;
}

/// Second derivatives in the a (holomorphic = true) or abar variables.
template <Field S>
CxPoly<S> laplacian_cx(const CxPoly<S>& q, bool holomorphic) {
  CxPoly<S> out(q.nvars());
  for (const auto& [k, c] : q.terms()) {
    const MultiIndex& m = holomorphic ? k.a : k.abar;
    for (std::size_t j = 0; j < m.size(); ++j) {
      const unsigned e = m[j];
      if (e < 2) continue;
      BiIndex shifted = k;
      (holomorphic ? shifted.a : shifted.abar) = m.with(j, e - 2);
      out.add_term(shifted, c * S(static_cast<long long>(e) * (e - 1)));
    }
  }
  return out;
}

template <Field S>
CxPoly<S> euler_cx(const CxPoly<S>& q, bool holomorphic) {
  CxPoly<S> out(q.nvars());
  for (const auto& [k, c] : q.terms())
    out.add_term(k, c * S(static_cast<long long>(holomorphic ? k.a.degree() : k.abar.degree())));
  return out;
}

template <Field S>
CxPoly<S> laplacian_a(const CxPoly<S>& q) { return laplacian_cx(q, true); }
template <Field S>
CxPoly<S> laplacian_abar(const CxPoly<S>& q) { return laplacian_cx(q, false); }
template <Field S>
CxPoly<S> euler_a(const CxPoly<S>& q) { return euler_cx(q, true); }
template <Field S>
CxPoly<S> euler_abar(const CxPoly<S>& q) { return euler_cx(q, false); }

/// -b^2 Δ_a + E_a^2 + (N-2) E_a, the quadric representative of J^2_a.
template <Field S>
CxPoly<S> jsq_a(const CxPoly<S>& q, int N, const S& b2) {
  require_below_dimension(q.nvars(), N);
  CxPoly<S> e = euler_a(q);
  return euler_a(e) + S(N - 2) * e - b2 * laplacian_a(q);
}

template <Field S>
CxPoly<S> jsq_abar(const CxPoly<S>& q, int N, const S& b2) {
  require_below_dimension(q.nvars(), N);
  CxPoly<S> e = euler_abar(q);
  return euler_abar(e) + S(N - 2) * e - b2 * laplacian_abar(q);
}

template <Field S>
CxPoly<S> gamma_n(const CxPoly<S>& q, int N, const S& b2) {
  return S(1) / S(2) * (jsq_a(q, N, b2) + jsq_abar(q, N, b2));
}

template <Field S>
CxPoly<S> g_k(const CxPoly<S>& q) {
  const S half = S(1) / S(2);
  return half * (euler_a(q) + euler_abar(q)) - half * (laplacian_a(q) + laplacian_abar(q));
}

// ---------------------------------------------------------------------------
// Tagged operators

enum class OpKind {
  Laplacian,
  Euler,
  Hermite,
  SphericalLaplacian,
  LaplacianA,
  LaplacianAbar,
  EulerA,
  EulerAbar,
  JsqA,
  JsqAbar,
  GammaN,
  Gk,
};

/// Which polynomial type an operator acts on.
enum class Domain { Real, Complex };

struct OpTerm {
  OpKind kind;
  Rational weight{1};
  int N = 0;
  Rational b2{0};
  VarRange range{};
};

/// A real-linear combination of the basic operators. Every basic operator
/// splits as a part that is diagonal on monomials plus a part lowering the
/// degree by two, and so does every combination.
class OperatorSpec {
 public:
  static OperatorSpec laplacian(VarRange range = {});
  static OperatorSpec euler(VarRange range = {});
  static OperatorSpec hermite();
  static OperatorSpec spherical_laplacian(int N, const Rational& b2);
  static OperatorSpec laplacian_a();
  static OperatorSpec laplacian_abar();
  static OperatorSpec euler_a();
  static OperatorSpec euler_abar();
  static OperatorSpec jsq_a(int N, const Rational& b2);
  static OperatorSpec jsq_abar(int N, const Rational& b2);
  static OperatorSpec gamma_n(int N, const Rational& b2);
  static OperatorSpec g_k();

  const std::vector<OpTerm>& terms() const { return terms_; }
  Domain domain() const { return domain_; }

  /// True when the diagonal part vanishes identically (so the operator is nilpotent).
  bool strictly_lowering() const;
  /// Smallest N among the terms, 0 if none carries one.
  int dimension_bound() const;
  /// Canonical text form, used as a cache key and in messages.
  std::string key() const;

  friend OperatorSpec operator+(OperatorSpec a, const OperatorSpec& b);
  friend OperatorSpec operator-(OperatorSpec a, const OperatorSpec& b);
  friend OperatorSpec operator*(const Rational& s, OperatorSpec a);

 private:
  OperatorSpec(Domain d, OpTerm t);

  Domain domain_ = Domain::Real;
  std::vector<OpTerm> terms_;
};

[[noreturn]] void wrong_domain(OpKind kind);

/// Diagonal value of one basic operator (weight excluded) on a monomial; b2
/// is the term's b^2 already converted to S.
template <Field S>
S diagonal_value(const OpTerm& t, const MultiIndex& m, const S& b2) {
  const S d(static_cast<long long>(m.degree()));
  switch (t.kind) {
    case OpKind::Laplacian:
      return S(0);
    case OpKind::Euler:
      if (t.range == VarRange{}) return d;
      return S(static_cast<long long>(
          m.partial_degree(t.range.first, t.range.count == VarRange::all ? m.size() : t.range.count)));
    case OpKind::Hermite:
      return -d;
    case OpKind::SphericalLaplacian:
      return -(d * d + S(t.N - 2) * d) / b2;
    default:
      wrong_domain(t.kind);
  }
}

template <Field S>
S diagonal_value(const OpTerm& t, const BiIndex& m, const S& /*b2*/) {
  const S p(static_cast<long long>(m.a.degree()));
  const S q(static_cast<long long>(m.abar.degree()));
  const S shift(t.N - 2);
  switch (t.kind) {
    case OpKind::LaplacianA:
    case OpKind::LaplacianAbar:
      return S(0);
    case OpKind::EulerA:
      return p;
    case OpKind::EulerAbar:
      return q;
    case OpKind::JsqA:
      return p * p + shift * p;
    case OpKind::JsqAbar:
      return q * q + shift * q;
    case OpKind::GammaN:
      return (p * p + shift * p + q * q + shift * q) / S(2);
    case OpKind::Gk:
      return (p + q) / S(2);
    default:
      wrong_domain(t.kind);
  }
}

/// The operator compiled for coefficient field S: diag(key) gives the
/// diagonal entry on a monomial, lower(p) the degree-lowering part.
template <class Key, Field S>
class GradedOperator {
 public:
  using poly_type = std::conditional_t<std::is_same_v<Key, MultiIndex>, RealPoly<S>, CxPoly<S>>;

  explicit GradedOperator(const OperatorSpec& spec) : spec_(spec) {
    constexpr Domain want = std::is_same_v<Key, MultiIndex> ? Domain::Real : Domain::Complex;
    if (spec.domain() != want) throw std::invalid_argument("operator " + spec.key() + " acts on the other variable mode");
    for (const OpTerm& t : spec.terms()) {
      weights_.push_back(from_rational<S>(t.weight));
      // b^2 only divides in terms that carry it
      b2_.push_back(t.b2 > 0 ? from_rational<S>(t.b2) : S(1));
    }
  }

  const OperatorSpec& spec() const { return spec_; }

  S diag(const Key& key) const {
    S d(0);
    const auto& terms = spec_.terms();
    for (std::size_t i = 0; i < terms.size(); ++i) d += weights_[i] * diagonal_value<S>(terms[i], key, b2_[i]);
    return d;
  }

  poly_type lower(const poly_type& p) const {
    check(p);
    poly_type out(p.nvars());
    const auto& terms = spec_.terms();
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const OpTerm& t = terms[i];
      if constexpr (std::is_same_v<Key, MultiIndex>) {
        switch (t.kind) {
          case OpKind::Laplacian:
            out += weights_[i] * sbt::laplacian(p, t.range);
            break;
          case OpKind::Hermite:
          case OpKind::SphericalLaplacian:
            out += weights_[i] * sbt::laplacian(p);
            break;
          default:
            break;
        }
      } else {
        switch (t.kind) {
          case OpKind::LaplacianA:
            out += weights_[i] * laplacian_a(p);
            break;
          case OpKind::LaplacianAbar:
            out += weights_[i] * laplacian_abar(p);
            break;
          case OpKind::JsqA:
            out -= (weights_[i] * b2_[i]) * laplacian_a(p);
            break;
          case OpKind::JsqAbar:
            out -= (weights_[i] * b2_[i]) * laplacian_abar(p);
            break;
          case OpKind::GammaN:
            out -= (weights_[i] * b2_[i] / S(2)) * (laplacian_a(p) + laplacian_abar(p));
            break;
          case OpKind::Gk:
            out -= (weights_[i] / S(2)) * (laplacian_a(p) + laplacian_abar(p));
            break;
          default:
            break;
        }
      }
    }
    return out;
  }

  poly_type apply(const poly_type& p) const {
    poly_type out = lower(p);
    for (const auto& [k, c] : p.terms()) {
      auto v = c;
      v *= diag(k);
      out.add_term(k, v);
    }
    return out;
  }

  void check(const poly_type& p) const {
    const int bound = spec_.dimension_bound();
    if (bound > 0) require_below_dimension(p.nvars(), bound);
  }

 private:
  OperatorSpec spec_;
  std::vector<S> weights_;
  std::vector<S> b2_;
};

template <Field S>
RealPoly<S> apply(const OperatorSpec& op, const RealPoly<S>& p) {
  return GradedOperator<MultiIndex, S>(op).apply(p);
}
template <Field S>
CxPoly<S> apply(const OperatorSpec& op, const CxPoly<S>& q) {
  return GradedOperator<BiIndex, S>(op).apply(q);
}

// ---------------------------------------------------------------------------
// Graded bases and dense operator matrices

template <class Key>
class Basis {
 public:
  Basis(std::size_t k, unsigned max_degree) : k_(k), max_degree_(max_degree) {
    if constexpr (std::is_same_v<Key, MultiIndex>) {
      keys_ = graded_monomials(k, max_degree);
    } else {
      keys_ = graded_bimonomials(k, max_degree);
    }
    block_start_.assign(max_degree + 2, keys_.size());
    for (std::size_t i = keys_.size(); i-- > 0;) block_start_[keys_[i].degree()] = i;
    for (std::size_t i = 0; i < keys_.size(); ++i) index_.emplace(keys_[i], i);
  }

  std::size_t k() const { return k_; }
  unsigned max_degree() const { return max_degree_; }
  std::size_t size() const { return keys_.size(); }
  const Key& operator[](std::size_t i) const { return keys_[i]; }
  const std::vector<Key>& keys() const { return keys_; }

  std::size_t index_of(const Key& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) throw std::out_of_range("monomial outside the graded basis");
    return it->second;
  }
  bool contains(const Key& key) const { return index_.count(key) > 0; }

  /// Index range [begin, end) of the homogeneous degree-m block.
  std::size_t block_begin(unsigned m) const { return block_start_[m]; }
  std::size_t block_end(unsigned m) const { return block_start_[m + 1]; }

  friend bool operator==(const Basis& a, const Basis& b) { return a.k_ == b.k_ && a.max_degree_ == b.max_degree_; }

 private:
  std::size_t k_;
  unsigned max_degree_;
  std::vector<Key> keys_;
  std::vector<std::size_t> block_start_;
  std::map<Key, std::size_t> index_;
};

/// Column j holds the coordinates of op(basis[j]). Lowering parts therefore
/// sit above the diagonal blocks (the basis runs from low to high degree).
template <class Key, Field S>
class OperatorMatrix {
 public:
  using basis_ptr = std::shared_ptr<const Basis<Key>>;

  explicit OperatorMatrix(basis_ptr basis) : basis_(std::move(basis)), n_(basis_->size()), data_(n_ * n_, S(0)) {}

  static OperatorMatrix identity(basis_ptr basis) {
    OperatorMatrix m(std::move(basis));
    for (std::size_t i = 0; i < m.n_; ++i) m(i, i) = S(1);
    return m;
  }

  const Basis<Key>& basis() const { return *basis_; }
  const basis_ptr& basis_handle() const { return basis_; }
  std::size_t dim() const { return n_; }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<S> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
  std::span<const S> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  const std::vector<S>& data() const { return data_; }
  std::vector<S>& data() { return data_; }

  OperatorMatrix& operator+=(const OperatorMatrix& o) {
    require_same_basis(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  OperatorMatrix& operator-=(const OperatorMatrix& o) {
    require_same_basis(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  OperatorMatrix& operator*=(const S& s) {
    for (S& x : data_) x *= s;
    return *this;
  }
  friend OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
  friend OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }
  friend OperatorMatrix operator*(const S& s, OperatorMatrix a) { return a *= s; }
  friend bool operator==(const OperatorMatrix& a, const OperatorMatrix& b) {
    return *a.basis_ == *b.basis_ && a.data_ == b.data_;
  }

  void require_same_basis(const OperatorMatrix& o) const {
    if (!(*basis_ == *o.basis_)) throw std::invalid_argument("operator matrices on different graded spaces");
  }

  /// y = M x for a coordinate vector whose entries may be complex.
  template <class V>
  std::vector<V> apply(const std::vector<V>& x) const {
    if (x.size() != n_) throw std::invalid_argument("coordinate vector has the wrong length");
    std::vector<V> y(n_, V(0));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        const S& a = data_[i * n_ + j];
        if (!is_zero(a)) y[i] += x[j] * a;
      }
    return y;
  }

 private:
  basis_ptr basis_;
  std::size_t n_;
  std::vector<S> data_;
};

template <class Key, Field S>
OperatorMatrix<Key, S> operator*(const OperatorMatrix<Key, S>& a, const OperatorMatrix<Key, S>& b);

template <class Key, Field S>
OperatorMatrix<Key, S> commutator(const OperatorMatrix<Key, S>& a, const OperatorMatrix<Key, S>& b) {
  a.require_same_basis(b);
  return a * b - b * a;
}

template <class Key, Field S>
double max_abs_entry(const OperatorMatrix<Key, S>& m);

template <class Key, Field S>
double max_abs_difference(const OperatorMatrix<Key, S>& a, const OperatorMatrix<Key, S>& b);

template <class Key>
std::shared_ptr<const Basis<Key>> make_basis(std::size_t k, unsigned max_degree);

/// Coordinates of p in the basis; throws if p has terms outside it.
template <class Key, class Coef>
std::vector<Coef> coords(const SparsePoly<Key, Coef>& p, const Basis<Key>& basis) {
  std::vector<Coef> out(basis.size(), Coef(0));
  for (const auto& [k, c] : p.terms()) out[basis.index_of(k)] = c;
  return out;
}

template <class Key, class Coef>
SparsePoly<Key, Coef> from_coords(std::span<const Coef> x, const Basis<Key>& basis) {
  if (x.size() != basis.size()) throw std::invalid_argument("coordinate vector has the wrong length");
  SparsePoly<Key, Coef> out(basis.k());
  for (std::size_t i = 0; i < x.size(); ++i) out.add_term(basis[i], x[i]);
  return out;
}

/// The matrix of op on P^{<=l} in k variables (k pairs for complex operators).
template <class Key, Field S>
OperatorMatrix<Key, S> to_matrix(const OperatorSpec& op, std::size_t k, unsigned l);

}  // namespace sbt
