#pragma once

// Exponentials e^{t A} of graded operators on polynomial spaces.
//
// Every operator here splits as A = D + L with D diagonal on monomials and L
// strictly lowering the degree. Expanding e^{t(D+L)} in powers of L gives
//
//   e^{tA} e_m = sum_n t^n sum_{paths m=m0 -> m1 -> ... -> mn} (L-weights) * exp[t d0, ..., t dn] e_mn
//
// where exp[...] is the divided difference of exp on the diagonal values met
// along the path. The sum terminates after deg/2 steps, repeated diagonal
// values are handled by the divided difference itself, and paths with the
// same multiset of diagonal values are merged.

#include "sbtlab/diffops.hpp"
#include "sbtlab/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace sbt {

/// Upper bound on dim P^{<=l} accepted by the exponential routines.
std::size_t dimension_cap();
void set_dimension_cap(std::size_t cap);
/// Throws std::length_error naming the dimension when nvars real variables
/// of degree <= l exceed the cap.
void check_dimension(std::size_t nvars, unsigned l);

/// Divided difference exp[x0, ..., xn] (any multiplicities), computed as the
/// corner entry of exp of the bidiagonal matrix with diagonal x and unit
/// superdiagonal.
double exp_divided_difference(std::span<const double> nodes);

/// Memoised divided differences keyed by the sorted node list.
class DividedDifferenceTable {
 public:
  double operator()(std::vector<double> nodes);

 private:
  std::map<std::vector<double>, double> memo_;
};

/// e^{tA} q by the path sum above. diag(key) returns d(key) as double;
/// lower(p) applies L. Coefficients may be real or complex.
template <class Key, class Coef, class Diag, class Lower>
SparsePoly<Key, Coef> path_sum_exp(const SparsePoly<Key, Coef>& q, double t, Diag diag, Lower lower) {
  using Poly = SparsePoly<Key, Coef>;
  DividedDifferenceTable dd;
  std::map<std::vector<double>, Poly> layer;
  for (const auto& [k, c] : q.terms()) {
    Poly& bucket = layer.try_emplace({t * diag(k)}, Poly(q.nvars())).first->second;
    bucket.add_term(k, c);
  }
  Poly out(q.nvars());
  std::size_t step = 0;
  while (!layer.empty()) {
    std::map<std::vector<double>, Poly> next;
    for (const auto& [nodes, bucket] : layer) {
      if (bucket.is_zero()) continue;
      Poly contrib = bucket;
      contrib *= std::pow(t, static_cast<double>(step)) * dd(nodes);
      out += contrib;
      if (t == 0.0) continue;
      const Poly lowered = lower(bucket);
      for (const auto& [k, c] : lowered.terms()) {
        std::vector<double> grown = nodes;
        grown.insert(std::upper_bound(grown.begin(), grown.end(), t * diag(k)), t * diag(k));
        next.try_emplace(grown, Poly(q.nvars())).first->second.add_term(k, c);
      }
    }
    layer = std::move(next);
    if (++step > 4096) throw std::logic_error("path sum did not terminate: operator is not degree-lowering");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polynomial-level exponentials

/// sum_n (t op)^n q / n! for strictly lowering op; exact when S is Rational.
template <Field S>
RealPoly<S> exp_nilpotent(const OperatorSpec& op, const S& t, const RealPoly<S>& q);
template <Field S>
CxPoly<S> exp_nilpotent(const OperatorSpec& op, const S& t, const CxPoly<S>& q);

/// e^{t op} q for a graded operator; k and l bound the space (cap checked).
RealPoly<double> exp_graded(const OperatorSpec& op, double t, const RealPoly<double>& q, std::size_t k, unsigned l);
CxPoly<double> exp_graded(const OperatorSpec& op, double t, const CxPoly<double>& q, std::size_t k, unsigned l);
/// Same, with the space read off q (k = nvars, l = degree).
RealPoly<double> exp_graded(const OperatorSpec& op, double t, const RealPoly<double>& q);
CxPoly<double> exp_graded(const OperatorSpec& op, double t, const CxPoly<double>& q);

/// e^{lambda E} q = q(e^lambda x).
RealPoly<double> dilation_exp(double lambda, const RealPoly<double>& q);
/// e^{lambda E_a} on holomorphic input; a -> e^lambda a in general.
CxPoly<double> dilation_exp(double lambda, const CxPoly<double>& q);

// ---------------------------------------------------------------------------
// Matrix-level exponentials

template <class Key>
using RealMatrix = OperatorMatrix<Key, double>;

/// True when every off-diagonal entry maps a degree-m basis element into
/// strictly lower degree (diagonal inside degree blocks, zero below them).
template <class Key>
bool is_graded_lowering(const RealMatrix<Key>& m);

/// exp(M). Graded matrices use the path sum column by column; anything
/// else goes through the dense Pade routine.
template <class Key>
RealMatrix<Key> exp_matrix(const RealMatrix<Key>& m);

/// Dense scaling-and-squaring Pade exponential (Eigen). Used as an
/// independent check and as the fallback of exp_matrix.
template <class Key>
RealMatrix<Key> dense_expm(const RealMatrix<Key>& m);

/// The matrix of e^{t op} on P^{<=l}, memoised.
template <class Key>
std::shared_ptr<const RealMatrix<Key>> semigroup_matrix(const OperatorSpec& op, double t, std::size_t k, unsigned l);

/// Thread-safe memo of realized semigroup matrices keyed by (op, k, l, t).
/// Each entry is built once; concurrent readers share it.
class SemigroupCache {
 public:
  template <class Key>
  std::shared_ptr<const RealMatrix<Key>> get(const OperatorSpec& op, double t, std::size_t k, unsigned l,
                                             const std::function<RealMatrix<Key>()>& build);
  std::size_t size() const;
  void clear();

 private:
  struct Entry {
    std::once_flag once;
    std::shared_ptr<const void> value;
  };
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> entries_;
};

SemigroupCache& default_cache();

// ---------------------------------------------------------------------------
// Baker-Campbell-Hausdorff checks for [X, Y] = alpha Y

struct BchReport {
  double alpha = 0;
  double hypothesis_residual = 0;  // max |[X,Y] - alpha Y|
  // The deviations are max-abs differences divided by max(1, max-abs entry of
  // the right-hand side).
  double product_xy = 0;  // e^X e^Y vs e^{X + alpha/(1-e^{-alpha}) Y}
  double product_yx = 0;  // e^Y e^X vs e^{X - alpha/(1-e^{alpha}) Y}
  double sum_split = 0;   // e^X e^{(1-e^{-alpha})/alpha Y} vs e^{X+Y}
  double max_deviation() const { return std::max({product_xy, product_yx, sum_split}); }
};

/// alpha / (1 - e^{-alpha}), equal to 1 at alpha = 0.
double bch_coefficient_xy(double alpha);
/// -alpha / (1 - e^{alpha}), equal to 1 at alpha = 0.
double bch_coefficient_yx(double alpha);
/// (1 - e^{-alpha}) / alpha, equal to 1 at alpha = 0.
double bch_coefficient_split(double alpha);

/// Throws std::invalid_argument if [X, Y] differs from alpha Y by more than
/// hypothesis_tol relative to max|Y| (absolute when Y = 0).
template <class Key>
BchReport bch_check(const RealMatrix<Key>& x, const RealMatrix<Key>& y, double alpha, double hypothesis_tol = 1e-12);

/// Relative max-abs difference between e^{Δ_u/2} e^{T G_k} and
/// e^{(T/2)E_u} e^{((e^T+1)/4)Δ_u} e^{(T/2)E_v} e^{((e^T-1)/4)Δ_v}
/// on polynomials of degree <= l in real coordinates (u, v) in R^{2k}.
double factor_quadric_limit(std::size_t k, unsigned l, double T);

/// G_k written in the real coordinates u (first k variables) and v (last k).
OperatorSpec g_k_real(std::size_t k);

}  // namespace sbt
