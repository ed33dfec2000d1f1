#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace sbt {

/// Exponent vector of a monomial. Trailing zeros are trimmed on construction,
/// so x1^2 in two variables and x1^2 in five variables are the same index.
///
/// Ordering is graded: total degree first, then the exponent vector compared
/// from the first variable on with larger exponents first (so x1 precedes x2).
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::initializer_list<unsigned> exponents);
  explicit MultiIndex(std::span<const unsigned> exponents);
  explicit MultiIndex(const std::vector<unsigned>& exponents)
      : MultiIndex(std::span<const unsigned>(exponents)) {}

  /// x_{var+1}^power (variables are zero-based internally).
  static MultiIndex unit(std::size_t var, unsigned power = 1);

  /// Number of stored exponents; the index of the last used variable plus one.
  std::size_t size() const { return exps_.size(); }
  unsigned operator[](std::size_t var) const { return var < exps_.size() ? exps_[var] : 0U; }
  unsigned degree() const { return degree_; }
  bool is_constant() const { return exps_.empty(); }

  /// Sum of exponents over variables [first, first + count).
  unsigned partial_degree(std::size_t first, std::size_t count) const;

  MultiIndex with(std::size_t var, unsigned exponent) const;
  MultiIndex operator+(const MultiIndex& other) const;

  std::span<const std::uint16_t> exponents() const { return exps_; }
  std::vector<unsigned> to_vector(std::size_t min_length = 0) const;
  std::string to_string(char symbol = 'x') const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

 private:
  void trim();

  std::vector<std::uint16_t> exps_;
  unsigned degree_ = 0;
};

/// Monomial key for polynomials in (a_1..a_k, abar_1..abar_k).
struct BiIndex {
  MultiIndex a;
  MultiIndex abar;

  unsigned degree() const { return a.degree() + abar.degree(); }
  std::size_t size() const { return a.size() > abar.size() ? a.size() : abar.size(); }
  bool is_holomorphic() const { return abar.is_constant(); }
  BiIndex swapped() const { return {abar, a}; }
  BiIndex operator+(const BiIndex& o) const { return {a + o.a, abar + o.abar}; }

  friend bool operator==(const BiIndex&, const BiIndex&) = default;
  friend std::strong_ordering operator<=>(const BiIndex& x, const BiIndex& y);
};

/// All exponent vectors in `nvars` variables with total degree <= max_degree,
/// in the graded order above.
std::vector<MultiIndex> graded_monomials(std::size_t nvars, unsigned max_degree);

/// All bi-indices in k pairs of variables with total degree <= max_degree.
std::vector<BiIndex> graded_bimonomials(std::size_t k, unsigned max_degree);

/// dim P_n^{<=l} = C(n + l, l).
std::size_t graded_dimension(std::size_t nvars, unsigned max_degree);

}  // namespace sbt
