#pragma once

// The fixed polynomial suite used by the acceptance gate: every monomial in
// at most three variables of degree at most six, and twenty seeded random
// polynomials.

#include "sbtlab/poly.hpp"

#include <random>
#include <vector>

namespace sbt::testing {

inline constexpr std::uint64_t kSuiteSeed = 20240611;

inline std::vector<RealPoly<double>> suite_monomials() {
  std::vector<RealPoly<double>> out;
  for (const auto& m : graded_monomials(3, 6)) out.push_back(RealPoly<double>::monomial(m).set_nvars(std::max<std::size_t>(m.size(), 1)));
  return out;
}

inline std::vector<RealPoly<double>> suite_random() {
  std::mt19937_64 rng(kSuiteSeed);
  std::vector<RealPoly<double>> out;
  for (unsigned i = 0; i < 20; ++i) {
    const std::size_t k = 1 + i % 3;
    const unsigned degree = 1 + (i * 7) % 6;
    out.push_back(random_real_poly<double>(k, degree, rng));
  }
  return out;
}

inline std::vector<RealPoly<double>> suite() {
  auto out = suite_monomials();
  for (auto& p : suite_random()) out.push_back(std::move(p));
  return out;
}

inline const std::vector<int> kSuiteN{5, 10, 25, 50};
inline const std::vector<double> kSuiteT{0.1, 0.5, 1.0, 2.0};

}  // namespace sbt::testing
