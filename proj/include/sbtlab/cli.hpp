#pragma once

// The sbtlab command-line driver: isometry, converge and verify.

#include "sbtlab/poly.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sbt::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// A precondition or usage problem; reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NamedPoly {
  std::string name;  // preset name or the inline text
  std::string text;  // inline form
};

struct ExperimentConfig {
  std::string command;
  std::vector<std::string> polys;
  std::optional<std::size_t> k;
  unsigned deg = 4;
  std::vector<int> grid;
  std::vector<double> times{1.0};
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string out;
  std::string quantity = "laplacian";
  unsigned max_degree = 6;
};

/// "10,100,1000" or "a..b" (the values 1 and 3 times powers of ten inside
/// [a, b], plus both ends).
std::vector<int> parse_grid(const std::string& text);
std::vector<double> parse_times(const std::string& text);

/// Expands presets (x1, x1sq, mixed, one, random) and validates inline
/// polynomials. random uses k, deg and seed.
std::vector<NamedPoly> resolve_polys(const ExperimentConfig& cfg);

/// Largest variable count used by the resolved polynomials, or cfg.k if larger.
std::size_t effective_k(const ExperimentConfig& cfg, const std::vector<NamedPoly>& polys);

int cmd_isometry(const ExperimentConfig& cfg, std::ostream& out);
int cmd_converge(const ExperimentConfig& cfg, std::ostream& out);
int cmd_verify(const ExperimentConfig& cfg, std::ostream& out);

/// Parses argv and runs a command. Usage errors go to err with exit code 2.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sbt::cli
