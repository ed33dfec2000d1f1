#include "sbtlab/cli.hpp"

#include "sbtlab/poly_parse.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

namespace sbt::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

long parse_positive_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    throw UsageError("bad " + what + " '" + s + "'");
  }
  if (used != s.size() || v < 1) throw UsageError("bad " + what + " '" + s + "'");
  return v;
}

}  // namespace

std::vector<int> parse_grid(const std::string& text) {
  std::set<long> values;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    const long a = parse_positive_int(text.substr(0, dots), "grid bound");
    const long b = parse_positive_int(text.substr(dots + 2), "grid bound");
    if (a > b) throw UsageError("grid range " + text + " is empty");
    values.insert(a);
    values.insert(b);
    for (long decade = 1; decade <= b; decade *= 10)
      for (long mult : {1L, 3L})
        if (mult * decade >= a && mult * decade <= b) values.insert(mult * decade);
  } else {
    for (const std::string& item : split(text, ',')) values.insert(parse_positive_int(item, "grid value"));
  }
  if (values.empty()) throw UsageError("empty N grid");
  if (*values.rbegin() > 10'000'000) throw UsageError("N values above 10^7 are not supported");
  return {values.begin(), values.end()};
}

std::vector<double> parse_times(const std::string& text) {
  std::vector<double> out;
  for (const std::string& item : split(text, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("bad time '" + item + "'");
    }
    if (used != item.size() || !(v > 0) || !std::isfinite(v)) throw UsageError("times must be positive, got '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty T list");
  return out;
}

std::vector<NamedPoly> resolve_polys(const ExperimentConfig& cfg) {
  std::vector<std::string> specs = cfg.polys;
  if (specs.empty()) specs.push_back("x1");
  std::vector<NamedPoly> out;
  for (const std::string& spec : specs) {
    if (spec == "x1") {
      out.push_back({spec, "x1"});
    } else if (spec == "x1sq") {
      out.push_back({spec, "x1^2"});
    } else if (spec == "mixed") {
      out.push_back({spec, "x1^2*x2 - 3*x1*x2 + 1/2*x2^4 + 2"});
    } else if (spec == "one") {
      out.push_back({spec, "1"});
    } else if (spec == "random") {
      std::mt19937_64 rng(cfg.seed);
      const RealPoly<double> p = random_real_poly<double>(cfg.k.value_or(2), cfg.deg, rng);
      out.push_back({spec, format_poly(convert<Rational>(p))});
    } else {
      try {
        if (cfg.quantity == "quadric-moment" && cfg.command == "converge") {
          (void)parse_cx_poly(spec);
        } else {
          (void)parse_real_poly(spec);
        }
      } catch (const PolyParseError& e) {
        throw UsageError("--poly '" + spec + "': " + e.what());
      }
      out.push_back({spec, spec});
    }
  }
  return out;
}

std::size_t effective_k(const ExperimentConfig& cfg, const std::vector<NamedPoly>& polys) {
  std::size_t k = cfg.k.value_or(0);
  for (const auto& p : polys) {
    const std::size_t used =
        cfg.quantity == "quadric-moment" && cfg.command == "converge" ? parse_cx_poly(p.text).nvars()
                                                                      : parse_real_poly(p.text).nvars();
    if (cfg.k && used > *cfg.k)
      throw UsageError("polynomial '" + p.name + "' uses " + std::to_string(used) + " variables but --k is " +
                       std::to_string(*cfg.k));
    k = std::max(k, used);
  }
  return k;
}

}  // namespace sbt::cli
