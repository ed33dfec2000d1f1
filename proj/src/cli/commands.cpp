#include "sbtlab/cli.hpp"

#include "sbtlab/io.hpp"
#include "sbtlab/limits.hpp"
#include "sbtlab/parallel.hpp"
#include "sbtlab/poly_parse.hpp"
#include "sbtlab/transforms.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace sbt::cli {

namespace {

void check_format(const ExperimentConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json") throw UsageError("--format must be csv or json");
}

void require_k_below(std::size_t k, const std::vector<int>& grid) {
  for (int N : grid)
    if (k >= static_cast<std::size_t>(N))
      throw UsageError("k = " + std::to_string(k) + " variables needs N > k, but the grid contains N = " +
                       std::to_string(N));
}

void emit(const ExperimentConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + cfg.out + "'");
  file << text;
}

}  // namespace

int cmd_isometry(const ExperimentConfig& cfg, std::ostream& out) {
  check_format(cfg);
  const auto polys = resolve_polys(cfg);
  const std::size_t k = effective_k(cfg, polys);
  const std::vector<int> grid = cfg.grid.empty() ? std::vector<int>{10, 100} : cfg.grid;
  require_k_below(k, grid);
  const double tol = cfg.tol.value_or(1e-9);

  std::vector<RealPoly<double>> inputs;
  for (const auto& p : polys) inputs.push_back(convert<double>(parse_real_poly(p.text)));

  struct Cell {
    int N;
    double T;
  };
  std::vector<Cell> cells;
  for (int N : grid)
    for (double T : cfg.times) cells.push_back({N, T});
  // one quadric functional per (N, T), shared by all polynomials
  const auto reports = parallel_map(cells.size(), [&](std::size_t c) {
    const QuadricMoments nu(cells[c].N, cells[c].T);
    std::vector<TransformResult> rs;
    for (const auto& p : inputs) rs.push_back(unitarity_report(p, nu));
    return rs;
  });

  bool pass = true;
  double worst = 0;
  std::ostringstream csv;
  Json rows = Json::array();
  csv << "N,T,quantity,value,reference,abs_error,rel_error\n";
  for (std::size_t i = 0; i < polys.size(); ++i) {
    csv << "# poly," << polys[i].text << "\n";
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const TransformResult& r = reports[c][i];
      const double rel = r.rel_error();
      pass = pass && rel <= tol;
      worst = std::max(worst, rel);
      csv << cells[c].N << "," << format_number(cells[c].T) << ",isometry," << format_number(r.range_norm2) << ","
          << format_number(r.domain_norm2) << "," << format_number(r.abs_error()) << "," << format_number(rel)
          << "\n";
      rows.push_back({{"poly", polys[i].text},
                      {"N", cells[c].N},
                      {"T", cells[c].T},
                      {"quantity", "isometry"},
                      {"domain_norm2", r.domain_norm2},
                      {"range_norm2", r.range_norm2},
                      {"abs_error", r.abs_error()},
                      {"rel_error", rel}});
    }
  }
  csv << "# max_rel_error," << format_number(worst) << "\n";
  csv << "# tolerance," << format_number(tol) << "\n";
  csv << "# status," << (pass ? "pass" : "fail") << "\n";
  if (cfg.format == "json") {
    Json doc{{"command", "isometry"},
             {"rows", rows},
             {"max_rel_error", worst},
             {"tolerance", tol},
             {"status", pass ? "pass" : "fail"}};
    emit(cfg, doc.dump(2) + "\n", out);
  } else {
    emit(cfg, csv.str(), out);
  }
  return pass ? kOk : kFailure;
}

int cmd_converge(const ExperimentConfig& cfg, std::ostream& out) {
  check_format(cfg);
  Quantity quantity;
  try {
    quantity = parse_quantity(cfg.quantity);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto polys = resolve_polys(cfg);
  const std::size_t k = effective_k(cfg, polys);
  const std::vector<int> grid = cfg.grid.empty() ? default_grid() : cfg.grid;
  if (quantity == Quantity::SphereMomentToGauss) {
    if (k > static_cast<std::size_t>(grid.front()))
      throw UsageError("sphere moments need k <= N, smallest N is " + std::to_string(grid.front()));
  } else {
    require_k_below(k, grid);
  }

  std::vector<ConvergenceTable> tables;
  for (const auto& p : polys) {
    switch (quantity) {
      case Quantity::LaplacianToHermite:
        tables.push_back(laplacian_limit(parse_real_poly(p.text), grid));
        break;
      case Quantity::SphereMomentToGauss:
        tables.push_back(sphere_measure_limit(convert<double>(parse_real_poly(p.text)), grid));
        break;
      case Quantity::QuadricMomentToGamma:
        for (double T : cfg.times) tables.push_back(quadric_measure_limit(convert<double>(parse_cx_poly(p.text)), T, grid));
        break;
      case Quantity::TransformToLimit:
        for (double T : cfg.times) tables.push_back(transform_limit(convert<double>(parse_real_poly(p.text)), T, grid));
        break;
      case Quantity::IsometryChain:
        for (double T : cfg.times) tables.push_back(isometry_chain(convert<double>(parse_real_poly(p.text)), T, grid));
        break;
    }
  }
  if (cfg.format == "json") {
    Json list = Json::array();
    for (const auto& t : tables) list.push_back(table_to_json(t));
    emit(cfg, Json{{"command", "converge"}, {"tables", list}}.dump(2) + "\n", out);
  } else {
    std::string csv = "N,T,quantity,value,reference,abs_error,rel_error\n";
    for (const auto& t : tables) {
      csv += "# poly," + t.subject + "\n";
      csv += table_to_csv(t, false);
    }
    emit(cfg, csv, out);
  }
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Segal-Bargmann transform laboratory"};
  app.require_subcommand(1);
  ExperimentConfig cfg;
  std::string grid_text;
  std::string times_text;
  std::size_t k_value = 0;
  double tol_value = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--poly", cfg.polys, "polynomial: preset (x1, x1sq, mixed, one, random) or inline c*x1^a*x2^b +- ...");
    sub->add_option("--k", k_value, "number of variables");
    sub->add_option("--deg", cfg.deg, "degree for random polynomials");
    sub->add_option("--N", grid_text, "N grid: comma list or a..b");
    sub->add_option("--T", times_text, "comma list of times");
    sub->add_option("--tol", tol_value, "tolerance override");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--format", cfg.format, "csv or json");
    sub->add_option("--out", cfg.out, "output file (default stdout)");
  };
  CLI::App* iso = app.add_subcommand("isometry", "finite-N unitarity of the sphere transform");
  CLI::App* conv = app.add_subcommand("converge", "large-N convergence tables");
  CLI::App* ver = app.add_subcommand("verify", "run the property suite");
  for (CLI::App* sub : {iso, conv, ver}) add_common(sub);
  conv->add_option("--quantity", cfg.quantity, "laplacian, sphere-moment, quadric-moment, transform or isometry");
  ver->add_option("--max-degree", cfg.max_degree, "largest polynomial degree in the suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    CLI::App* chosen = app.get_subcommands().front();
    cfg.command = chosen->get_name();
    if (chosen->count("--k") > 0) cfg.k = k_value;
    if (chosen->count("--tol") > 0) {
      if (!(tol_value >= 0)) throw UsageError("--tol must be nonnegative");
      cfg.tol = tol_value;
    }
    if (!grid_text.empty()) cfg.grid = parse_grid(grid_text);
    if (!times_text.empty()) cfg.times = parse_times(times_text);
    if (cfg.command == "isometry") return cmd_isometry(cfg, out);
    if (cfg.command == "converge") return cmd_converge(cfg, out);
    return cmd_verify(cfg, out);
  } catch (const UsageError& e) {
    err << "sbtlab: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "sbtlab: " << e.what() << "\n";
    return kUsage;
  } catch (const std::length_error& e) {
    err << "sbtlab: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "sbtlab: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "sbtlab: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace sbt::cli
