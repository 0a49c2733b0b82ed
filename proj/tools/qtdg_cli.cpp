// qtdg: run convergence experiments for the quasi-Trefftz space-time DG solver.
//
//   qtdg run --config FILE [--out DIR] [--workers N] [--quad-order Q]
//   qtdg compare --config FILE [--out DIR] [--workers N] [--quad-order Q]
//   qtdg mesh-dump --config FILE
//
// Exit status: 0 success, 2 if any solve was flagged as failed, 1 on configuration errors.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "qtdg/experiment.hpp"

using namespace qtdg;

namespace {

struct Overrides {
  std::string config;
  std::string out;
  int workers = 0;
  int quad = -1;
};

RunConfig configure(const Overrides& o) {
  RunConfig c = load_config(o.config);
  if (!o.out.empty()) c.out_dir = o.out;
  if (o.workers > 0) c.workers = o.workers;
  if (o.quad >= 0) c.quad_points = o.quad;
  if (!c.out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(c.out_dir, ec);
    if (ec) throw ConfigError("cannot create " + c.out_dir + ": " + ec.message());
  }
  return c;
}

int emit(const RunConfig& c, const std::vector<ResultRow>& rows, bool space_column) {
  if (c.out_dir.empty()) {
    write_csv(std::cout, rows, space_column);
  } else {
    const std::string path = c.out_dir + (space_column ? "/compare.csv" : "/results.csv");
    std::ofstream os(path);
    write_csv(os, rows, space_column);
    std::cerr << "wrote " << path << '\n';
  }
  for (const auto& r : rows)
    if (!r.ok()) return 2;
  return 0;
}

void add_common(CLI::App* cmd, Overrides& o, bool overrides) {
  cmd->add_option("--config", o.config, "experiment INI file")->required();
  if (!overrides) return;
  cmd->add_option("--out", o.out, "output directory (default: CSV on stdout)");
  cmd->add_option("--workers", o.workers, "worker threads for tent meshes")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--quad-order", o.quad, "Gauss points per direction (0: p + 3)")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasi-Trefftz space-time DG experiments"};
  app.require_subcommand(1);
  Overrides run_o, cmp_o, dump_o;
  auto* run = app.add_subcommand("run", "convergence table for one space");
  auto* cmp = app.add_subcommand("compare", "convergence tables for all listed spaces");
  auto* dump = app.add_subcommand("mesh-dump", "print the meshes of the refinement list");
  add_common(run, run_o, true);
  add_common(cmp, cmp_o, true);
  add_common(dump, dump_o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) {
      const RunConfig c = configure(run_o);
      if (c.spaces.size() != 1) throw ConfigError("run takes a single space; use compare");
      return emit(c, run_experiment(c, c.spaces.front(), &std::cerr), false);
    }
    if (*cmp) {
      const RunConfig c = configure(cmp_o);
      std::vector<ResultRow> rows;
      for (SpaceKind s : c.spaces) {
        auto part = run_experiment(c, s, &std::cerr);
        rows.insert(rows.end(), part.begin(), part.end());
      }
      return emit(c, rows, true);
    }
    const RunConfig c = load_config(dump_o.config);
    const auto problem = benchmark(c.problem);
    for (double h : c.hs) dump_mesh(std::cout, make_mesh(problem, c, h));
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
