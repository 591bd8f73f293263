// Command implementations behind the `edsbo` CLI. Each command writes
// schema-stable CSV files into an output directory and appends to run.log.
#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "edsbo/batch.hpp"
#include "edsbo/calibrate.hpp"
#include "edsbo/model.hpp"
#include "edsbo/objective.hpp"
#include "edsbo/solver.hpp"

namespace edsbo {

struct CommandOptions {
  std::filesystem::path out_dir = "out";
  std::uint64_t seed = 1;
  int replications = 30;
  int budget = 700;
  Execution exec = Execution::Parallel;
  dfo::SolverOptions solver;
};

/// Minutes with two decimals, as in the published tables.
std::string format_minutes(double v);

std::string nva_csv(const Scenario& scenario, const SimSummary& summary);
std::string diversions_csv(const Scenario& scenario, const SimSummary& summary);
std::string plan_csv(const Scenario& scenario, const ResourcePlan& plan);
/// Reads a plan written by plan_csv (header ED,slot1,slot2,slot3).
ResourcePlan read_plan_csv(const std::filesystem::path& path, std::size_t n_eds);

/// Console table: one row per ED, mean +- half-width per tag.
std::string nva_table(const Scenario& scenario, const SimSummary& summary);

struct SimulateResult {
  SimSummary summary;
  double f = 0.0;
  std::vector<double> g;
  std::string nva;
  std::string diversions;
};

SimulateResult cmd_simulate(const Scenario& scenario, const ResourcePlan& plan, const PolicyConfig& policy,
                            const CommandOptions& opts, std::ostream& console);

struct CalibrateResult {
  ResourcePlan plan;
  std::vector<double> errors;
  std::string csv;
};

/// Calibrates every ED in isolation; requires real waits for all EDs.
CalibrateResult cmd_calibrate(const Scenario& scenario, const CommandOptions& opts, std::ostream& console);

struct OptimizeResult {
  PolicyId policy = PolicyId::P1;
  ResourcePlan start;
  ResourcePlan optimum;
  SaaResult at_start;
  SaaResult at_optimum;
  int evaluations = 0;
  std::string plan;
  std::string objective;
};

OptimizeResult cmd_optimize(const Scenario& scenario, const ResourcePlan& start, const PolicyConfig& policy,
                            const CommandOptions& opts, std::ostream& console);

/// Collects the per-policy optimize outputs in `out_dir` into combined plan
/// and objective tables (policy columns), writes them, and returns the text.
std::string cmd_report(const Scenario& scenario, const CommandOptions& opts, std::ostream& console);

/// Appends one line to out_dir/run.log.
void append_run_log(const std::filesystem::path& out_dir, const std::string& line);

/// Writes `content` to out_dir/name, creating out_dir if needed.
void write_output(const std::filesystem::path& out_dir, const std::string& name, const std::string& content);

}  // namespace edsbo
