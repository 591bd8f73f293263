// edsbo: simulate, calibrate and optimize an ED network under ambulance
// diversion policies.
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "edsbo/commands.hpp"
#include "edsbo/scenario_io.hpp"

namespace {

struct Flags {
  std::string scenario;
  std::string policy;
  std::optional<int> replications;
  std::uint64_t seed = 1;
  int budget = 700;
  std::string out = "out";
  std::string plan;
  int threads = 0;
  bool serial = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--scenario", f.scenario, "Scenario file (YAML)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--replications", f.replications, "Replications per evaluation (default: scenario value, 30)")
      ->check(CLI::Range(2, 100000));
  cmd->add_option("--seed", f.seed, "Top-level seed; replication r uses seed + r");
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--threads", f.threads, "OpenMP threads (default: runtime setting)");
  cmd->add_flag("--serial", f.serial, "Use the serial reference kernels");
}

std::vector<edsbo::PolicyId> policies_for(const Flags& f, const edsbo::Scenario& s, bool allow_all) {
  if (f.policy.empty()) return {s.policy.id};
  if (allow_all && (f.policy == "all" || f.policy == "ALL")) {
    return {edsbo::kAllPolicies.begin(), edsbo::kAllPolicies.end()};
  }
  return {edsbo::parse_policy(f.policy)};
}

edsbo::ResourcePlan start_plan(const Flags& f, const edsbo::Scenario& s) {
  if (!f.plan.empty()) {
    auto plan = edsbo::read_plan_csv(f.plan, s.num_eds());
    s.validate_plan(plan);
    return plan;
  }
  if (!s.start_plan) throw std::runtime_error("no starting plan: add start_plan to the scenario or pass --plan");
  return *s.start_plan;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation-based optimization of an emergency department network"};
  app.require_subcommand(1);
  Flags f;

  auto* sim = app.add_subcommand("simulate", "Estimate NVA times for a plan and policy");
  add_common(sim, f);
  sim->add_option("--policy", f.policy, "P1, P2, P3, P4 or all");
  sim->add_option("--plan", f.plan, "Plan CSV (ED,slot1,slot2,slot3); default: scenario start_plan");

  auto* cal = app.add_subcommand("calibrate", "Fit per-ED capacities to observed mean waits");
  add_common(cal, f);

  auto* opt = app.add_subcommand("optimize", "Optimize the resource plan under a policy");
  add_common(opt, f);
  opt->add_option("--policy", f.policy, "P1, P2, P3, P4 or all");
  opt->add_option("--budget", f.budget, "Maximum black-box evaluations")->check(CLI::NonNegativeNumber);
  opt->add_option("--plan", f.plan, "Starting plan CSV; default: scenario start_plan");

  auto* rep = app.add_subcommand("report", "Combine optimize outputs into plan and objective tables");
  rep->add_option("--scenario", f.scenario, "Scenario file (YAML)")->required()->check(CLI::ExistingFile);
  rep->add_option("--out", f.out, "Output directory holding optimize results");

  CLI11_PARSE(app, argc, argv);

  try {
    const edsbo::Scenario scenario = edsbo::parse_scenario(f.scenario);
    edsbo::CommandOptions opts;
    opts.out_dir = f.out;
    opts.seed = f.seed;
    opts.replications = f.replications.value_or(scenario.replications);
    opts.budget = f.budget;
    opts.exec = f.serial ? edsbo::Execution::Serial : edsbo::Execution::Parallel;
    edsbo::set_parallel_threads(f.threads);

    if (*sim) {
      const auto plan = start_plan(f, scenario);
      for (auto p : policies_for(f, scenario, true)) {
        edsbo::PolicyConfig pc = scenario.policy;
        pc.id = p;
        edsbo::cmd_simulate(scenario, plan, pc, opts, std::cout);
      }
    } else if (*cal) {
      edsbo::cmd_calibrate(scenario, opts, std::cout);
    } else if (*opt) {
      const auto plan = start_plan(f, scenario);
      for (auto p : policies_for(f, scenario, true)) {
        edsbo::PolicyConfig pc = scenario.policy;
        pc.id = p;
        edsbo::cmd_optimize(scenario, plan, pc, opts, std::cout);
      }
    } else if (*rep) {
      edsbo::cmd_report(scenario, opts, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
