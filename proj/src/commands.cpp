#include "edsbo/commands.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace edsbo {

std::string format_minutes(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  // Avoid "-0.00".
  if (std::string(buf) == "-0.00") return "0.00";
  return buf;
}

void write_output(const std::filesystem::path& out_dir, const std::string& name, const std::string& content) {
  std::filesystem::create_directories(out_dir);
  std::ofstream f(out_dir / name, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + (out_dir / name).string());
  f << content;
}

void append_run_log(const std::filesystem::path& out_dir, const std::string& line) {
  std::filesystem::create_directories(out_dir);
  std::ofstream f(out_dir / "run.log", std::ios::app);
  f << line << '\n';
}

std::string nva_csv(const Scenario& scenario, const SimSummary& summary) {
  std::ostringstream os;
  os << "ED,tag,mean,half_width,replications\n";
  for (std::size_t i = 0; i < summary.eds.size(); ++i) {
    const auto& ed = summary.eds[i];
    for (Tag tag : {Tag::Yellow, Tag::Red}) {
      const MeanCI& ci = tag == Tag::Yellow ? ed.nva_yellow : ed.nva_red;
      os << scenario.eds[i].name << ',' << tag_name(tag) << ',' << format_minutes(ci.mean) << ','
         << format_minutes(ci.half_width) << ',' << ci.n_replications << '\n';
    }
  }
  return os.str();
}

std::string diversions_csv(const Scenario& scenario, const SimSummary& summary) {
  std::ostringstream os;
  os << "ED,redirected_out,redirected_in\n";
  for (std::size_t i = 0; i < summary.eds.size(); ++i) {
    os << scenario.eds[i].name << ',' << format_minutes(summary.eds[i].redirected_out) << ','
       << format_minutes(summary.eds[i].redirected_in) << '\n';
  }
  return os.str();
}

std::string plan_csv(const Scenario& scenario, const ResourcePlan& plan) {
  std::ostringstream os;
  os << "ED,slot1,slot2,slot3\n";
  for (std::size_t i = 0; i < plan.n.size(); ++i) {
    os << scenario.eds[i].name;
    for (int v : plan.n[i]) os << ',' << v;
    os << '\n';
  }
  return os.str();
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) rows.push_back(split(line));
  }
  return rows;
}

std::string pm(const MeanCI& ci) { return format_minutes(ci.mean) + " +- " + format_minutes(ci.half_width); }

}  // namespace

ResourcePlan read_plan_csv(const std::filesystem::path& path, std::size_t n_eds) {
  const auto rows = read_csv(path);
  if (rows.empty() || rows[0] != std::vector<std::string>{"ED", "slot1", "slot2", "slot3"}) {
    throw std::runtime_error(path.string() + ": expected header ED,slot1,slot2,slot3");
  }
  if (rows.size() != n_eds + 1) {
    throw std::runtime_error(path.string() + ": expected " + std::to_string(n_eds) + " plan rows");
  }
  ResourcePlan plan;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != 4) throw std::runtime_error(path.string() + ": malformed row " + std::to_string(i + 1));
    std::array<int, kSlotsPerDay> row{};
    for (int j = 0; j < kSlotsPerDay; ++j) {
      try {
        row[j] = std::stoi(rows[i][j + 1]);
      } catch (const std::exception&) {
        throw std::runtime_error(path.string() + ": non-integer capacity on row " + std::to_string(i + 1));
      }
    }
    plan.n.push_back(row);
  }
  return plan;
}

std::string nva_table(const Scenario& scenario, const SimSummary& summary) {
  std::ostringstream os;
  os << std::left << std::setw(12) << "ED" << std::setw(20) << "Yellow NVA" << std::setw(20) << "Red NVA"
     << "Redirected out\n";
  for (std::size_t i = 0; i < summary.eds.size(); ++i) {
    const auto& ed = summary.eds[i];
    os << std::setw(12) << scenario.eds[i].name << std::setw(20) << pm(ed.nva_yellow) << std::setw(20)
       << pm(ed.nva_red) << format_minutes(ed.redirected_out) << '\n';
  }
  return os.str();
}

SimulateResult cmd_simulate(const Scenario& scenario, const ResourcePlan& plan, const PolicyConfig& policy,
                            const CommandOptions& opts, std::ostream& console) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto saa = saa_evaluate(plan, scenario, policy, opts.replications, opts.seed, opts.exec);
  SimulateResult r;
  r.summary = saa.summary;
  r.f = saa.f;
  r.g = saa.g;
  r.nva = nva_csv(scenario, r.summary);
  r.diversions = diversions_csv(scenario, r.summary);
  const std::string p = policy_name(policy.id);
  write_output(opts.out_dir, "nva_" + p + ".csv", r.nva);
  write_output(opts.out_dir, "diversions_" + p + ".csv", r.diversions);

  console << "NVA times (minutes, mean +- 95% half-width) under " << p << ", " << opts.replications
          << " replications\n"
          << nva_table(scenario, r.summary) << "objective: " << format_minutes(r.f)
          << "  total violation: " << format_minutes(saa.total_violation()) << '\n';
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream log;
  log << "simulate scenario=" << scenario.name << " policy=" << p << " seed=" << opts.seed
      << " replication_seeds=" << replication_seed(opts.seed, 0) << ".."
      << replication_seed(opts.seed, opts.replications - 1) << " wall_seconds=" << std::fixed
      << std::setprecision(3) << wall;
  append_run_log(opts.out_dir, log.str());
  return r;
}

CalibrateResult cmd_calibrate(const Scenario& scenario, const CommandOptions& opts, std::ostream& console) {
  for (const auto& ed : scenario.eds) {
    if (!ed.real_waits) throw std::runtime_error("ED '" + ed.name + "' has no real_waits; calibration needs them");
  }
  const auto t0 = std::chrono::steady_clock::now();
  CalibrateResult r;
  CalibrationOptions copt;
  copt.replications = opts.replications;
  copt.seed_base = opts.seed;
  copt.bounds = scenario.bounds;
  copt.exec = opts.exec;
  for (std::size_t i = 0; i < scenario.num_eds(); ++i) {
    const auto res = calibrate_ed(scenario.single_ed(i), *scenario.eds[i].real_waits, copt);
    r.plan.n.push_back(res.capacities);
    r.errors.push_back(res.error);
    console << scenario.eds[i].name << ": " << res.capacities[0] << ' ' << res.capacities[1] << ' '
            << res.capacities[2] << "  (L1 wait error " << format_minutes(res.error) << " min)\n";
  }
  r.csv = plan_csv(scenario, r.plan);
  write_output(opts.out_dir, "calibration.csv", r.csv);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream log;
  log << "calibrate scenario=" << scenario.name << " seed=" << opts.seed << " replications=" << opts.replications
      << " grid_points_per_ed=" << capacity_grid(scenario.bounds).size() << " wall_seconds=" << std::fixed
      << std::setprecision(3) << wall;
  append_run_log(opts.out_dir, log.str());
  return r;
}

OptimizeResult cmd_optimize(const Scenario& scenario, const ResourcePlan& start, const PolicyConfig& policy,
                            const CommandOptions& opts, std::ostream& console) {
  scenario.validate_plan(start);
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n_eds = scenario.num_eds();
  std::map<dfo::Point, SaaResult> results;

  dfo::BoxedIntegerProblem problem;
  problem.start = start.flatten();
  problem.lower.assign(problem.start.size(), scenario.bounds.lower);
  problem.upper.assign(problem.start.size(), scenario.bounds.upper);
  problem.budget = opts.budget;
  problem.evaluate = [&](const dfo::Point& x) {
    auto res = saa_evaluate(ResourcePlan::from_flat(x, n_eds), scenario, policy, opts.replications, opts.seed,
                            opts.exec);
    dfo::Evaluation e{res.f, res.g};
    results.emplace(x, std::move(res));
    return e;
  };
  const auto sol = dfo::solve(problem, opts.solver);

  OptimizeResult r;
  r.policy = policy.id;
  r.start = start;
  r.optimum = ResourcePlan::from_flat(sol.x, n_eds);
  r.at_start = results.at(problem.start);
  r.at_optimum = results.at(sol.x);
  r.evaluations = sol.evaluations;
  r.plan = plan_csv(scenario, r.optimum);
  std::ostringstream obj;
  obj << "policy,f_start,f_opt,sum_n_start,sum_n_opt,violation_start,violation_opt,evaluations\n"
      << policy_name(policy.id) << ',' << format_minutes(r.at_start.f) << ',' << format_minutes(r.at_optimum.f)
      << ',' << r.start.total() << ',' << r.optimum.total() << ',' << format_minutes(r.at_start.total_violation())
      << ',' << format_minutes(r.at_optimum.total_violation()) << ',' << r.evaluations << '\n';
  r.objective = obj.str();

  const std::string p = policy_name(policy.id);
  write_output(opts.out_dir, "plan_" + p + ".csv", r.plan);
  write_output(opts.out_dir, "objective_" + p + ".csv", r.objective);
  write_output(opts.out_dir, "nva_start_" + p + ".csv", nva_csv(scenario, r.at_start.summary));
  write_output(opts.out_dir, "nva_opt_" + p + ".csv", nva_csv(scenario, r.at_optimum.summary));

  console << p << ": f(start) = " << format_minutes(r.at_start.f) << "  f(opt) = " << format_minutes(r.at_optimum.f)
          << "  sum n: " << r.start.total() << " -> " << r.optimum.total() << "  evaluations: " << r.evaluations
          << "/" << opts.budget << '\n';
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream log;
  log << "optimize scenario=" << scenario.name << " policy=" << p << " seed=" << opts.seed
      << " replications=" << opts.replications << " budget=" << opts.budget << " evaluations=" << sol.evaluations
      << " cache_hits=" << sol.cache_hits << " wall_seconds=" << std::fixed << std::setprecision(3) << wall;
  append_run_log(opts.out_dir, log.str());
  return r;
}

std::string cmd_report(const Scenario& scenario, const CommandOptions& opts, std::ostream& console) {
  const auto& dir = opts.out_dir;
  std::vector<PolicyId> present;
  for (PolicyId p : kAllPolicies) {
    const std::string s = policy_name(p);
    if (std::filesystem::exists(dir / ("plan_" + s + ".csv")) && std::filesystem::exists(dir / ("objective_" + s + ".csv"))) {
      present.push_back(p);
    }
  }
  if (present.empty()) throw std::runtime_error("no optimize outputs (plan_P*.csv) found in " + dir.string());

  const std::size_t n = scenario.num_eds();
  std::map<PolicyId, ResourcePlan> plans;
  std::map<PolicyId, std::vector<std::string>> objectives;
  for (PolicyId p : present) {
    const std::string s = policy_name(p);
    plans[p] = read_plan_csv(dir / ("plan_" + s + ".csv"), n);
    const auto rows = read_csv(dir / ("objective_" + s + ".csv"));
    if (rows.size() != 2 || rows[1].size() != 8) throw std::runtime_error("malformed objective_" + s + ".csv");
    objectives[p] = rows[1];
  }

  std::ostringstream t4;
  t4 << "ED,slot,start";
  for (PolicyId p : present) t4 << ',' << policy_name(p);
  t4 << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < kSlotsPerDay; ++j) {
      t4 << scenario.eds[i].name << ',' << j + 1 << ',';
      t4 << (scenario.start_plan ? std::to_string(scenario.start_plan->n[i][j]) : std::string());
      for (PolicyId p : present) t4 << ',' << plans[p].n[i][j];
      t4 << '\n';
    }
  }
  std::ostringstream t5;
  t5 << "policy,f_start,f_opt,sum_n_opt\n";
  for (PolicyId p : present) {
    const auto& row = objectives[p];
    t5 << row[0] << ',' << row[1] << ',' << row[2] << ',' << row[4] << '\n';
  }
  write_output(dir, "table_plans.csv", t4.str());
  write_output(dir, "table_objective.csv", t5.str());

  std::ostringstream text;
  text << "Optimal sanitary resources per ED and time slot\n";
  text << std::left << std::setw(10) << "ED" << std::setw(14) << "slot" << std::setw(8) << "start";
  for (PolicyId p : present) text << std::setw(6) << policy_name(p);
  text << '\n';
  static const char* kSlotLabels[] = {"00:00-08:00", "08:00-16:00", "16:00-24:00"};
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < kSlotsPerDay; ++j) {
      text << std::setw(10) << (j == 0 ? scenario.eds[i].name : "") << std::setw(14) << kSlotLabels[j]
           << std::setw(8) << (scenario.start_plan ? std::to_string(scenario.start_plan->n[i][j]) : "-");
      for (PolicyId p : present) text << std::setw(6) << plans[p].n[i][j];
      text << '\n';
    }
  }
  text << "\nObjective function values\n"
       << std::setw(8) << "policy" << std::setw(18) << "at start" << std::setw(18) << "optimal" << '\n';
  for (PolicyId p : present) {
    const auto& row = objectives[p];
    text << std::setw(8) << row[0] << std::setw(18) << row[1] << std::setw(18) << row[2] << '\n';
  }
  write_output(dir, "report.txt", text.str());
  console << text.str();
  append_run_log(dir, "report scenario=" + scenario.name + " policies=" + std::to_string(present.size()));
  return text.str();
}

}  // namespace edsbo
