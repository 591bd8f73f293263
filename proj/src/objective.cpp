#include "edsbo/objective.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace edsbo {

double SimSummary::sum_nva(Tag tag) const {
  double s = 0.0;
  for (const auto& ed : eds) s += (tag == Tag::Yellow ? ed.nva_yellow : ed.nva_red).mean;
  return s;
}

SimSummary summarize_replications(std::span<const ReplicationMeans> reps) {
  if (reps.size() < 2) throw StatisticsError("at least 2 replications are needed for a summary");
  const std::size_t n_eds = reps.front().size();
  SimSummary summary;
  summary.eds.resize(n_eds);
  std::vector<double> values(reps.size());
  for (std::size_t i = 0; i < n_eds; ++i) {
    auto& ed = summary.eds[i];
    for (std::size_t r = 0; r < reps.size(); ++r) values[r] = reps[r][i].nva[0];
    ed.nva_yellow = summarize(values);
    for (std::size_t r = 0; r < reps.size(); ++r) values[r] = reps[r][i].nva[1];
    ed.nva_red = summarize(values);
    double out = 0.0, in = 0.0;
    for (const auto& rep : reps) {
      out += rep[i].redirected_out;
      in += rep[i].redirected_in;
    }
    ed.redirected_out = out / static_cast<double>(reps.size());
    ed.redirected_in = in / static_cast<double>(reps.size());
  }
  return summary;
}

double objective_value(const ResourcePlan& plan, const SimSummary& summary, const ObjectiveSpec& spec) {
  return spec.w1 * spec.slot_minutes * static_cast<double>(plan.total()) +
         spec.w2 * summary.sum_nva(Tag::Yellow) + spec.w3 * summary.sum_nva(Tag::Red);
}

std::vector<double> constraint_violations(const SimSummary& summary, const ObjectiveSpec& spec) {
  auto level = [&](const MeanCI& ci) {
    return spec.constraints_use_ci_upper ? ci.upper() : ci.mean;
  };
  std::vector<double> g;
  g.reserve(2 * summary.eds.size());
  for (const auto& ed : summary.eds) g.push_back(std::max(0.0, level(ed.nva_yellow) - spec.yellow_threshold));
  for (const auto& ed : summary.eds) g.push_back(std::max(0.0, level(ed.nva_red) - spec.red_threshold));
  return g;
}

double SaaResult::total_violation() const { return std::accumulate(g.begin(), g.end(), 0.0); }

SaaResult saa_evaluate(const ResourcePlan& plan, const Scenario& scenario, const PolicyConfig& policy,
                       int replications, std::uint64_t seed_base, Execution exec) {
  if (replications < 2) throw std::invalid_argument("SAA evaluation needs at least 2 replications");
  const auto reps = run_batch(scenario, plan, policy, replications, seed_base, exec);
  SaaResult res;
  res.summary = summarize_replications(reps);
  res.f = objective_value(plan, res.summary, scenario.objective);
  res.g = constraint_violations(res.summary, scenario.objective);
  return res;
}

}  // namespace edsbo
