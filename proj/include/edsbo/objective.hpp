// Scalarized staffing objective and NVA-threshold constraints evaluated from
// replication averages.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "edsbo/batch.hpp"
#include "edsbo/model.hpp"
#include "edsbo/stochastic.hpp"

namespace edsbo {

struct EDSummary {
  MeanCI nva_yellow;
  MeanCI nva_red;
  /// Mean redirections per replication.
  double redirected_out = 0.0;
  double redirected_in = 0.0;
};

struct SimSummary {
  std::vector<EDSummary> eds;

  double sum_nva(Tag tag) const;
};

/// Folds replication means (in index order) into per-ED confidence intervals.
SimSummary summarize_replications(std::span<const ReplicationMeans> reps);

/// w1 * slot_minutes * sum(n) + w2 * sum(yellow NVA) + w3 * sum(red NVA).
double objective_value(const ResourcePlan& plan, const SimSummary& summary, const ObjectiveSpec& spec);

/// max(0, yellow_i - yellow_threshold) for every ED, then max(0, red_i - red_threshold).
std::vector<double> constraint_violations(const SimSummary& summary, const ObjectiveSpec& spec);

struct SaaResult {
  double f = 0.0;
  std::vector<double> g;
  SimSummary summary;

  double total_violation() const;
};

/// Sample-average evaluation of a plan with replication seeds
/// seed_base+1..seed_base+R, shared by every plan (common random numbers).
SaaResult saa_evaluate(const ResourcePlan& plan, const Scenario& scenario, const PolicyConfig& policy,
                       int replications, std::uint64_t seed_base,
                       Execution exec = Execution::Parallel);

}  // namespace edsbo
