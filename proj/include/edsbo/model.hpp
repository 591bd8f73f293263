// Value types describing an ED network scenario and a staffing plan.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "edsbo/engine.hpp"
#include "edsbo/stochastic.hpp"

namespace edsbo {

enum class PolicyId {
  P1,  ///< ambulance stoppage: always board
  P2,  ///< complete diversion to the nearest ED
  P3,  ///< partial diversion (yellow only) to the nearest ED
  P4,  ///< diversion to the least occupied ED
};

const char* policy_name(PolicyId p);
/// Parses "P1".."P4" (case-insensitive). Throws std::invalid_argument.
PolicyId parse_policy(const std::string& text);
inline constexpr std::array<PolicyId, 4> kAllPolicies{PolicyId::P1, PolicyId::P2, PolicyId::P3,
                                                      PolicyId::P4};

struct PolicyConfig {
  PolicyId id = PolicyId::P1;
  /// P2/P3: when the nearest ED is on diversion, try the next nearest instead
  /// of boarding at the origin.
  bool cascade = false;
};

/// Ambulance transport minutes between EDs; zero diagonal, positive elsewhere.
struct TransferMatrix {
  std::vector<std::vector<double>> minutes;

  std::size_t size() const { return minutes.size(); }
  double at(std::size_t from, std::size_t to) const { return minutes[from][to]; }
  void validate(std::size_t n_eds) const;
};

/// Integer sanitary-resource counts n[ed][slot].
struct ResourcePlan {
  std::vector<std::array<int, kSlotsPerDay>> n;

  std::size_t num_eds() const { return n.size(); }
  int total() const;
  /// Row-major flattening (ed-major, then slot).
  std::vector<int> flatten() const;
  static ResourcePlan from_flat(const std::vector<int>& x, std::size_t n_eds);

  bool operator==(const ResourcePlan&) const = default;
};

struct PlanBounds {
  int lower = 2;
  int upper = 10;
};

/// Observed mean waits wait[slot][tag] for one ED.
struct RealWaitTable {
  std::array<std::array<double, kTags>, kSlotsPerDay> wait{};
};

/// Weights and thresholds of the scalarized objective.
struct ObjectiveSpec {
  double w1 = 1.0;
  double w2 = 300.0;
  double w3 = 600.0;
  double slot_minutes = kSlotMinutes;
  double yellow_threshold = 40.0;
  double red_threshold = 20.0;
  /// Check thresholds against mean + half-width instead of the mean.
  bool constraints_use_ci_upper = false;

  void validate() const;
};

struct EDConfig {
  std::string name;
  RateTable arrivals;
  /// los[slot][tag]
  std::array<std::array<LosDistribution, kTags>, kSlotsPerDay> los;
  /// P3 occupancy threshold; defaults to the current capacity.
  std::optional<int> p3_threshold;
  std::optional<RealWaitTable> real_waits;
  /// Identifier used to derive this ED's random substreams. Kept when an ED
  /// is extracted from a network so that it sees the same draws alone.
  std::uint32_t stream_key = 0;
};

struct Scenario {
  std::string name;
  /// Paper-replication mode requires exactly 6 EDs.
  bool paper_mode = false;
  std::vector<EDConfig> eds;
  TransferMatrix transfer;
  PolicyConfig policy;
  ObjectiveSpec objective;
  ReplicationSpec replication;
  int replications = 30;
  PlanBounds bounds;
  std::optional<ResourcePlan> start_plan;

  std::size_t num_eds() const { return eds.size(); }
  /// Throws ConfigError on any inconsistency.
  void validate() const;
  void validate_plan(const ResourcePlan& plan) const;
  /// Single-ED scenario holding only ED `index`, with its stream key preserved.
  Scenario single_ed(std::size_t index) const;
};

}  // namespace edsbo
