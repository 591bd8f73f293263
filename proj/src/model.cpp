#include "edsbo/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace edsbo {

const char* policy_name(PolicyId p) {
  switch (p) {
    case PolicyId::P1: return "P1";
    case PolicyId::P2: return "P2";
    case PolicyId::P3: return "P3";
    case PolicyId::P4: return "P4";
  }
  return "?";
}

PolicyId parse_policy(const std::string& text) {
  std::string s = text;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  for (PolicyId p : kAllPolicies) {
    if (s == policy_name(p)) return p;
  }
  throw std::invalid_argument("unknown policy '" + text + "' (expected P1, P2, P3 or P4)");
}

void TransferMatrix::validate(std::size_t n_eds) const {
  if (minutes.size() != n_eds) {
    throw ConfigError("transfer matrix has " + std::to_string(minutes.size()) + " rows, expected " +
                      std::to_string(n_eds));
  }
  for (std::size_t i = 0; i < n_eds; ++i) {
    if (minutes[i].size() != n_eds) {
      throw ConfigError("transfer matrix row " + std::to_string(i + 1) + " has wrong length");
    }
    for (std::size_t j = 0; j < n_eds; ++j) {
      const double v = minutes[i][j];
      if (i == j && v != 0.0) {
        throw ConfigError("transfer matrix diagonal entry [" + std::to_string(i + 1) + "][" +
                          std::to_string(j + 1) + "] must be 0");
      }
      if (i != j && !(v > 0.0 && std::isfinite(v))) {
        throw ConfigError("transfer matrix entry [" + std::to_string(i + 1) + "][" +
                          std::to_string(j + 1) + "] must be positive");
      }
    }
  }
}

int ResourcePlan::total() const {
  int s = 0;
  for (const auto& row : n)
    for (int v : row) s += v;
  return s;
}

std::vector<int> ResourcePlan::flatten() const {
  std::vector<int> x;
  x.reserve(n.size() * kSlotsPerDay);
  for (const auto& row : n) x.insert(x.end(), row.begin(), row.end());
  return x;
}

ResourcePlan ResourcePlan::from_flat(const std::vector<int>& x, std::size_t n_eds) {
  if (x.size() != n_eds * kSlotsPerDay) throw std::invalid_argument("plan vector has wrong length");
  ResourcePlan plan;
  plan.n.resize(n_eds);
  for (std::size_t i = 0; i < n_eds; ++i)
    for (int j = 0; j < kSlotsPerDay; ++j) plan.n[i][j] = x[i * kSlotsPerDay + j];
  return plan;
}

void ObjectiveSpec::validate() const {
  if (w1 < 0.0 || w2 < 0.0 || w3 < 0.0) throw ConfigError("objective weights must be >= 0");
  if (!(yellow_threshold > 0.0) || !(red_threshold > 0.0)) {
    throw ConfigError("NVA thresholds must be positive");
  }
  if (slot_minutes != kSlotMinutes) throw ConfigError("slot length must be 480 minutes");
}

void Scenario::validate() const {
  if (eds.empty()) throw ConfigError("scenario has no EDs");
  if (paper_mode && eds.size() != 6) {
    throw ConfigError("paper-replication mode needs exactly 6 EDs, got " + std::to_string(eds.size()));
  }
  for (const auto& ed : eds) {
    try {
      ed.arrivals.validate();
      for (const auto& slot : ed.los)
        for (const auto& d : slot) d.validate();
    } catch (const ConfigError& e) {
      throw ConfigError("ED '" + ed.name + "': " + e.what());
    }
    if (ed.p3_threshold && *ed.p3_threshold < 1) {
      throw ConfigError("ED '" + ed.name + "': P3 threshold must be >= 1");
    }
  }
  transfer.validate(eds.size());
  objective.validate();
  replication.validate();
  if (replications < 2) throw ConfigError("at least 2 replications are required");
  if (bounds.lower < 1 || bounds.lower > bounds.upper) throw ConfigError("invalid plan bounds");
  if (start_plan) validate_plan(*start_plan);
}

void Scenario::validate_plan(const ResourcePlan& plan) const {
  if (plan.num_eds() != eds.size()) {
    throw ConfigError("resource plan has " + std::to_string(plan.num_eds()) + " rows, expected " +
                      std::to_string(eds.size()));
  }
  for (std::size_t i = 0; i < plan.n.size(); ++i) {
    for (int j = 0; j < kSlotsPerDay; ++j) {
      const int v = plan.n[i][j];
      if (v < bounds.lower || v > bounds.upper) {
        throw ConfigError("resource plan entry ED" + std::to_string(i + 1) + " slot" +
                          std::to_string(j + 1) + " = " + std::to_string(v) + " outside [" +
                          std::to_string(bounds.lower) + ", " + std::to_string(bounds.upper) + "]");
      }
    }
  }
}

Scenario Scenario::single_ed(std::size_t index) const {
  Scenario s = *this;
  s.paper_mode = false;
  s.eds = {eds.at(index)};
  s.transfer.minutes = {{0.0}};
  s.policy = PolicyConfig{PolicyId::P1, false};
  if (start_plan) s.start_plan = ResourcePlan{{start_plan->n.at(index)}};
  return s;
}

}  // namespace edsbo
