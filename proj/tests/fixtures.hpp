// Shared scenario builders and published reference tables used by the tests.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "edsbo/model.hpp"

namespace edsbo::testing {

/// Annual arrivals per ED, counts[ed][tag][slot] (tag 0 yellow, 1 red).
inline constexpr std::array<std::array<std::array<double, 3>, 2>, 6> kAnnualCounts{{
    {{{875, 2688, 2279}, {94, 299, 187}}},
    {{{390, 1592, 1299}, {56, 153, 107}}},
    {{{599, 2331, 1839}, {84, 102, 92}}},
    {{{439, 2118, 1503}, {70, 295, 202}}},
    {{{399, 2007, 1597}, {55, 299, 188}}},
    {{{324, 1138, 832}, {37, 58, 72}}},
}};

/// Calibrated starting plan, n[ed][slot].
inline const ResourcePlan kStartPlan{{{4, 4, 4}, {4, 5, 4}, {4, 4, 3}, {4, 5, 2}, {4, 5, 3}, {3, 2, 2}}};

/// Starting-point NVA means (minutes) per policy P1..P4: [policy][ed] = {yellow, red}.
inline constexpr std::array<std::array<std::array<double, 2>, 6>, 4> kStartNva{{
    {{{15.89, 6.78}, {25.77, 11.18}, {5.96, 3.94}, {50.28, 24.40}, {54.63, 23.70}, {12.51, 7.10}}},
    {{{8.55, 4.86}, {2.05, 1.72}, {2.10, 1.53}, {34.13, 20.19}, {37.20, 17.85}, {12.98, 7.47}}},
    {{{12.78, 4.19}, {6.89, 0.74}, {5.06, 1.98}, {43.43, 15.83}, {46.48, 14.22}, {9.05, 4.66}}},
    {{{2.98, 2.70}, {2.65, 2.43}, {1.32, 1.21}, {5.10, 4.46}, {5.27, 4.37}, {2.33, 2.08}}},
}};

/// Published starting-point objective values for P1..P4.
inline constexpr std::array<double, 4> kStartObjective{127454.63, 92956.13, 93758.85, 47926.04};

inline LosDistribution exp_los(double mean) { return LosDistribution::exponential(mean); }

/// One ED with the same rate in every slot and exponential LOS.
inline EDConfig constant_ed(const std::string& name, double yellow_rate, double red_rate, double los_mean,
                            std::uint32_t key) {
  EDConfig ed;
  ed.name = name;
  for (int j = 0; j < kSlotsPerDay; ++j) {
    ed.arrivals.rate[j] = {yellow_rate, red_rate};
    ed.los[j] = {exp_los(los_mean), exp_los(los_mean)};
  }
  ed.stream_key = key;
  return ed;
}

/// Transfer matrix with tau[i][j] = base + step * |i - j| (symmetric).
inline TransferMatrix line_transfer(std::size_t n, double base = 10.0, double step = 4.0) {
  TransferMatrix t;
  t.minutes.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) t.minutes[i][j] = base + step * std::abs(static_cast<double>(i) - static_cast<double>(j));
  return t;
}

/// Single M/M/c-style ED: rate lambda per minute, exponential LOS, c servers.
inline Scenario erlang_scenario(double lambda, double los_mean, int servers, double horizon) {
  Scenario s;
  s.name = "erlang";
  s.eds = {constant_ed("ED1", lambda, 0.0, los_mean, 0)};
  s.transfer.minutes = {{0.0}};
  s.replication.horizon = horizon;
  s.replication.warmup = 2880.0;
  s.start_plan = ResourcePlan{{{servers, servers, servers}}};
  return s;
}

/// Six EDs with the published annual counts and exponential LOS means per ED.
inline Scenario table_one_network(const std::array<double, 6>& los_means, double horizon_days = 365.0) {
  Scenario s;
  s.name = "table-one";
  s.paper_mode = true;
  for (std::size_t i = 0; i < 6; ++i) {
    EDConfig ed;
    ed.name = "ED" + std::to_string(i + 1);
    for (int j = 0; j < kSlotsPerDay; ++j) {
      for (int k = 0; k < kTags; ++k) {
        ed.arrivals.rate[j][k] = rate_from_annual_count(kAnnualCounts[i][k][j]);
        ed.los[j][k] = exp_los(los_means[i]);
      }
    }
    ed.stream_key = static_cast<std::uint32_t>(i);
    s.eds.push_back(ed);
  }
  s.transfer = line_transfer(6);
  s.replication.horizon = horizon_days * kDayMinutes;
  s.start_plan = kStartPlan;
  return s;
}

/// Erlang-C mean wait in queue for M/M/c (independent closed form).
inline double erlang_c_wait(double lambda, double mu, int c) {
  const double a = lambda / mu;
  double term = 1.0, sum = 0.0;
  for (int k = 0; k < c; ++k) {
    if (k > 0) term *= a / k;
    sum += term;
  }
  const double top = term * a / c / (1.0 - a / c);
  const double p_wait = top / (sum + top);
  return p_wait / (c * mu - lambda);
}

}  // namespace edsbo::testing
