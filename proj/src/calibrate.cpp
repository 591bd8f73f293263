#include "edsbo/calibrate.hpp"

#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>

namespace edsbo {

double l1_error(const WaitGrid& sim, const WaitGrid& real) {
  double e = 0.0;
  for (int j = 0; j < kSlotsPerDay; ++j)
    for (int k = 0; k < kTags; ++k) e += std::abs(sim[j][k] - real[j][k]);
  return e;
}

WaitGrid simulated_waits(const Scenario& single_ed, const CapacityTriple& capacities, int replications,
                         std::uint64_t seed_base, Execution exec) {
  const ResourcePlan plan{{capacities}};
  const auto reps = run_batch(single_ed, plan, PolicyConfig{PolicyId::P1, false}, replications,
                              seed_base, exec);
  WaitGrid w{};
  for (const auto& rep : reps)
    for (int j = 0; j < kSlotsPerDay; ++j)
      for (int k = 0; k < kTags; ++k) w[j][k] += rep[0].wait[j][k];
  for (auto& row : w)
    for (double& v : row) v /= static_cast<double>(reps.size());
  return w;
}

std::vector<CapacityTriple> capacity_grid(const PlanBounds& bounds) {
  std::vector<CapacityTriple> grid;
  for (int a = bounds.lower; a <= bounds.upper; ++a)
    for (int b = bounds.lower; b <= bounds.upper; ++b)
      for (int c = bounds.lower; c <= bounds.upper; ++c) grid.push_back({a, b, c});
  return grid;
}

namespace {

Scenario prepared(const Scenario& single_ed, const CalibrationOptions& options) {
  if (single_ed.num_eds() != 1) throw std::invalid_argument("calibrate_ed needs a single-ED scenario");
  if (options.replications < 1) throw std::invalid_argument("calibration needs at least 1 replication");
  Scenario s = single_ed;
  s.bounds = options.bounds;
  s.start_plan.reset();
  s.validate();
  return s;
}

}  // namespace

std::vector<GridPoint> grid_errors_serial(const Scenario& single_ed, const RealWaitTable& real,
                                          const CalibrationOptions& options) {
  const Scenario s = prepared(single_ed, options);
  std::vector<GridPoint> out;
  for (const auto& caps : capacity_grid(options.bounds)) {
    const auto w = simulated_waits(s, caps, options.replications, options.seed_base, Execution::Serial);
    out.push_back({caps, l1_error(w, real)});
  }
  return out;
}

std::vector<GridPoint> grid_errors_parallel(const Scenario& single_ed, const RealWaitTable& real,
                                            const CalibrationOptions& options) {
  const Scenario s = prepared(single_ed, options);
  const auto grid = capacity_grid(options.bounds);
  const int n = static_cast<int>(grid.size());
  std::vector<GridPoint> out(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i) {
    try {
      const auto w = simulated_waits(s, grid[i], options.replications, options.seed_base, Execution::Serial);
      out[i] = {grid[i], l1_error(w, real)};
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

CalibrationResult calibrate_ed(const Scenario& single_ed, const RealWaitTable& real,
                               const CalibrationOptions& options) {
  CalibrationResult result;
  result.grid = options.exec == Execution::Serial ? grid_errors_serial(single_ed, real, options)
                                                  : grid_errors_parallel(single_ed, real, options);
  const GridPoint* best = nullptr;
  auto total = [](const CapacityTriple& c) { return c[0] + c[1] + c[2]; };
  for (const auto& p : result.grid) {
    if (best == nullptr || p.error < best->error ||
        (p.error == best->error && total(p.capacities) < total(best->capacities))) {
      best = &p;
    }
  }
  result.capacities = best->capacities;
  result.error = best->error;
  return result;
}

}  // namespace edsbo
