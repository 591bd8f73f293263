// Per-ED capacity calibration against observed mean waits.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "edsbo/batch.hpp"
#include "edsbo/model.hpp"

namespace edsbo {

/// Mean waits wait[slot][tag].
using WaitGrid = std::array<std::array<double, kTags>, kSlotsPerDay>;
using CapacityTriple = std::array<int, kSlotsPerDay>;

/// Sum over slots and tags of |sim - real|.
double l1_error(const WaitGrid& sim, const WaitGrid& real);
inline double l1_error(const WaitGrid& sim, const RealWaitTable& real) { return l1_error(sim, real.wait); }

/// Replication-averaged mean waits per (slot, tag) of a single-ED scenario.
WaitGrid simulated_waits(const Scenario& single_ed, const CapacityTriple& capacities, int replications,
                         std::uint64_t seed_base, Execution exec = Execution::Serial);

struct CalibrationOptions {
  int replications = 30;
  std::uint64_t seed_base = 0;
  PlanBounds bounds{2, 10};
  Execution exec = Execution::Parallel;
};

struct GridPoint {
  CapacityTriple capacities{};
  double error = 0.0;
};

struct CalibrationResult {
  CapacityTriple capacities{};
  double error = 0.0;
  /// Every grid point in lexicographic order of the triple.
  std::vector<GridPoint> grid;
};

/// Every capacity triple of the box, lexicographically ordered.
std::vector<CapacityTriple> capacity_grid(const PlanBounds& bounds);

/// Exhaustive search over the capacity grid for the triple minimizing the L1
/// wait error. Ties go to the smaller total, then the lexicographically
/// smaller triple. `single_ed` must hold exactly one ED.
CalibrationResult calibrate_ed(const Scenario& single_ed, const RealWaitTable& real,
                               const CalibrationOptions& options = {});

/// Grid errors evaluated by a plain loop (reference for the OpenMP kernel).
std::vector<GridPoint> grid_errors_serial(const Scenario& single_ed, const RealWaitTable& real,
                                          const CalibrationOptions& options);
/// Grid errors evaluated with one OpenMP task per grid point.
std::vector<GridPoint> grid_errors_parallel(const Scenario& single_ed, const RealWaitTable& real,
                                            const CalibrationOptions& options);

}  // namespace edsbo
