// Replication batches: the data-parallel kernel behind SAA evaluation and
// calibration. Each replication owns its model; results are stored by
// replication index so serial and parallel execution agree bit for bit.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "edsbo/model.hpp"
#include "edsbo/network.hpp"

namespace edsbo {

enum class Execution { Serial, Parallel };

/// Per-ED means of one replication.
struct EDReplicationMeans {
  std::array<double, kTags> nva{};
  /// wait[slot][tag]
  std::array<std::array<double, kTags>, kSlotsPerDay> wait{};
  double redirected_out = 0.0;
  double redirected_in = 0.0;

  bool operator==(const EDReplicationMeans&) const = default;
};

using ReplicationMeans = std::vector<EDReplicationMeans>;

ReplicationMeans reduce_replication(const ReplicationOutput& out);

/// Replication seed r (0-based) under a seed base.
inline std::uint64_t replication_seed(std::uint64_t seed_base, int r) {
  return seed_base + static_cast<std::uint64_t>(r) + 1;
}

/// Runs `replications` replications with seeds seed_base+1..seed_base+R.
std::vector<ReplicationMeans> run_batch(const Scenario& scenario, const ResourcePlan& plan,
                                        const PolicyConfig& policy, int replications,
                                        std::uint64_t seed_base, Execution exec = Execution::Parallel);

/// Reference implementation: plain loop over replications.
std::vector<ReplicationMeans> run_batch_serial(const Scenario& scenario, const ResourcePlan& plan,
                                               const PolicyConfig& policy, int replications,
                                               std::uint64_t seed_base);

/// OpenMP implementation.
std::vector<ReplicationMeans> run_batch_parallel(const Scenario& scenario, const ResourcePlan& plan,
                                                 const PolicyConfig& policy, int replications,
                                                 std::uint64_t seed_base);

/// Number of threads the parallel kernels will use.
int parallel_threads();
/// Overrides the OpenMP thread count (n <= 0 keeps the runtime default).
void set_parallel_threads(int n);

}  // namespace edsbo
