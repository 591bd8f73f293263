#include "edsbo/batch.hpp"

#include <exception>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace edsbo {

ReplicationMeans reduce_replication(const ReplicationOutput& out) {
  ReplicationMeans means(out.eds.size());
  for (std::size_t i = 0; i < out.eds.size(); ++i) {
    const auto& s = out.eds[i];
    auto& m = means[i];
    for (int k = 0; k < kTags; ++k) m.nva[k] = s.mean_nva(static_cast<Tag>(k));
    for (int j = 0; j < kSlotsPerDay; ++j)
      for (int k = 0; k < kTags; ++k) m.wait[j][k] = s.mean_wait(j, static_cast<Tag>(k));
    m.redirected_out = static_cast<double>(s.redirected_out);
    m.redirected_in = static_cast<double>(s.redirected_in);
  }
  return means;
}

namespace {

ReplicationMeans one_replication(const Scenario& scenario, const ResourcePlan& plan,
                                 const PolicyConfig& policy, std::uint64_t seed) {
  ReplicationSpec spec = scenario.replication;
  spec.seed = seed;
  return reduce_replication(run_replication(scenario, plan, policy, spec));
}

void check_count(int replications) {
  if (replications < 1) throw std::invalid_argument("replication count must be positive");
}

}  // namespace

std::vector<ReplicationMeans> run_batch_serial(const Scenario& scenario, const ResourcePlan& plan,
                                               const PolicyConfig& policy, int replications,
                                               std::uint64_t seed_base) {
  check_count(replications);
  std::vector<ReplicationMeans> out;
  out.reserve(replications);
  for (int r = 0; r < replications; ++r) {
    out.push_back(one_replication(scenario, plan, policy, replication_seed(seed_base, r)));
  }
  return out;
}

std::vector<ReplicationMeans> run_batch_parallel(const Scenario& scenario, const ResourcePlan& plan,
                                                 const PolicyConfig& policy, int replications,
                                                 std::uint64_t seed_base) {
  check_count(replications);
  // Validate once up front so configuration errors surface outside the region.
  scenario.validate();
  scenario.validate_plan(plan);

  std::vector<ReplicationMeans> out(replications);
  std::vector<std::exception_ptr> errors(replications);
#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < replications; ++r) {
    try {
      out[r] = one_replication(scenario, plan, policy, replication_seed(seed_base, r));
    } catch (...) {
      errors[r] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<ReplicationMeans> run_batch(const Scenario& scenario, const ResourcePlan& plan,
                                        const PolicyConfig& policy, int replications,
                                        std::uint64_t seed_base, Execution exec) {
  return exec == Execution::Serial
             ? run_batch_serial(scenario, plan, policy, replications, seed_base)
             : run_batch_parallel(scenario, plan, policy, replications, seed_base);
}

int parallel_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_parallel_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace edsbo
