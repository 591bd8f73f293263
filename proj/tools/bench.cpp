// Times the serial reference kernels against the OpenMP kernels and checks
// that both produce identical results.
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "edsbo/batch.hpp"
#include "edsbo/calibrate.hpp"
#include "edsbo/scenario_io.hpp"

namespace {

template <class F>
double seconds(F&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs OpenMP kernel benchmark"};
  std::string scenario_path;
  int replications = 30;
  int calib_replications = 2;
  int threads = 0;
  int upper = 6;
  app.add_option("--scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
  app.add_option("--replications", replications, "Replications in the SAA batch");
  app.add_option("--calibration-replications", calib_replications, "Replications per calibration grid point");
  app.add_option("--grid-upper", upper, "Upper capacity bound of the calibration grid");
  app.add_option("--threads", threads, "OpenMP threads");
  CLI11_PARSE(app, argc, argv);

  edsbo::set_parallel_threads(threads);
  const auto scenario = edsbo::parse_scenario(scenario_path);
  if (!scenario.start_plan) {
    std::cerr << "scenario needs a start_plan\n";
    return 1;
  }
  const auto& plan = *scenario.start_plan;
  std::cout << "threads: " << edsbo::parallel_threads() << "\n";

  std::vector<edsbo::ReplicationMeans> serial, parallel;
  const double ts = seconds([&] { serial = edsbo::run_batch_serial(scenario, plan, scenario.policy, replications, 1); });
  const double tp = seconds([&] { parallel = edsbo::run_batch_parallel(scenario, plan, scenario.policy, replications, 1); });
  std::cout << "replication batch (" << replications << " reps): serial " << ts << " s, parallel " << tp
            << " s, speedup " << ts / tp << ", identical: " << (serial == parallel ? "yes" : "NO") << "\n";

  const auto single = scenario.single_ed(0);
  edsbo::RealWaitTable real{};
  edsbo::CalibrationOptions copt;
  copt.replications = calib_replications;
  copt.bounds = {2, upper};
  std::vector<edsbo::GridPoint> gs, gp;
  const double cs = seconds([&] { gs = edsbo::grid_errors_serial(single, real, copt); });
  const double cp = seconds([&] { gp = edsbo::grid_errors_parallel(single, real, copt); });
  bool same = gs.size() == gp.size();
  for (std::size_t i = 0; same && i < gs.size(); ++i) same = gs[i].capacities == gp[i].capacities && gs[i].error == gp[i].error;
  std::cout << "calibration grid (" << gs.size() << " points): serial " << cs << " s, parallel " << cp
            << " s, speedup " << cs / cp << ", identical: " << (same ? "yes" : "NO") << "\n";
  return (serial == parallel && same) ? EXIT_SUCCESS : EXIT_FAILURE;
}
