#include "doctest.h"

#include "edsbo/objective.hpp"
#include "fixtures.hpp"

using namespace edsbo;
using namespace edsbo::testing;

namespace {

SimSummary table_summary(int policy) {
  SimSummary s;
  for (const auto& ed : kStartNva[policy]) {
    EDSummary e;
    e.nva_yellow = {ed[0], 0.5, 30};
    e.nva_red = {ed[1], 0.5, 30};
    s.eds.push_back(e);
  }
  return s;
}

/// Independent objective oracle: 480 * sum(n) * w1 + w2 * sum(Y) + w3 * sum(R).
double objective_oracle(const ResourcePlan& plan, const std::array<std::array<double, 2>, 6>& nva, double w1,
                        double w2, double w3) {
  int n = 0;
  for (const auto& ed : plan.n)
    for (int v : ed) n += v;
  double y = 0.0, r = 0.0;
  for (const auto& ed : nva) {
    y += ed[0];
    r += ed[1];
  }
  return 480.0 * w1 * n + w2 * y + w3 * r;
}

}  // namespace

TEST_CASE("starting-point objective matches the published values") {
  const ObjectiveSpec spec;
  CHECK(kStartPlan.total() == 66);
  const std::array<double, 4> tolerance{0.001, 0.005, 0.005, 0.005};
  for (int p = 0; p < 4; ++p) {
    CAPTURE(p);
    const double f = objective_value(kStartPlan, table_summary(p), spec);
    CHECK(f == doctest::Approx(objective_oracle(kStartPlan, kStartNva[p], 1, 300, 600)).epsilon(1e-12));
    CHECK(std::abs(f - kStartObjective[p]) / kStartObjective[p] < tolerance[p]);
  }
  CHECK(objective_value(kStartPlan, table_summary(0), spec) == doctest::Approx(127452.0).epsilon(1e-9));
  CHECK(table_summary(0).sum_nva(Tag::Yellow) == doctest::Approx(165.04));
  CHECK(table_summary(0).sum_nva(Tag::Red) == doctest::Approx(77.10));
}

TEST_CASE("constraint violations from the starting-point table") {
  const ObjectiveSpec spec;
  const auto g = constraint_violations(table_summary(0), spec);
  REQUIRE(g.size() == 12);
  const std::vector<double> want{0, 0, 0, 10.28, 14.63, 0, 0, 0, 0, 4.40, 3.70, 0};
  for (std::size_t i = 0; i < 12; ++i) {
    CAPTURE(i);
    CHECK(g[i] == doctest::Approx(want[i]).epsilon(1e-12));
  }
  for (int p = 0; p < 4; ++p) {
    const auto gp = constraint_violations(table_summary(p), spec);
    for (std::size_t i = 0; i < 6; ++i) {
      CHECK(gp[i] == std::max(0.0, kStartNva[p][i][0] - 40.0));
      CHECK(gp[6 + i] == std::max(0.0, kStartNva[p][i][1] - 20.0));
    }
  }
  for (double v : constraint_violations(table_summary(3), spec)) CHECK(v == 0.0);
}

TEST_CASE("constraints can be checked at the CI upper bound") {
  ObjectiveSpec spec;
  SimSummary s = table_summary(3);
  s.eds[0].nva_yellow = {39.8, 0.5, 30};
  CHECK(constraint_violations(s, spec)[0] == 0.0);
  spec.constraints_use_ci_upper = true;
  CHECK(constraint_violations(s, spec)[0] == doctest::Approx(0.3));
}

TEST_CASE("objective structure") {
  const SimSummary s = table_summary(1);
  SUBCASE("zero NVA weights leave only the resource term") {
    ObjectiveSpec spec;
    spec.w2 = spec.w3 = 0.0;
    CHECK(objective_value(kStartPlan, s, spec) == 480.0 * 66);
  }
  SUBCASE("each extra resource adds exactly 480 * w1") {
    ObjectiveSpec spec;
    spec.w1 = 2.5;
    const double base = objective_value(kStartPlan, s, spec);
    for (std::size_t i = 0; i < 6; ++i) {
      for (int j = 0; j < 3; ++j) {
        ResourcePlan p = kStartPlan;
        ++p.n[i][j];
        CHECK(objective_value(p, s, spec) - base == doctest::Approx(480.0 * 2.5));
      }
    }
  }
  SUBCASE("linear in each weight") {
    for (int w = 0; w < 3; ++w) {
      ObjectiveSpec a, b, c;
      double* wa = w == 0 ? &a.w1 : w == 1 ? &a.w2 : &a.w3;
      double* wb = w == 0 ? &b.w1 : w == 1 ? &b.w2 : &b.w3;
      double* wc = w == 0 ? &c.w1 : w == 1 ? &c.w2 : &c.w3;
      *wa = 1.0;
      *wb = 4.0;
      *wc = 7.0;
      const double fa = objective_value(kStartPlan, s, a);
      const double fb = objective_value(kStartPlan, s, b);
      const double fc = objective_value(kStartPlan, s, c);
      CHECK(fc - fb == doctest::Approx(fb - fa));
    }
  }
  SUBCASE("violations are zero exactly when feasible") {
    const ObjectiveSpec spec;
    SimSummary t = s;
    for (auto& e : t.eds) {
      e.nva_yellow.mean = 40.0;
      e.nva_red.mean = 20.0;
    }
    for (double v : constraint_violations(t, spec)) CHECK(v == 0.0);
    t.eds[5].nva_red.mean = 20.0001;
    CHECK(constraint_violations(t, spec)[11] > 0.0);
  }
}

TEST_CASE("replication summaries") {
  std::vector<ReplicationMeans> reps(3, ReplicationMeans(2));
  const double y[3] = {10.0, 12.0, 14.0};
  for (int r = 0; r < 3; ++r) {
    reps[r][0].nva = {y[r], 1.0};
    reps[r][1].nva = {5.0, 2.0};
    reps[r][0].redirected_out = r;
  }
  const auto s = summarize_replications(reps);
  REQUIRE(s.eds.size() == 2);
  CHECK(s.eds[0].nva_yellow.mean == doctest::Approx(12.0));
  // s = 2, t(0.975, 2) = 4.302653
  CHECK(s.eds[0].nva_yellow.half_width == doctest::Approx(4.302653 * 2.0 / std::sqrt(3.0)).epsilon(1e-5));
  CHECK(s.eds[1].nva_yellow.half_width == 0.0);
  CHECK(s.eds[0].redirected_out == doctest::Approx(1.0));
  CHECK(s.sum_nva(Tag::Red) == doctest::Approx(3.0));
}

TEST_CASE("SAA evaluation is deterministic under common random numbers") {
  Scenario s = table_one_network({45, 50, 40, 70, 75, 60}, 20);
  const PolicyConfig pol{PolicyId::P2};
  const auto a = saa_evaluate(kStartPlan, s, pol, 4, 100, Execution::Serial);
  const auto b = saa_evaluate(kStartPlan, s, pol, 4, 100, Execution::Parallel);
  CHECK(a.f == b.f);
  CHECK(a.g == b.g);
  const auto c = saa_evaluate(kStartPlan, s, pol, 4, 200, Execution::Serial);
  CHECK(c.f != a.f);
  CHECK(a.total_violation() >= 0.0);
}

TEST_CASE("Erlang ED embedded in an otherwise idle network") {
  Scenario s = table_one_network({30, 30, 30, 30, 30, 30}, 1000);
  for (std::size_t i = 0; i < 6; ++i) {
    for (int j = 0; j < 3; ++j) {
      s.eds[i].arrivals.rate[j] = {i == 0 ? 0.1 : 0.0, 0.0};
      s.eds[i].los[j] = {exp_los(30.0), exp_los(30.0)};
    }
  }
  ResourcePlan plan = kStartPlan;
  plan.n[0] = {4, 4, 4};
  const auto r = saa_evaluate(plan, s, {PolicyId::P1}, 4, 0);
  CHECK(r.summary.eds[0].nva_yellow.mean == doctest::Approx(erlang_c_wait(0.1, 1.0 / 30.0, 4)).epsilon(0.05));
  for (std::size_t i = 1; i < 6; ++i) {
    CHECK(r.summary.eds[i].nva_yellow.mean == 0.0);
    CHECK(r.summary.eds[i].nva_red.mean == 0.0);
  }
}
