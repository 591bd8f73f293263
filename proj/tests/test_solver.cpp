#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "edsbo/solver.hpp"
#include "solver_problems.hpp"

using namespace edsbo::dfo;
using namespace edsbo::testing;

TEST_CASE("merit combines objective and scaled violations") {
  const std::vector<double> g{1.0, 2.0};
  CHECK(merit(10.0, g, 1.0) == 13.0);
  CHECK(merit(10.0, g, 0.1) == doctest::Approx(40.0));
  CHECK(merit(10.0, {}, 0.001) == 10.0);
  CHECK_THROWS_AS(merit(1.0, g, 0.0), std::invalid_argument);
}

TEST_CASE("unconstrained separable quadratic reaches the analytic optimum") {
  for (int start : {2, 10, 7}) {
    CAPTURE(start);
    auto p = box(18, 2, 10, start, sum_sq_to_five);
    const auto r = solve(p);
    CHECK(r.x == Point(18, 5));
    CHECK(r.f == 0.0);
    CHECK(r.evaluations <= 700);
  }
}

TEST_CASE("single constrained coordinate") {
  auto f = [](const Point& x) {
    Evaluation e;
    for (int v : x) e.f += v;
    e.g = {std::max(0.0, 6.0 - x[0])};
    return e;
  };
  for (int start : {2, 6, 10}) {
    CAPTURE(start);
    auto p = box(3, 2, 10, start, f);
    const auto r = solve(p);
    CHECK(r.x == Point{6, 2, 2});
    CHECK(r.violation() == 0.0);
    CHECK(r.f == 10.0);
  }
}

TEST_CASE("small constrained problems match exhaustive enumeration") {
  const auto problems = small_constrained_problems();
  for (std::size_t i = 0; i < problems.size(); ++i) {
    CAPTURE(i);
    const Evaluation want = brute_force(problems[i]);
    const auto r = solve(problems[i]);
    CHECK(r.violation() == doctest::Approx(want.violation()));
    CHECK(r.f == doctest::Approx(want.f));
  }
}

TEST_CASE("every evaluated point lies in the box and budgets are honored") {
  std::set<Point> seen;
  int calls = 0;
  auto f = [&](const Point& x) {
    seen.insert(x);
    ++calls;
    return sum_sq_to_five(x);
  };
  SUBCASE("box") {
    auto p = box(6, 2, 10, 10, f, 300);
    p.lower[2] = 4;
    p.upper[4] = 7;
    p.start[4] = 7;
    const auto r = solve(p);
    for (const auto& x : seen) CHECK(p.contains(x));
    CHECK(calls == r.evaluations);
    CHECK(calls <= 300);
  }
  SUBCASE("budget 0 evaluates only the start") {
    auto p = box(6, 2, 10, 8, f, 0);
    const auto r = solve(p);
    CHECK(calls == 1);
    CHECK(r.x == p.start);
    CHECK(r.evaluations == 1);
  }
  SUBCASE("budget 1 evaluates only the start") {
    auto p = box(6, 2, 10, 8, f, 1);
    const auto r = solve(p);
    CHECK(calls == 1);
    CHECK(r.x == p.start);
  }
  SUBCASE("tight budget stops exactly at the limit") {
    auto p = box(18, 2, 10, 10, f, 25);
    const auto r = solve(p);
    CHECK(calls == 25);
    CHECK(r.evaluations == 25);
    CHECK(r.f < sum_sq_to_five(p.start).f);
  }
}

TEST_CASE("cache hits do not consume budget") {
  int calls = 0;
  auto p = box(2, 2, 10, 5, [&](const Point& x) {
    ++calls;
    return sum_sq_to_five(x);
  });
  SolverState st(p, {});
  st.evaluate_forced(p.start);
  CHECK(st.evaluate(Point{6, 5}) != nullptr);
  CHECK(st.evaluate(Point{6, 5}) != nullptr);
  CHECK(st.evaluate(Point{5, 5}) != nullptr);
  CHECK(calls == 2);
  CHECK(st.evaluations() == 2);
  CHECK(st.cache_hits() == 2);

  const auto r = solve(p);
  CHECK(r.x == Point{5, 5});
}

TEST_CASE("coupled nonconvex constraint stops at a coordinate-wise local optimum") {
  // x0 * x1 >= 20 with cost x0 + x1: the box optimum (4,5) is not reachable
  // by single-coordinate moves from the corner start.
  auto p = box(2, 2, 10, 2, [](const Point& x) {
    Evaluation e;
    e.f = x[0] + x[1];
    e.g = {std::max(0.0, 20.0 - x[0] * x[1])};
    return e;
  });
  Point opt;
  CHECK(brute_force(p, &opt).f == 9.0);
  const auto r = solve(p);
  CHECK(r.violation() == 0.0);
  for (std::size_t k = 0; k < 2; ++k) {
    for (int d : {-1, +1}) {
      Point y = r.x;
      y[k] += d;
      if (!p.contains(y)) continue;
      const auto e = p.evaluate(y);
      CHECK((e.violation() > 0.0 || e.f >= r.f));
    }
  }
}

TEST_CASE("line search doubles while the decrease continues and clips to the box") {
  auto p = box(1, 2, 10, 2, [](const Point& x) {
    Evaluation e;
    e.f = -x[0];
    return e;
  });
  SolverState st(p, {});
  st.evaluate_forced(p.start);
  const auto r = discrete_linesearch(p.start, 0, +1, 2, p, st, {});
  CHECK(r.success);
  CHECK(r.x == Point{10});  // probes 4, 6, 10
  const auto back = discrete_linesearch(Point{10}, 0, +1, 1, p, st, {});
  CHECK_FALSE(back.success);
  CHECK(back.x == Point{10});
}

TEST_CASE("incumbent merit never increases at a fixed penalty") {
  auto f = [](const Point& x) {
    Evaluation e;
    for (std::size_t k = 0; k < x.size(); ++k) e.f += (k + 1.0) * std::abs(x[k] - 3.0 - static_cast<double>(k % 4));
    e.g = {std::max(0.0, 20.0 - x[0] - x[1] - x[2]), std::max(0.0, x[5] - 4.0)};
    return e;
  };
  auto p = box(8, 2, 10, 9, f, 400);
  const auto r = solve(p);
  REQUIRE(r.trace.size() > 1);
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    if (r.trace[i].penalty == r.trace[i - 1].penalty) CHECK(r.trace[i].merit <= r.trace[i - 1].merit);
    CHECK(r.trace[i].penalty <= r.trace[i - 1].penalty);
  }
}

TEST_CASE("reported point is the lexicographic best of everything evaluated") {
  std::vector<std::pair<Point, Evaluation>> log;
  auto f = [&](const Point& x) {
    Evaluation e;
    e.f = 100.0 - x[0] - x[1] - x[2];
    e.g = {std::max(0.0, x[0] + x[1] - 9.0), std::max(0.0, x[2] - 7.0)};
    log.emplace_back(x, e);
    return e;
  };
  auto p = box(3, 2, 10, 2, f, 60);
  const auto r = solve(p);
  for (const auto& [x, e] : log) {
    const bool better = e.violation() < r.violation() || (e.violation() == r.violation() && e.f < r.f);
    CHECK_FALSE(better);
  }
}

TEST_CASE("solver is deterministic") {
  auto f = [](const Point& x) {
    Evaluation e;
    for (std::size_t k = 0; k < x.size(); ++k) e.f += std::sin(1.0 + x[k] * (k + 1.0)) + 0.1 * x[k];
    e.g = {std::max(0.0, 12.0 - x[0] - x[3])};
    return e;
  };
  const auto p = box(6, 2, 10, 6, f, 200);
  const auto a = solve(p), b = solve(p);
  CHECK(a.x == b.x);
  CHECK(a.evaluations == b.evaluations);
  CHECK(a.trace.size() == b.trace.size());
}

TEST_CASE("invalid problems are rejected") {
  auto p = box(3, 2, 10, 5, sum_sq_to_five);
  p.start[1] = 11;
  CHECK_THROWS_AS(solve(p), std::invalid_argument);
  p = box(3, 2, 10, 5, sum_sq_to_five);
  p.upper.pop_back();
  CHECK_THROWS_AS(solve(p), std::invalid_argument);
  p = box(3, 2, 10, 5, sum_sq_to_five);
  p.lower[0] = 11;
  CHECK_THROWS_AS(solve(p), std::invalid_argument);
}
