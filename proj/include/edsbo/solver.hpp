// Derivative-free solver for box-constrained integer black-box problems with
// inequality constraints: coordinate discrete line searches on a sequential
// penalty merit function, with an evaluation cache and a hard budget.
#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

namespace edsbo::dfo {

using Point = std::vector<int>;

/// Black-box output: objective value and non-negative constraint violations.
struct Evaluation {
  double f = 0.0;
  std::vector<double> g;

  double violation() const;
};

using BlackBox = std::function<Evaluation(const Point&)>;

struct BoxedIntegerProblem {
  Point lower;
  Point upper;
  Point start;
  BlackBox evaluate;
  int budget = 700;

  std::size_t dimension() const { return start.size(); }
  bool contains(const Point& x) const;
  /// Throws std::invalid_argument on inconsistent bounds or start point.
  void validate() const;
};

struct SolverOptions {
  double initial_penalty = 1.0;
  /// Multiplier applied to the penalty parameter after a failed unit-step sweep.
  double penalty_reduction = 0.1;
  double min_penalty = 1e-12;
  int initial_step = 2;
  /// Sufficient decrease is xi_relative * (1 + |merit(x)|).
  double xi_relative = 1e-6;
};

/// f + (1/penalty) * sum(g).
double merit(double f, std::span<const double> g, double penalty);

/// Cache, budget counter and incumbent of one solver run.
class SolverState {
 public:
  SolverState(const BoxedIntegerProblem& problem, const SolverOptions& options);

  /// Evaluates x through the cache. Returns nullptr when x is not cached and
  /// the budget is spent.
  const Evaluation* evaluate(const Point& x);
  /// Evaluates x even if the budget is spent (used for the start point).
  const Evaluation& evaluate_forced(const Point& x);

  double merit_of(const Evaluation& e) const { return merit(e.f, e.g, penalty_); }
  double merit_of(const Point& x) const { return merit_of(cache_.at(x)); }

  bool exhausted() const { return evaluations_ >= budget_; }
  int evaluations() const { return evaluations_; }
  int cache_hits() const { return cache_hits_; }
  double penalty() const { return penalty_; }
  void set_penalty(double p);

  /// Point of minimum merit among all evaluated points at the current penalty
  /// (earliest evaluated wins ties).
  const Point& best_by_merit() const { return *best_merit_; }
  /// Lexicographically best evaluated point: total violation first, then f.
  const Point& best_lexicographic() const;

  const std::map<Point, Evaluation>& cache() const { return cache_; }
  const std::vector<const Point*>& evaluation_order() const { return order_; }

 private:
  const Evaluation& insert(const Point& x, Evaluation e);

  const BoxedIntegerProblem& problem_;
  int budget_;
  int evaluations_ = 0;
  int cache_hits_ = 0;
  double penalty_;
  std::map<Point, Evaluation> cache_;
  std::vector<const Point*> order_;
  const Point* best_merit_ = nullptr;
};

struct LineSearchResult {
  bool success = false;
  Point x;
  int step = 1;
};

/// Probes x + step*sign*e_k (clipped to the box). On sufficient merit
/// decrease the step keeps doubling while the decrease continues. On failure
/// x and step are returned unchanged.
LineSearchResult discrete_linesearch(const Point& x, std::size_t coordinate, int sign, int step,
                                     const BoxedIntegerProblem& problem, SolverState& state,
                                     const SolverOptions& options);

struct IncumbentTrace {
  double penalty;
  double merit;
};

struct SolveResult {
  Point x;
  double f = 0.0;
  std::vector<double> g;
  int evaluations = 0;
  int cache_hits = 0;
  double final_penalty = 0.0;
  /// Incumbent merit after every line search, with the penalty it was measured at.
  std::vector<IncumbentTrace> trace;

  double violation() const;
};

/// Minimizes the problem; returns the lexicographically best evaluated point
/// (feasibility first). The start point is always evaluated.
SolveResult solve(const BoxedIntegerProblem& problem, const SolverOptions& options = {});

}  // namespace edsbo::dfo
