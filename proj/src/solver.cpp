#include "edsbo/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace edsbo::dfo {

double Evaluation::violation() const { return std::accumulate(g.begin(), g.end(), 0.0); }

double SolveResult::violation() const { return std::accumulate(g.begin(), g.end(), 0.0); }

bool BoxedIntegerProblem::contains(const Point& x) const {
  if (x.size() != lower.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < lower[i] || x[i] > upper[i]) return false;
  return true;
}

void BoxedIntegerProblem::validate() const {
  if (start.empty()) throw std::invalid_argument("problem has dimension 0");
  if (lower.size() != start.size() || upper.size() != start.size()) {
    throw std::invalid_argument("bound vectors and start point differ in dimension");
  }
  for (std::size_t i = 0; i < start.size(); ++i) {
    if (lower[i] > upper[i]) throw std::invalid_argument("lower bound exceeds upper bound");
  }
  if (!contains(start)) throw std::invalid_argument("start point lies outside the box");
  if (!evaluate) throw std::invalid_argument("problem has no black box");
  if (budget < 0) throw std::invalid_argument("budget must be >= 0");
}

double merit(double f, std::span<const double> g, double penalty) {
  if (!(penalty > 0.0)) throw std::invalid_argument("penalty parameter must be positive");
  return f + std::accumulate(g.begin(), g.end(), 0.0) / penalty;
}

SolverState::SolverState(const BoxedIntegerProblem& problem, const SolverOptions& options)
    : problem_(problem), budget_(std::max(problem.budget, 1)), penalty_(options.initial_penalty) {}

const Evaluation& SolverState::insert(const Point& x, Evaluation e) {
  auto [it, inserted] = cache_.emplace(x, std::move(e));
  ++evaluations_;
  order_.push_back(&it->first);
  if (best_merit_ == nullptr || merit_of(it->second) < merit_of(*best_merit_)) best_merit_ = &it->first;
  return it->second;
}

const Evaluation* SolverState::evaluate(const Point& x) {
  if (auto it = cache_.find(x); it != cache_.end()) {
    ++cache_hits_;
    return &it->second;
  }
  if (exhausted()) return nullptr;
  return &insert(x, problem_.evaluate(x));
}

const Evaluation& SolverState::evaluate_forced(const Point& x) {
  if (auto it = cache_.find(x); it != cache_.end()) return it->second;
  return insert(x, problem_.evaluate(x));
}

void SolverState::set_penalty(double p) {
  penalty_ = p;
  best_merit_ = nullptr;
  for (const Point* x : order_) {
    if (best_merit_ == nullptr || merit_of(*x) < merit_of(*best_merit_)) best_merit_ = x;
  }
}

const Point& SolverState::best_lexicographic() const {
  const Point* best = nullptr;
  for (const Point* x : order_) {
    if (best == nullptr) {
      best = x;
      continue;
    }
    const auto& e = cache_.at(*x);
    const auto& b = cache_.at(*best);
    const double ve = e.violation(), vb = b.violation();
    if (ve < vb || (ve == vb && e.f < b.f)) best = x;
  }
  return *best;
}

namespace {

Point moved(const Point& x, std::size_t k, long delta, const BoxedIntegerProblem& problem) {
  Point y = x;
  const long v = static_cast<long>(x[k]) + delta;
  y[k] = static_cast<int>(std::clamp<long>(v, problem.lower[k], problem.upper[k]));
  return y;
}

}  // namespace

LineSearchResult discrete_linesearch(const Point& x, std::size_t coordinate, int sign, int step,
                                     const BoxedIntegerProblem& problem, SolverState& state,
                                     const SolverOptions& options) {
  const LineSearchResult failure{false, x, step};
  Point y = moved(x, coordinate, static_cast<long>(sign) * step, problem);
  if (y == x) return failure;
  const double mx = state.merit_of(x);
  const Evaluation* ey = state.evaluate(y);
  if (ey == nullptr) return failure;
  double my = state.merit_of(*ey);
  if (!(my <= mx - options.xi_relative * (1.0 + std::abs(mx)))) return failure;

  int accepted = step;
  for (;;) {
    const long next = 2L * accepted;
    Point z = moved(x, coordinate, sign * next, problem);
    if (z == y) break;
    const Evaluation* ez = state.evaluate(z);
    if (ez == nullptr) break;
    const double mz = state.merit_of(*ez);
    if (!(mz <= my - options.xi_relative * (1.0 + std::abs(my)))) break;
    y = std::move(z);
    my = mz;
    accepted = static_cast<int>(std::min<long>(next, problem.upper[coordinate] - problem.lower[coordinate]));
  }
  return {true, std::move(y), std::max(accepted, 1)};
}

SolveResult solve(const BoxedIntegerProblem& problem, const SolverOptions& options) {
  problem.validate();
  if (!(options.initial_penalty > 0.0) || !(options.penalty_reduction > 0.0) ||
      !(options.penalty_reduction < 1.0) || options.initial_step < 1) {
    throw std::invalid_argument("invalid solver options");
  }
  SolverState state(problem, options);
  state.evaluate_forced(problem.start);
  Point incumbent = problem.start;
  std::vector<int> steps(problem.dimension(), options.initial_step);
  std::vector<IncumbentTrace> trace;

  auto note = [&] { trace.push_back({state.penalty(), state.merit_of(incumbent)}); };

  while (!state.exhausted()) {
    bool progress = false;
    for (std::size_t k = 0; k < problem.dimension() && !state.exhausted(); ++k) {
      for (int sign : {+1, -1}) {
        auto r = discrete_linesearch(incumbent, k, sign, steps[k], problem, state, options);
        if (r.success) {
          incumbent = std::move(r.x);
          steps[k] = r.step;
        }
        // Keep the incumbent at the merit minimum over everything evaluated.
        if (state.best_by_merit() != incumbent &&
            state.merit_of(state.best_by_merit()) < state.merit_of(incumbent)) {
          incumbent = state.best_by_merit();
          r.success = true;
        }
        note();
        if (r.success) {
          progress = true;
          break;
        }
        if (state.exhausted()) break;
      }
    }
    if (state.exhausted() || progress) continue;

    if (std::any_of(steps.begin(), steps.end(), [](int s) { return s > 1; })) {
      for (int& s : steps) s = std::max(1, s / 2);
      continue;
    }
    // Unit steps and no progress. A smaller penalty only raises the merit of
    // infeasible points, so a feasible incumbent is final.
    if (state.cache().at(incumbent).violation() == 0.0) break;
    const double next_penalty = state.penalty() * options.penalty_reduction;
    if (next_penalty < options.min_penalty) break;
    state.set_penalty(next_penalty);
    if (state.merit_of(state.best_by_merit()) < state.merit_of(incumbent)) incumbent = state.best_by_merit();
    note();
  }

  const Point& best = state.best_lexicographic();
  const Evaluation& eb = state.cache().at(best);
  SolveResult result;
  result.x = best;
  result.f = eb.f;
  result.g = eb.g;
  result.evaluations = state.evaluations();
  result.cache_hits = state.cache_hits();
  result.final_penalty = state.penalty();
  result.trace = std::move(trace);
  return result;
}

}  // namespace edsbo::dfo
