#include "edsbo/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <boost/math/distributions/students_t.hpp>

namespace edsbo {

void RateTable::validate() const {
  for (const auto& slot : rate) {
    for (double r : slot) {
      if (!(r >= 0.0) || !std::isfinite(r)) throw ConfigError("arrival rates must be finite and >= 0");
    }
  }
}

std::optional<Minutes> sample_interarrival(std::span<const double, kSlotsPerDay> slot_rates,
                                           Minutes clock, RandomStream& stream) {
  if (std::all_of(slot_rates.begin(), slot_rates.end(), [](double r) { return r <= 0.0; })) {
    return std::nullopt;
  }
  double remaining = stream.unit_exponential();
  Minutes t = clock;
  for (;;) {
    const double slot_index = std::floor(t / kSlotMinutes);
    const Minutes slot_end = (slot_index + 1.0) * kSlotMinutes;
    const double r = slot_rates[slot_of(t)];
    const double mass = r * (slot_end - t);
    if (r > 0.0 && mass >= remaining) {
      return t + remaining / r - clock;
    }
    remaining -= mass;
    t = slot_end;
  }
}

const char* family_name(LosFamily f) {
  switch (f) {
    case LosFamily::Exponential: return "exponential";
    case LosFamily::Lognormal: return "lognormal";
    case LosFamily::Gamma: return "gamma";
    case LosFamily::Weibull: return "weibull";
    case LosFamily::Empirical: return "empirical";
  }
  return "?";
}

LosDistribution LosDistribution::exponential(double mean) {
  return {LosFamily::Exponential, mean, 0.0, {}, {}};
}

LosDistribution LosDistribution::lognormal(double mu_log, double sigma_log) {
  return {LosFamily::Lognormal, mu_log, sigma_log, {}, {}};
}

LosDistribution LosDistribution::lognormal_mean_cv(double mean, double cv) {
  if (!(mean > 0.0) || !(cv > 0.0)) throw ConfigError("lognormal mean and cv must be positive");
  const double s2 = std::log1p(cv * cv);
  return lognormal(std::log(mean) - 0.5 * s2, std::sqrt(s2));
}

LosDistribution LosDistribution::gamma(double shape, double scale) {
  return {LosFamily::Gamma, shape, scale, {}, {}};
}

LosDistribution LosDistribution::gamma_mean_cv(double mean, double cv) {
  if (!(mean > 0.0) || !(cv > 0.0)) throw ConfigError("gamma mean and cv must be positive");
  return gamma(1.0 / (cv * cv), mean * cv * cv);
}

LosDistribution LosDistribution::weibull(double shape, double scale) {
  return {LosFamily::Weibull, shape, scale, {}, {}};
}

LosDistribution LosDistribution::empirical(std::vector<double> values, std::vector<double> weights) {
  return {LosFamily::Empirical, 0.0, 0.0, std::move(values), std::move(weights)};
}

void LosDistribution::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  switch (family) {
    case LosFamily::Exponential:
      if (!positive(a)) throw ConfigError("exponential LOS needs a positive mean");
      return;
    case LosFamily::Lognormal:
      if (!std::isfinite(a) || !positive(b)) throw ConfigError("lognormal LOS needs finite mu and positive sigma");
      return;
    case LosFamily::Gamma:
    case LosFamily::Weibull:
      if (!positive(a) || !positive(b)) {
        throw ConfigError(std::string(family_name(family)) + " LOS needs positive shape and scale");
      }
      return;
    case LosFamily::Empirical: {
      if (values.empty()) throw ConfigError("empirical LOS needs at least one value");
      if (!std::all_of(values.begin(), values.end(), positive)) {
        throw ConfigError("empirical LOS values must be positive");
      }
      if (!weights.empty()) {
        if (weights.size() != values.size()) throw ConfigError("empirical LOS weights/values size mismatch");
        double total = 0.0;
        for (double w : weights) {
          if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("empirical LOS weights must be >= 0");
          total += w;
        }
        if (!(total > 0.0)) throw ConfigError("empirical LOS weights must not all be zero");
      }
      return;
    }
  }
}

double LosDistribution::mean() const {
  switch (family) {
    case LosFamily::Exponential: return a;
    case LosFamily::Lognormal: return std::exp(a + 0.5 * b * b);
    case LosFamily::Gamma: return a * b;
    case LosFamily::Weibull: return b * std::tgamma(1.0 + 1.0 / a);
    case LosFamily::Empirical: {
      if (weights.empty()) return std::accumulate(values.begin(), values.end(), 0.0) / values.size();
      double s = 0.0, w = 0.0;
      for (std::size_t i = 0; i < values.size(); ++i) {
        s += values[i] * weights[i];
        w += weights[i];
      }
      return s / w;
    }
  }
  return 0.0;
}

Minutes sample_los(const LosDistribution& dist, RandomStream& stream) {
  double x = 0.0;
  switch (dist.family) {
    case LosFamily::Exponential:
      x = dist.a * stream.unit_exponential();
      break;
    case LosFamily::Lognormal: {
      std::normal_distribution<double> normal(dist.a, dist.b);
      x = std::exp(normal(stream.engine()));
      break;
    }
    case LosFamily::Gamma: {
      std::gamma_distribution<double> g(dist.a, dist.b);
      x = g(stream.engine());
      break;
    }
    case LosFamily::Weibull:
      x = dist.b * std::pow(stream.unit_exponential(), 1.0 / dist.a);
      break;
    case LosFamily::Empirical: {
      const double u = stream.uniform01();
      if (dist.weights.empty()) {
        const auto k = std::min(dist.values.size() - 1,
                                static_cast<std::size_t>(u * static_cast<double>(dist.values.size())));
        x = dist.values[k];
      } else {
        const double total = std::accumulate(dist.weights.begin(), dist.weights.end(), 0.0);
        double acc = 0.0;
        x = dist.values.back();
        for (std::size_t i = 0; i < dist.values.size(); ++i) {
          acc += dist.weights[i];
          if (u * total < acc) {
            x = dist.values[i];
            break;
          }
        }
      }
      break;
    }
  }
  return std::max(x, std::numeric_limits<double>::min());
}

double student_t_critical(double confidence, int dof) {
  if (dof < 1) throw StatisticsError("Student-t needs at least one degree of freedom");
  const boost::math::students_t dist(static_cast<double>(dof));
  return boost::math::quantile(dist, 0.5 + 0.5 * confidence);
}

MeanCI summarize(std::span<const double> values) {
  const auto n = values.size();
  if (n < 2) throw StatisticsError("summarize needs at least 2 replication values");
  // Sorted copy: sums are then independent of input order.
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  if (v.front() == v.back()) return {v.front(), 0.0, static_cast<int>(n)};
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double s = std::sqrt(ss / static_cast<double>(n - 1));
  const double hw = s == 0.0 ? 0.0
                             : student_t_critical(0.95, static_cast<int>(n - 1)) * s /
                                   std::sqrt(static_cast<double>(n));
  return {mean, hw, static_cast<int>(n)};
}

}  // namespace edsbo
