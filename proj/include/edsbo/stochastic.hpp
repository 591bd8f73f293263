// Arrival processes, length-of-stay sampling and replication statistics.
#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "edsbo/engine.hpp"

namespace edsbo {

enum class Tag : int { Yellow = 0, Red = 1 };
inline constexpr int kTags = 2;

inline const char* tag_name(Tag t) { return t == Tag::Yellow ? "yellow" : "red"; }

/// Raised for distributions or rates that cannot be used.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the statistics helpers on insufficient data.
class StatisticsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-minute arrival rate for annual count spread over one 8-hour slot per day.
inline double rate_from_annual_count(double count) { return count / (365.0 * kSlotMinutes); }

/// Piecewise-constant, day-periodic arrival intensities of one ED:
/// rate[slot][tag] in arrivals per minute.
struct RateTable {
  std::array<std::array<double, kTags>, kSlotsPerDay> rate{};

  std::array<double, kSlotsPerDay> profile(Tag tag) const {
    return {rate[0][static_cast<int>(tag)], rate[1][static_cast<int>(tag)],
            rate[2][static_cast<int>(tag)]};
  }
  void validate() const;
};

/// Gap from `clock` to the next arrival of a day-periodic piecewise-constant
/// Poisson process, by inversion of the cumulative intensity. Consumes exactly
/// one Exp(1) draw. Returns nullopt when every slot rate is zero.
std::optional<Minutes> sample_interarrival(std::span<const double, kSlotsPerDay> slot_rates,
                                           Minutes clock, RandomStream& stream);

enum class LosFamily { Exponential, Lognormal, Gamma, Weibull, Empirical };

const char* family_name(LosFamily f);

/// Length-of-stay distribution. Parameters by family:
///   Exponential: a = mean
///   Lognormal:   a = mu of log, b = sigma of log
///   Gamma:       a = shape, b = scale
///   Weibull:     a = shape, b = scale
///   Empirical:   values (+ optional weights)
struct LosDistribution {
  LosFamily family = LosFamily::Exponential;
  double a = 0.0;
  double b = 0.0;
  std::vector<double> values;
  std::vector<double> weights;

  static LosDistribution exponential(double mean);
  static LosDistribution lognormal(double mu_log, double sigma_log);
  /// Lognormal with the given mean and coefficient of variation.
  static LosDistribution lognormal_mean_cv(double mean, double cv);
  static LosDistribution gamma(double shape, double scale);
  static LosDistribution gamma_mean_cv(double mean, double cv);
  static LosDistribution weibull(double shape, double scale);
  static LosDistribution empirical(std::vector<double> values, std::vector<double> weights = {});

  /// Throws ConfigError when the parameters are not valid for the family.
  void validate() const;
  double mean() const;
};

/// Strictly positive duration drawn from `dist`.
Minutes sample_los(const LosDistribution& dist, RandomStream& stream);

/// Mean and 95% Student-t half-width over independent replications.
struct MeanCI {
  double mean = 0.0;
  double half_width = 0.0;
  int n_replications = 0;

  double upper() const { return mean + half_width; }
};

/// Two-sided Student-t critical value t_{1-alpha/2, dof}.
double student_t_critical(double confidence, int dof);

/// Mean and 95% half-width t_{0.975,n-1} * s / sqrt(n). Needs at least 2 values.
MeanCI summarize(std::span<const double> values);

}  // namespace edsbo
