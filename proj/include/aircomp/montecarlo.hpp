#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "aircomp/model.hpp"
#include "aircomp/policies.hpp"
#include "aircomp/rng.hpp"
#include "aircomp/types.hpp"

namespace aircomp {

/// One fading realization: K i.i.d. Rayleigh magnitudes h = sqrt(U) with
/// U standard exponential (unit-mean power gains), sorted ascending.
/// Deterministic in (seed, trial_index).
inline ChannelState sample_channels(std::size_t sensors, std::uint64_t seed,
                                    std::uint64_t trial_index) {
  if (sensors < 1) throw std::invalid_argument("sensors must be >= 1");
  CounterRng rng(seed, trial_index);
  std::vector<double> gains;
  gains.reserve(sensors);
  for (std::size_t k = 0; k < sensors; ++k)
    gains.push_back(std::sqrt(rng.exponential()));
  return ChannelState::from_gains(std::move(gains));
}

/// Sample statistics of MSE/K and PW/K over independent channel draws,
/// plus the critical-number statistics of the evaluated policy.
struct ErgodicEstimate {
  double mean_mse_per_k = 0.0;
  double std_mse_per_k = 0.0;
  double mean_pw_per_k = 0.0;
  double std_pw_per_k = 0.0;
  double mean_critical = 0.0;
  double std_critical = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  // Set when the running mean of MSE/K fails the decade-checkpoint Cauchy
  // criterion (channel inversion has an infinite mean).
  bool mse_diverged = false;
};

namespace detail {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

// Two-pass mean / sample standard deviation, accumulated in index order so
// the result does not depend on how trials were scheduled.
inline MeanStd reduce_moments(const std::vector<double>& values) {
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  if (values.size() < 2) return {mean, 0.0};
  double sum_sq = 0.0;
  for (double v : values) sum_sq += (v - mean) * (v - mean);
  return {mean, std::sqrt(sum_sq / (n - 1.0))};
}

// Running-mean checkpoints at 10^3, 10^4, ... trials plus the final trial;
// flags divergence when successive checkpoint means differ by more than 10%.
// Checkpoints below 10^3 are skipped as too noisy to be meaningful.
inline bool decade_checkpoint_divergence(const std::vector<double>& values) {
  std::vector<double> checkpoints;
  double running = 0.0;
  std::size_t next = 1000;
  std::size_t last_checkpoint = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    running += values[i];
    if (i + 1 == next) {
      checkpoints.push_back(running / static_cast<double>(i + 1));
      last_checkpoint = i + 1;
      next *= 10;
    }
  }
  if (values.size() >= 1000 && last_checkpoint != values.size())
    checkpoints.push_back(running / static_cast<double>(values.size()));
  for (std::size_t i = 1; i < checkpoints.size(); ++i) {
    const double lo = std::min(checkpoints[i - 1], checkpoints[i]);
    const double hi = std::max(checkpoints[i - 1], checkpoints[i]);
    if (hi - lo > 0.10 * hi) return true;
  }
  return false;
}

template <typename Fn>
inline void parallel_for_trials(std::size_t trials, unsigned threads, Fn fn) {
  if (threads <= 1 || trials < 2) {
    for (std::size_t t = 0; t < trials; ++t) fn(t);
    return;
  }
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(threads, trials));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([=] {
      // Contiguous slices; every trial writes only its own buffer entry.
      const std::size_t begin = trials * w / workers;
      const std::size_t end = trials * (w + 1) / workers;
      for (std::size_t t = begin; t < end; ++t) fn(t);
    });
  }
  for (auto& worker : pool) worker.join();
}

}  // namespace detail

/// Ergodic evaluation of a policy under Rayleigh fading: per trial, draws a
/// channel state keyed by (seed, trial), builds the policy and records MSE/K
/// and PW/K. Trials may run on any number of threads; the estimate is
/// bit-identical for a fixed seed regardless of the parallelism degree.
inline ErgodicEstimate ergodic_evaluate(const SystemParams& params,
                                        const PolicySpec& spec,
                                        std::size_t trials, std::uint64_t seed,
                                        unsigned threads = 1) {
  validate(params);
  if (trials < 2) throw std::invalid_argument("trials must be >= 2");
  std::vector<double> mse_per_k(trials);
  std::vector<double> pw_per_k(trials);
  std::vector<double> critical(trials);
  const double k = static_cast<double>(params.sensor_count);
  detail::parallel_for_trials(trials, threads, [&](std::size_t t) {
    const ChannelState channels =
        sample_channels(params.sensor_count, seed, t);
    const TxRxPolicy policy = make_policy(params, channels, spec);
    mse_per_k[t] = compute_mse(params, channels, policy) / k;
    pw_per_k[t] = compute_power(policy) / k;
    critical[t] = static_cast<double>(
        interval_of(params, channels, policy.rx_scale));
  });

  const auto mse_stats = detail::reduce_moments(mse_per_k);
  const auto pw_stats = detail::reduce_moments(pw_per_k);
  const auto critical_stats = detail::reduce_moments(critical);
  ErgodicEstimate estimate;
  estimate.mean_mse_per_k = mse_stats.mean;
  estimate.std_mse_per_k = mse_stats.std;
  estimate.mean_pw_per_k = pw_stats.mean;
  estimate.std_pw_per_k = pw_stats.std;
  estimate.mean_critical = critical_stats.mean;
  estimate.std_critical = critical_stats.std;
  estimate.trials = trials;
  estimate.seed = seed;
  estimate.mse_diverged = detail::decade_checkpoint_divergence(mse_per_k);
  return estimate;
}

struct ScalingPoint {
  std::size_t sensors = 0;
  ErgodicEstimate estimate;
};

/// Ergodic estimates across sensor counts, with fitted log-log slopes of the
/// average computation MSE and average power consumption as trend
/// diagnostics.
struct ScalingSeries {
  std::string policy;
  std::vector<ScalingPoint> points;
  double acm_loglog_slope = 0.0;
  double apc_loglog_slope = 0.0;
};

namespace detail {

inline double loglog_slope(const std::vector<ScalingPoint>& points,
                           bool use_mse) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (const auto& point : points) {
    const double value = use_mse ? point.estimate.mean_mse_per_k
                                 : point.estimate.mean_pw_per_k;
    if (!(value > 0.0)) continue;
    const double x = std::log(static_cast<double>(point.sensors));
    const double y = std::log(value);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++n;
  }
  if (n < 2) return 0.0;
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

}  // namespace detail

inline ScalingSeries scaling_sweep(const SystemParams& params_template,
                                   const PolicySpec& spec,
                                   const std::vector<std::size_t>& k_values,
                                   std::size_t trials, std::uint64_t seed,
                                   unsigned threads = 1) {
  if (k_values.empty())
    throw std::invalid_argument("k_values must be nonempty");
  for (std::size_t i = 1; i < k_values.size(); ++i)
    if (k_values[i] <= k_values[i - 1])
      throw std::invalid_argument("k_values must be strictly increasing");
  ScalingSeries series;
  series.policy = spec.to_string();
  series.points.reserve(k_values.size());
  for (std::size_t sensors : k_values) {
    SystemParams params = params_template;
    params.sensor_count = sensors;
    series.points.push_back(
        {sensors, ergodic_evaluate(params, spec, trials, seed, threads)});
  }
  series.acm_loglog_slope = detail::loglog_slope(series.points, true);
  series.apc_loglog_slope = detail::loglog_slope(series.points, false);
  return series;
}

/// mu(x) = x/(1-x) - log(1-x) - 2 sqrt(x/(1-x)) asin(sqrt(x)) on [0, 1).
/// Below 1e-4 the series x^2/6 is used; the direct form loses all precision
/// to cancellation there.
inline double mu(double x) {
  if (!(x >= 0.0) || !(x < 1.0))
    throw std::domain_error("mu: argument must lie in [0, 1)");
  if (x < 1e-4) return x * x / 6.0;
  const double ratio = x / (1.0 - x);
  return ratio - std::log(1.0 - x) -
         2.0 * std::sqrt(ratio) * std::asin(std::sqrt(x));
}

enum class Trend { Vanishing, NonVanishing, Inconclusive };

inline const char* to_string(Trend trend) {
  switch (trend) {
    case Trend::Vanishing: return "vanishing";
    case Trend::NonVanishing: return "non-vanishing";
    case Trend::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct Classification {
  Trend computation_effective = Trend::Inconclusive;
  Trend energy_efficient = Trend::Inconclusive;
};

/// Heuristic trend classification from the fitted log-log slopes. Requires
/// at least three sensor counts spanning a decade; a diverged MSE mean is
/// classified as non-vanishing outright.
inline Classification classify(const ScalingSeries& series) {
  Classification result;
  if (series.points.size() < 3) return result;
  const double span =
      static_cast<double>(series.points.back().sensors) /
      static_cast<double>(series.points.front().sensors);
  if (span < 10.0) return result;

  constexpr double kVanishing = -0.15;
  constexpr double kFlat = -0.05;
  const auto judge = [&](double slope) {
    if (slope <= kVanishing) return Trend::Vanishing;
    if (slope >= kFlat) return Trend::NonVanishing;
    return Trend::Inconclusive;
  };
  bool diverged = false;
  for (const auto& point : series.points)
    diverged = diverged || point.estimate.mse_diverged;
  result.computation_effective =
      diverged ? Trend::NonVanishing : judge(series.acm_loglog_slope);
  result.energy_efficient = judge(series.apc_loglog_slope);
  return result;
}

}  // namespace aircomp
