#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "aircomp/rng.hpp"
#include "aircomp/types.hpp"

namespace aircomp {

namespace detail {

inline void check_dimensions(const SystemParams& params,
                             const ChannelState& channels) {
  validate(params);
  if (channels.size() != params.sensor_count)
    throw std::invalid_argument("channel count does not match sensor_count");
}

inline void check_dimensions(const SystemParams& params,
                             const ChannelState& channels,
                             const TxRxPolicy& policy) {
  check_dimensions(params, channels);
  if (policy.tx_scales.size() != params.sensor_count)
    throw std::invalid_argument("tx scale count does not match sensor_count");
}

}  // namespace detail

/// Instantaneous computation MSE of a Tx-Rx scaling policy:
///   sum_k (a h_k b_k - 1)^2 + sigma^2 a^2.
inline double compute_mse(const SystemParams& params,
                          const ChannelState& channels,
                          const TxRxPolicy& policy) {
  detail::check_dimensions(params, channels, policy);
  const double a = policy.rx_scale;
  double mse = params.noise_power * a * a;
  for (std::size_t k = 0; k < channels.size(); ++k) {
    const double residual = a * channels.gains()[k] * policy.tx_scales[k] - 1.0;
    mse += residual * residual;
  }
  return mse;
}

/// Total transmit power sum_k b_k^2.
inline double compute_power(const TxRxPolicy& policy) {
  double power = 0.0;
  for (double b : policy.tx_scales) power += b * b;
  return power;
}

inline PolicyMetrics evaluate(const SystemParams& params,
                              const ChannelState& channels,
                              const TxRxPolicy& policy) {
  return {compute_mse(params, channels, policy), compute_power(policy)};
}

/// Critical number of a Rx-scaling factor: the index i of the interval S_i
/// containing a, where S_0 = (1/(h_1 sqrt(P)), inf),
/// S_i = (1/(h_{i+1} sqrt(P)), 1/(h_i sqrt(P))] for 1 <= i < K and
/// S_K = [0, 1/(h_K sqrt(P))]. Comparisons are exact; empty intervals caused
/// by tied gains are never returned.
inline std::size_t interval_of(const SystemParams& params,
                               const ChannelState& channels, double a) {
  detail::check_dimensions(params, channels);
  if (!(a >= 0.0)) throw std::invalid_argument("rx scale must be >= 0");
  const double root_power = std::sqrt(params.peak_power);
  const auto& h = channels.gains();
  // Bounds c_i = 1/(h_i sqrt(P)) are non-increasing in i, so {i : a <= c_i}
  // is a prefix of 1..K; its length is the critical number.
  std::size_t lo = 0;  // a <= c_i holds for all i <= lo
  std::size_t hi = h.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo + 1) / 2;  // candidate prefix length
    if (a <= 1.0 / (h[mid - 1] * root_power)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

/// Sampled estimate of the computation MSE from the signal-level model:
/// pre-processed signals x_k are i.i.d. uniform on [-sqrt(3), sqrt(3)]
/// (zero mean, unit variance, bounded support) and the receiver noise is
/// Gaussian with the configured power. Deterministic per seed; converges to
/// compute_mse by the law of large numbers.
inline double simulate_empirical_mse(const SystemParams& params,
                                     const ChannelState& channels,
                                     const TxRxPolicy& policy,
                                     std::size_t num_samples,
                                     std::uint64_t seed) {
  detail::check_dimensions(params, channels, policy);
  if (num_samples < 1)
    throw std::invalid_argument("num_samples must be >= 1");
  constexpr double kSignalBound = 1.7320508075688772;  // sqrt(3)
  const double noise_std = std::sqrt(params.noise_power);
  CounterRng rng(seed);
  double total = 0.0;
  for (std::size_t sample = 0; sample < num_samples; ++sample) {
    double received = 0.0;
    double ideal_sum = 0.0;
    for (std::size_t k = 0; k < channels.size(); ++k) {
      const double x = kSignalBound * (2.0 * rng.uniform_open() - 1.0);
      ideal_sum += x;
      received += channels.gains()[k] * policy.tx_scales[k] * x;
    }
    received += noise_std * rng.gaussian();
    const double error = policy.rx_scale * received - ideal_sum;
    total += error * error;
  }
  return total / static_cast<double>(num_samples);
}

}  // namespace aircomp
