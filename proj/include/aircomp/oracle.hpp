#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "aircomp/model.hpp"
#include "aircomp/rng.hpp"
#include "aircomp/types.hpp"

namespace aircomp {

/// Dense 1-D scan specification for the brute-force verifier. The default
/// a_max of 2/(h_1 sqrt(P)) covers every interval with a nonzero critical
/// number; a_min > 0 lets a second pass zoom into a bracket.
struct GridSpec {
  double a_max = 0.0;
  std::size_t resolution = 0;
  double a_min = 0.0;
};

inline GridSpec make_grid(const SystemParams& params,
                          const ChannelState& channels,
                          std::size_t resolution) {
  detail::check_dimensions(params, channels);
  return {2.0 / (channels.gains().front() * std::sqrt(params.peak_power)),
          resolution, 0.0};
}

struct AircompOracleResult {
  double rx_scale = 0.0;
  std::vector<double> tx_scales;
  double mse = 0.0;
};

namespace detail {

// For a fixed a the objective is separable: each b_k minimizes a scalar
// quadratic (a h_k b - 1)^2 over [0, sqrt(P)], so the clamp 1/(a h_k)
// capped at sqrt(P) is exact. This argument is elementary calculus and
// independent of the interval machinery it is used to verify.
inline double scan_mse(const SystemParams& params,
                       const ChannelState& channels, double a) {
  const double cap = std::sqrt(params.peak_power);
  double mse = params.noise_power * a * a;
  for (double h : channels.gains()) {
    const double b = std::min(cap, 1.0 / (a * h));
    const double residual = a * h * b - 1.0;
    mse += residual * residual;
  }
  return mse;
}

}  // namespace detail

/// Brute-force minimizer of the computation MSE by a dense grid over the
/// Rx-scaling factor; ties resolve to the smallest a.
inline AircompOracleResult oracle_aircomp(const SystemParams& params,
                                          const ChannelState& channels,
                                          const GridSpec& grid) {
  detail::check_dimensions(params, channels);
  if (grid.resolution < 2)
    throw std::invalid_argument("grid resolution must be >= 2");
  if (!(grid.a_max > grid.a_min) || !(grid.a_min >= 0.0))
    throw std::invalid_argument("grid bounds must satisfy 0 <= a_min < a_max");
  double best_a = 0.0;
  double best_mse = std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(grid.resolution);
  for (std::size_t j = 1; j <= grid.resolution; ++j) {
    const double a =
        grid.a_min + (grid.a_max - grid.a_min) * static_cast<double>(j) / n;
    const double mse = detail::scan_mse(params, channels, a);
    if (mse < best_mse) {
      best_mse = mse;
      best_a = a;
    }
  }
  AircompOracleResult result;
  result.rx_scale = best_a;
  result.mse = best_mse;
  const double cap = std::sqrt(params.peak_power);
  result.tx_scales.reserve(channels.size());
  for (double h : channels.gains())
    result.tx_scales.push_back(std::min(cap, 1.0 / (best_a * h)));
  return result;
}

/// Two-stage refinement: a coarse scan followed by a zoom around the coarse
/// argmin. The objective is convex in a, so the coarse argmin's neighbors
/// bracket the true minimizer.
inline AircompOracleResult oracle_aircomp_refined(const SystemParams& params,
                                                  const ChannelState& channels,
                                                  std::size_t coarse_resolution,
                                                  std::size_t fine_resolution) {
  const GridSpec coarse = make_grid(params, channels, coarse_resolution);
  const AircompOracleResult stage1 = oracle_aircomp(params, channels, coarse);
  const double step = coarse.a_max / static_cast<double>(coarse_resolution);
  GridSpec fine;
  fine.a_min = std::max(0.0, stage1.rx_scale - 2.0 * step);
  fine.a_max = stage1.rx_scale + 2.0 * step;
  fine.resolution = fine_resolution;
  const AircompOracleResult stage2 = oracle_aircomp(params, channels, fine);
  return stage2.mse < stage1.mse ? stage2 : stage1;
}

struct MacOracleResult {
  std::vector<double> tx_scales;
  double sum_mse = 0.0;
};

/// Exhaustive grid over the MAC Tx scales in [0, sqrt(P)]^K with the MMSE Rx
/// factor substituted per sensor; exponential in K, supported for K <= 3.
inline MacOracleResult oracle_mac(const SystemParams& params,
                                  const ChannelState& channels,
                                  std::size_t resolution) {
  detail::check_dimensions(params, channels);
  if (channels.size() > 3)
    throw unsupported_error("oracle_mac supports K <= 3 only");
  if (resolution < 2)
    throw std::invalid_argument("grid resolution must be >= 2");
  const double cap = std::sqrt(params.peak_power);
  const std::size_t k = channels.size();
  std::vector<std::size_t> index(k, 0);
  std::vector<double> tx(k, 0.0);
  MacOracleResult best;
  best.sum_mse = std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(resolution);
  while (true) {
    double received_sum = 0.0;
    for (std::size_t dim = 0; dim < k; ++dim) {
      tx[dim] = cap * static_cast<double>(index[dim]) / n;
      const double hb = channels.gains()[dim] * tx[dim];
      received_sum += hb * hb;
    }
    const double denom = params.noise_power + received_sum;
    double sum_mse = static_cast<double>(k);
    if (denom > 0.0) sum_mse -= received_sum / denom;
    if (sum_mse < best.sum_mse) {
      best.sum_mse = sum_mse;
      best.tx_scales = tx;
    }
    std::size_t dim = 0;
    while (dim < k && ++index[dim] > resolution) {
      index[dim] = 0;
      ++dim;
    }
    if (dim == k) break;
  }
  return best;
}

struct RandomInstance {
  SystemParams params;
  ChannelState channels = ChannelState::from_gains({1.0});
};

/// Reproducible randomized problem instances for oracle comparisons:
/// K uniform on {1..max_sensors}, peak power log-uniform on [0.1, 100],
/// noise power log-uniform on [0.01, 10], Rayleigh channel magnitudes.
/// Instance (seed, index) is always the same instance.
inline RandomInstance random_instance(std::uint64_t seed, std::uint64_t index,
                                      std::size_t max_sensors) {
  CounterRng rng(seed, index);
  RandomInstance instance;
  instance.params.sensor_count = 1 + rng.below(max_sensors);
  instance.params.peak_power = std::pow(10.0, rng.uniform(-1.0, 2.0));
  instance.params.noise_power = std::pow(10.0, rng.uniform(-2.0, 1.0));
  std::vector<double> gains;
  gains.reserve(instance.params.sensor_count);
  for (std::size_t k = 0; k < instance.params.sensor_count; ++k)
    gains.push_back(std::sqrt(rng.exponential()));
  instance.channels = ChannelState::from_gains(std::move(gains));
  return instance;
}

}  // namespace aircomp
