#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "aircomp/model.hpp"
#include "aircomp/policies.hpp"
#include "aircomp/rng.hpp"
#include "aircomp/types.hpp"

namespace aircomp {

using ComplexVector = std::vector<std::complex<double>>;

/// Channel vectors of K single-antenna sensors seen by an N-antenna
/// receiver; per_sensor[k] has one complex coefficient per antenna.
struct MultiAntennaChannel {
  std::size_t antennas = 0;
  std::vector<ComplexVector> per_sensor;

  std::size_t sensors() const { return per_sensor.size(); }

  /// Draws i.i.d. unit-variance complex Gaussian coefficients, the
  /// multi-antenna counterpart of Rayleigh magnitude fading.
  static MultiAntennaChannel sample(std::size_t sensors, std::size_t antennas,
                                    std::uint64_t seed,
                                    std::uint64_t trial_index) {
    MultiAntennaChannel channel;
    channel.antennas = antennas;
    channel.per_sensor.resize(sensors);
    CounterRng rng(seed, trial_index);
    constexpr double kComponentStd = 0.70710678118654752;  // 1/sqrt(2)
    for (auto& column : channel.per_sensor) {
      column.reserve(antennas);
      for (std::size_t n = 0; n < antennas; ++n)
        column.emplace_back(kComponentStd * rng.gaussian(),
                            kComponentStd * rng.gaussian());
    }
    return channel;
  }
};

inline void validate(const MultiAntennaChannel& channel) {
  if (channel.antennas < 1)
    throw std::invalid_argument("MultiAntennaChannel: need >= 1 antenna");
  if (channel.per_sensor.empty())
    throw std::invalid_argument("MultiAntennaChannel: need >= 1 sensor");
  for (const auto& column : channel.per_sensor) {
    if (column.size() != channel.antennas)
      throw std::invalid_argument(
          "MultiAntennaChannel: inconsistent antenna count");
    bool all_zero = true;
    for (const auto& coeff : column)
      if (coeff != std::complex<double>(0.0, 0.0)) all_zero = false;
    if (all_zero)
      throw std::invalid_argument(
          "MultiAntennaChannel: all-zero channel vector");
  }
}

/// A unit vector factoring the Rx-scaling vector as a = |a| v.
struct Direction {
  ComplexVector v;

  static Direction basis(std::size_t antennas, std::size_t index) {
    Direction direction;
    direction.v.assign(antennas, {0.0, 0.0});
    direction.v.at(index) = {1.0, 0.0};
    return direction;
  }

  /// Uniform on the complex unit sphere: 2N independent standard Gaussians
  /// (real and imaginary parts) normalized to unit length.
  static Direction random(std::size_t antennas, CounterRng& rng) {
    Direction direction;
    direction.v.reserve(antennas);
    double norm_sq = 0.0;
    for (std::size_t n = 0; n < antennas; ++n) {
      const std::complex<double> component(rng.gaussian(), rng.gaussian());
      norm_sq += std::norm(component);
      direction.v.push_back(component);
    }
    const double norm = std::sqrt(norm_sq);
    for (auto& component : direction.v) component /= norm;
    return direction;
  }
};

inline void validate(const Direction& direction) {
  double norm_sq = 0.0;
  for (const auto& component : direction.v) norm_sq += std::norm(component);
  if (std::abs(std::sqrt(norm_sq) - 1.0) > 1e-12)
    throw std::invalid_argument("Direction: vector is not unit norm");
}

/// Effective single-antenna channel magnitudes |v^T h_k| for a fixed
/// direction. The single-antenna solver applied to this state is exact for
/// that direction.
inline ChannelState effective_channels(const MultiAntennaChannel& channel,
                                       const Direction& direction) {
  validate(channel);
  validate(direction);
  if (direction.v.size() != channel.antennas)
    throw std::invalid_argument("direction dimension does not match antennas");
  std::vector<double> gains;
  gains.reserve(channel.sensors());
  for (const auto& column : channel.per_sensor) {
    std::complex<double> dot(0.0, 0.0);
    for (std::size_t n = 0; n < channel.antennas; ++n)
      dot += direction.v[n] * column[n];
    const double magnitude = std::abs(dot);
    if (!(magnitude > 0.0))
      throw std::invalid_argument(
          "degenerate direction: zero effective channel");
    gains.push_back(magnitude);
  }
  return ChannelState::from_gains(std::move(gains));
}

/// Computation MSE in the complex form:
///   sum_k |a^T h_k b_k - 1|^2 + sigma^2 ||a||^2.
inline double complex_mse(const SystemParams& params,
                          const MultiAntennaChannel& channel,
                          const ComplexVector& rx_vector,
                          const ComplexVector& tx_scales) {
  validate(params);
  validate(channel);
  if (channel.sensors() != params.sensor_count)
    throw std::invalid_argument("sensor count mismatch");
  if (rx_vector.size() != channel.antennas ||
      tx_scales.size() != channel.sensors())
    throw std::invalid_argument("dimension mismatch");
  double rx_norm_sq = 0.0;
  for (const auto& component : rx_vector) rx_norm_sq += std::norm(component);
  double mse = params.noise_power * rx_norm_sq;
  for (std::size_t k = 0; k < channel.sensors(); ++k) {
    std::complex<double> dot(0.0, 0.0);
    for (std::size_t n = 0; n < channel.antennas; ++n)
      dot += rx_vector[n] * channel.per_sensor[k][n];
    mse += std::norm(dot * tx_scales[k] - 1.0);
  }
  return mse;
}

/// Result of a direction search. Tx magnitudes are in original sensor order;
/// phases are recovered by expand_policy.
struct DirectionPolicy {
  Direction direction;
  double rx_magnitude = 0.0;
  std::vector<double> tx_magnitudes;
  double mse = 0.0;
  std::size_t critical_number = 0;
  // Antenna index for selection results, npos for random directions.
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
  std::size_t antenna = npos;
};

/// Solves the fixed-direction problem through the single-antenna reduction.
inline DirectionPolicy solve_for_direction(const SystemParams& params,
                                           const MultiAntennaChannel& channel,
                                           const Direction& direction) {
  const ChannelState effective = effective_channels(channel, direction);
  const TxRxPolicy policy = computation_optimal(params, effective);
  DirectionPolicy result;
  result.direction = direction;
  result.rx_magnitude = policy.rx_scale;
  result.tx_magnitudes = effective.to_original_order(policy.tx_scales);
  result.mse = compute_mse(params, effective, policy);
  result.critical_number = interval_of(params, effective, policy.rx_scale);
  return result;
}

/// Complex Rx vector and phase-compensated Tx scales realizing a
/// DirectionPolicy, so that a^T h_k b_k is real and non-negative. Evaluating
/// complex_mse on the expansion reproduces the reduced MSE.
inline std::pair<ComplexVector, ComplexVector> expand_policy(
    const MultiAntennaChannel& channel, const DirectionPolicy& solution) {
  ComplexVector rx_vector;
  rx_vector.reserve(solution.direction.v.size());
  for (const auto& component : solution.direction.v)
    rx_vector.push_back(solution.rx_magnitude * component);
  ComplexVector tx_scales;
  tx_scales.reserve(channel.sensors());
  for (std::size_t k = 0; k < channel.sensors(); ++k) {
    std::complex<double> dot(0.0, 0.0);
    for (std::size_t n = 0; n < channel.antennas; ++n)
      dot += solution.direction.v[n] * channel.per_sensor[k][n];
    const double phase = std::arg(dot);
    tx_scales.push_back(solution.tx_magnitudes[k] *
                        std::exp(std::complex<double>(0.0, -phase)));
  }
  return {std::move(rx_vector), std::move(tx_scales)};
}

/// Picks the receive antenna whose single-antenna optimum has the smallest
/// MSE; ties resolve to the smallest index. Antennas that are degenerate for
/// some sensor (zero coefficient) are skipped.
inline DirectionPolicy antenna_selection(const SystemParams& params,
                                         const MultiAntennaChannel& channel) {
  validate(channel);
  DirectionPolicy best;
  best.mse = std::numeric_limits<double>::infinity();
  bool found = false;
  for (std::size_t n = 0; n < channel.antennas; ++n) {
    DirectionPolicy candidate;
    try {
      candidate =
          solve_for_direction(params, channel, Direction::basis(channel.antennas, n));
    } catch (const std::invalid_argument&) {
      continue;  // zero coefficient on this antenna
    }
    candidate.antenna = n;
    if (!found || candidate.mse < best.mse) {
      best = candidate;
      found = true;
    }
  }
  if (!found)
    throw std::invalid_argument(
        "antenna_selection: every antenna is degenerate");
  return best;
}

/// Best of `trials` directions drawn uniformly on the complex unit sphere;
/// the t-th trial depends only on (seed, t), so the best MSE is
/// non-increasing in the trial count for a fixed seed. With include_basis
/// the standard basis vectors join the candidate set.
inline DirectionPolicy random_direction_search(
    const SystemParams& params, const MultiAntennaChannel& channel,
    std::size_t trials, std::uint64_t seed, bool include_basis = false) {
  validate(channel);
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  DirectionPolicy best;
  best.mse = std::numeric_limits<double>::infinity();
  bool found = false;
  if (include_basis) {
    try {
      best = antenna_selection(params, channel);
      found = true;
    } catch (const std::invalid_argument&) {
    }
  }
  for (std::size_t t = 0; t < trials; ++t) {
    CounterRng rng(seed, t);
    const Direction direction = Direction::random(channel.antennas, rng);
    const DirectionPolicy candidate =
        solve_for_direction(params, channel, direction);
    if (!found || candidate.mse < best.mse) {
      best = candidate;
      found = true;
    }
  }
  return best;
}

}  // namespace aircomp
