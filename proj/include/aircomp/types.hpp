#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace aircomp {

/// Thrown when a policy or MSE tuple violates a feasibility constraint
/// (e.g. a Tx scale outside [0, sqrt(P)]).
struct constraint_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when an operation is not defined for the given instance
/// (e.g. region tracing with K != 2, MAC grid search with K > 3).
struct unsupported_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Problem-instance scalars: sensor count K, per-sensor peak power P
/// (already normalized by the signal bound) and receiver noise power.
struct SystemParams {
  std::size_t sensor_count = 0;
  double peak_power = 0.0;   // P > 0
  double noise_power = 0.0;  // sigma^2 >= 0
};

inline void validate(const SystemParams& params) {
  if (params.sensor_count < 1)
    throw std::invalid_argument("SystemParams: sensor_count must be >= 1");
  if (!(params.peak_power > 0.0))
    throw std::invalid_argument("SystemParams: peak_power must be > 0");
  if (!(params.noise_power >= 0.0))
    throw std::invalid_argument("SystemParams: noise_power must be >= 0");
}

/// Channel magnitudes stored in non-decreasing order together with the
/// permutation back to the original sensor indices. All closed-form policy
/// math assumes this ordering.
class ChannelState {
 public:
  /// Builds a state from gains in arbitrary order. Rejects non-positive
  /// and non-finite values; ties are allowed.
  static ChannelState from_gains(std::vector<double> gains) {
    if (gains.empty())
      throw std::invalid_argument("ChannelState: need at least one gain");
    for (double g : gains) {
      if (!(g > 0.0) || !std::isfinite(g))
        throw std::invalid_argument(
            "ChannelState: gains must be positive and finite");
    }
    std::vector<std::size_t> order(gains.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return gains[a] < gains[b];
                     });
    ChannelState state;
    state.gains_.reserve(gains.size());
    for (std::size_t idx : order) state.gains_.push_back(gains[idx]);
    state.permutation_ = std::move(order);
    return state;
  }

  std::size_t size() const { return gains_.size(); }

  /// Gains in non-decreasing order.
  const std::vector<double>& gains() const { return gains_; }

  /// permutation()[i] is the original index of the i-th smallest gain.
  const std::vector<std::size_t>& permutation() const { return permutation_; }

  /// Maps a vector indexed in sorted-channel order back to original
  /// sensor order.
  std::vector<double> to_original_order(
      const std::vector<double>& sorted_values) const {
    if (sorted_values.size() != gains_.size())
      throw std::invalid_argument("ChannelState: size mismatch");
    std::vector<double> original(sorted_values.size());
    for (std::size_t i = 0; i < sorted_values.size(); ++i)
      original[permutation_[i]] = sorted_values[i];
    return original;
  }

 private:
  ChannelState() = default;
  std::vector<double> gains_;
  std::vector<std::size_t> permutation_;
};

/// Rx-scaling factor a and per-sensor Tx-scaling factors b_k, the latter
/// indexed in sorted-channel order.
struct TxRxPolicy {
  double rx_scale = 0.0;
  std::vector<double> tx_scales;
};

struct PolicyMetrics {
  double mse = 0.0;
  double power = 0.0;
};

/// Checks 0 <= b_k <= sqrt(P) and a >= 0; throws constraint_error otherwise.
inline void validate(const SystemParams& params, const TxRxPolicy& policy) {
  if (!(policy.rx_scale >= 0.0))
    throw constraint_error("TxRxPolicy: rx_scale must be >= 0");
  const double cap = std::sqrt(params.peak_power);
  for (double b : policy.tx_scales) {
    if (!(b >= 0.0) || b > cap)
      throw constraint_error("TxRxPolicy: tx scale outside [0, sqrt(P)]");
  }
}

}  // namespace aircomp
