#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "aircomp/policies.hpp"
#include "aircomp/types.hpp"

namespace aircomp {

/// A candidate tuple (MSE_1, ..., MSE_K) of per-sensor estimation MSEs.
using MseTuple = std::vector<double>;

// Absolute tolerance for boundary membership; the region quantities are O(1)
// after normalization.
inline constexpr double kBoundaryTol = 1e-9;

namespace detail {

inline void check_region_instance(const SystemParams& params,
                                  const ChannelState& channels,
                                  const MseTuple& tuple) {
  check_dimensions(params, channels);
  if (!(params.noise_power > 0.0))
    throw unsupported_error(
        "MSE region analysis requires sigma^2 > 0 (degenerate otherwise)");
  if (tuple.size() != channels.size())
    throw std::invalid_argument("MSE tuple length does not match K");
}

// Slack of the inner-boundary constraint for sensor k:
//   MSE_k + (P h_k^2 / sigma^2) (sum_j MSE_j - (K - 1)) - 1.
inline double inner_boundary_slack(const SystemParams& params,
                                   const ChannelState& channels,
                                   const MseTuple& tuple, double tuple_sum,
                                   std::size_t k) {
  const double h = channels.gains()[k];
  const double excess = tuple_sum - (static_cast<double>(tuple.size()) - 1.0);
  return tuple[k] +
         params.peak_power * h * h / params.noise_power * excess - 1.0;
}

}  // namespace detail

/// Squared Tx scales reconstructed from an MSE tuple:
///   b_k^2 = (sigma^2 / h_k^2) (1 - MSE_k) / (sum_j MSE_j - (K - 1)).
inline std::vector<double> reconstruct_tx_power(const SystemParams& params,
                                                const ChannelState& channels,
                                                const MseTuple& tuple) {
  detail::check_region_instance(params, channels, tuple);
  double sum = 0.0;
  for (double value : tuple) sum += value;
  const double excess = sum - (static_cast<double>(tuple.size()) - 1.0);
  if (!(excess > 0.0))
    throw std::invalid_argument(
        "tuple sum must exceed K - 1 to reconstruct Tx powers");
  std::vector<double> tx_power;
  tx_power.reserve(tuple.size());
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    const double h = channels.gains()[k];
    tx_power.push_back(params.noise_power / (h * h) * (1.0 - tuple[k]) /
                       excess);
  }
  return tx_power;
}

/// Membership test for the achievable MSE region: every inner-boundary
/// constraint holds, every component is at most 1, the tuple sum exceeds
/// K - 1 and the reconstructed Tx powers stay within the peak constraint.
inline bool is_achievable(const SystemParams& params,
                          const ChannelState& channels,
                          const MseTuple& tuple) {
  detail::check_region_instance(params, channels, tuple);
  double sum = 0.0;
  for (double value : tuple) {
    if (value > 1.0 + kBoundaryTol) return false;
    sum += value;
  }
  const double excess = sum - (static_cast<double>(tuple.size()) - 1.0);
  if (!(excess > 0.0)) return false;
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    if (detail::inner_boundary_slack(params, channels, tuple, sum, k) <
        -kBoundaryTol)
      return false;
  }
  // Same condition expressed through the reconstructed Tx powers.
  const auto tx_power = reconstruct_tx_power(params, channels, tuple);
  for (double b2 : tx_power) {
    if (b2 > params.peak_power * (1.0 + kBoundaryTol) + kBoundaryTol)
      return false;
  }
  return true;
}

/// Indices (0-based, sorted-channel order) whose inner-boundary constraint
/// holds with equality; the tuple lies on the Pareto front iff the returned
/// set is nonempty.
inline std::vector<std::size_t> pareto_membership(const SystemParams& params,
                                                  const ChannelState& channels,
                                                  const MseTuple& tuple) {
  detail::check_region_instance(params, channels, tuple);
  double sum = 0.0;
  for (double value : tuple) sum += value;
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    if (std::abs(detail::inner_boundary_slack(params, channels, tuple, sum,
                                              k)) <= kBoundaryTol)
      active.push_back(k);
  }
  return active;
}

struct BoundaryPoint {
  MseTuple tuple;
  std::string segment;  // "inner1" | "inner2" | "outer"
};

/// Samples the boundary of the two-sensor region for plotting: inner piece k
/// fixes b_k = sqrt(P) and sweeps the other Tx scale, the outer pieces fix
/// one sensor silent. Every emitted tuple is achievable by construction.
inline std::vector<BoundaryPoint> boundary_trace(const SystemParams& params,
                                                 const ChannelState& channels,
                                                 std::size_t grid_points) {
  detail::check_dimensions(params, channels);
  if (channels.size() != 2)
    throw unsupported_error("boundary_trace is defined for K = 2 only");
  if (!(params.noise_power > 0.0))
    throw unsupported_error(
        "MSE region analysis requires sigma^2 > 0 (degenerate otherwise)");
  if (grid_points < 2)
    throw std::invalid_argument("grid_points must be >= 2");

  const double cap = std::sqrt(params.peak_power);
  std::vector<BoundaryPoint> points;
  points.reserve(4 * grid_points);
  const auto emit = [&](double b1, double b2, const char* segment) {
    points.push_back(
        {mac_mse_tuple(params, channels, {b1, b2}), segment});
  };
  for (std::size_t j = 0; j < grid_points; ++j) {
    const double t =
        cap * static_cast<double>(j) / static_cast<double>(grid_points - 1);
    emit(cap, t, "inner1");
    emit(t, cap, "inner2");
    emit(0.0, t, "outer");
    emit(t, 0.0, "outer");
  }
  return points;
}

}  // namespace aircomp
