#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "aircomp/model.hpp"
#include "aircomp/types.hpp"

namespace aircomp {

// Relative offset used to realize the open-boundary operator (u)+ when the
// unconstrained minimizer falls below its interval. The branch is never
// selected at the optimal critical number, so the offset only affects
// diagnostic evaluation of suboptimal intervals.
inline constexpr double kOpenBoundaryEps = 0x1.0p-40;

/// Per-sensor Tx scales that minimize the MSE for a fixed Rx-scaling factor:
/// the separable clamp b_k = min(sqrt(P), 1/(a h_k)). Sensors up to the
/// critical number of `a` transmit at peak power, the rest invert their
/// channel exactly. For a = 0 every b_k is irrelevant; peak power is returned
/// by convention.
inline TxRxPolicy optimal_b_given_a(const SystemParams& params,
                                    const ChannelState& channels, double a) {
  detail::check_dimensions(params, channels);
  if (!(a >= 0.0)) throw std::invalid_argument("rx scale must be >= 0");
  const double cap = std::sqrt(params.peak_power);
  TxRxPolicy policy;
  policy.rx_scale = a;
  policy.tx_scales.reserve(channels.size());
  for (double h : channels.gains()) {
    const double inversion = a > 0.0
                                 ? 1.0 / (a * h)
                                 : std::numeric_limits<double>::infinity();
    policy.tx_scales.push_back(std::min(cap, inversion));
  }
  return policy;
}

/// The sequence g_i = sqrt(P) sum_{k<=i} h_k / (sigma^2 + P sum_{k<=i} h_k^2)
/// for i = 1..K: the unconstrained per-interval minimizer of the MSE.
/// Unimodal in i; its argmax identifies the optimal critical number.
inline std::vector<double> g_sequence(const SystemParams& params,
                                      const ChannelState& channels) {
  detail::check_dimensions(params, channels);
  const double root_power = std::sqrt(params.peak_power);
  std::vector<double> g;
  g.reserve(channels.size());
  double sum_h = 0.0;
  double sum_h2 = 0.0;
  for (double h : channels.gains()) {
    sum_h += h;
    sum_h2 += h * h;
    g.push_back(root_power * sum_h /
                (params.noise_power + params.peak_power * sum_h2));
  }
  return g;
}

struct ClampResult {
  double rx_scale = 0.0;
  // True when the unconstrained minimizer fell below the interval and the
  // open left boundary had to be approached from the right.
  bool boundary_degenerate = false;
};

/// Restricts the unconstrained minimizer g_i to the interval S_i,
/// i in 1..K: returns g_i if it lies inside, the right endpoint
/// 1/(h_i sqrt(P)) if g_i is above, and the open left endpoint approached
/// from the right if g_i is below.
inline ClampResult clamp_a(const SystemParams& params,
                           const ChannelState& channels, std::size_t interval,
                           double g_value) {
  detail::check_dimensions(params, channels);
  if (interval < 1 || interval > channels.size())
    throw std::invalid_argument("interval index must be in 1..K");
  const double root_power = std::sqrt(params.peak_power);
  const auto& h = channels.gains();
  const double upper = 1.0 / (h[interval - 1] * root_power);
  const double lower =
      interval < channels.size() ? 1.0 / (h[interval] * root_power) : 0.0;
  if (g_value > upper) return {upper, false};
  if (g_value <= lower) return {lower * (1.0 + kOpenBoundaryEps), true};
  return {g_value, false};
}

struct IntervalMse {
  double rx_scale = 0.0;
  double mse = 0.0;
  bool boundary_degenerate = false;
};

/// Minimum MSE attainable with the Rx-scaling factor constrained to S_i,
/// i.e. sum_{k<=i} (a_i h_k sqrt(P) - 1)^2 + sigma^2 a_i^2 at the clamped a_i.
/// Diagnostic companion of the optimal-policy search; the sequence over i is
/// non-increasing then non-decreasing.
inline IntervalMse interval_constrained_mse(const SystemParams& params,
                                            const ChannelState& channels,
                                            std::size_t interval) {
  const auto g = g_sequence(params, channels);
  const ClampResult clamped =
      clamp_a(params, channels, interval, g[interval - 1]);
  const double a = clamped.rx_scale;
  const double root_power = std::sqrt(params.peak_power);
  double mse = params.noise_power * a * a;
  for (std::size_t k = 0; k < interval; ++k) {
    const double residual = a * channels.gains()[k] * root_power - 1.0;
    mse += residual * residual;
  }
  return {a, mse, clamped.boundary_degenerate};
}

/// Closed-form solution of the peak-power-constrained MSE minimization:
/// the critical number is the argmax of the g-sequence, the Rx-scaling
/// factor is the clamped g value and the Tx scales follow the switching
/// structure of optimal_b_given_a. Ties in the argmax are broken toward the
/// smallest index; if the clamped candidate is degenerate the remaining
/// maximizers are scanned and the smallest interval-constrained MSE wins.
inline TxRxPolicy computation_optimal(const SystemParams& params,
                                      const ChannelState& channels) {
  const auto g = g_sequence(params, channels);
  std::size_t best = 0;
  for (std::size_t i = 1; i < g.size(); ++i)
    if (g[i] > g[best]) best = i;

  const double root_power = std::sqrt(params.peak_power);
  const auto& h = channels.gains();
  const double upper = 1.0 / (h[best] * root_power);
  const double lower =
      best + 1 < channels.size() ? 1.0 / (h[best + 1] * root_power) : 0.0;
  double a_star = g[best];
  if (!(g[best] > lower && g[best] <= upper)) {
    // The smallest maximizer can fall outside its interval under exact ties;
    // evaluate every maximizer and keep the best clamped candidate. On equal
    // MSE a non-degenerate candidate wins: an open-boundary point is never
    // strictly better than the closed boundary of the adjacent interval.
    double best_mse = std::numeric_limits<double>::infinity();
    bool best_degenerate = true;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i] != g[best]) continue;
      const IntervalMse candidate =
          interval_constrained_mse(params, channels, i + 1);
      if (candidate.mse < best_mse ||
          (candidate.mse == best_mse && best_degenerate &&
           !candidate.boundary_degenerate)) {
        best_mse = candidate.mse;
        best_degenerate = candidate.boundary_degenerate;
        a_star = candidate.rx_scale;
      }
    }
  }
  return optimal_b_given_a(params, channels, a_star);
}

/// Benchmark: every sensor inverts its channel relative to the weakest one,
/// b_k = sqrt(P) h_1 / h_k with a = 1/(sqrt(P) h_1). Unbiased, with
/// instantaneous MSE sigma^2 / (P h_1^2).
inline TxRxPolicy channel_inversion(const SystemParams& params,
                                    const ChannelState& channels) {
  detail::check_dimensions(params, channels);
  const double root_power = std::sqrt(params.peak_power);
  const double h_min = channels.gains().front();
  TxRxPolicy policy;
  policy.rx_scale = 1.0 / (root_power * h_min);
  policy.tx_scales.reserve(channels.size());
  for (double h : channels.gains())
    policy.tx_scales.push_back(root_power * (h_min / h));
  return policy;
}

/// Benchmark: every sensor transmits at peak power and the Rx-scaling factor
/// is the unconstrained minimizer clamped into S_K,
/// a = min(1/(sqrt(P) h_K), g_K).
inline TxRxPolicy energy_greedy(const SystemParams& params,
                                const ChannelState& channels) {
  detail::check_dimensions(params, channels);
  const double root_power = std::sqrt(params.peak_power);
  const auto g = g_sequence(params, channels);
  TxRxPolicy policy;
  policy.rx_scale =
      std::min(1.0 / (root_power * channels.gains().back()), g.back());
  policy.tx_scales.assign(channels.size(), root_power);
  return policy;
}

/// Critical-number rule that depends on the instance only through K.
class IotaFunction {
 public:
  enum class Kind { Sqrt, Half, Constant, Custom };

  static IotaFunction sqrt() { return IotaFunction(Kind::Sqrt, 0); }
  static IotaFunction half() { return IotaFunction(Kind::Half, 0); }
  static IotaFunction constant(std::size_t n) {
    if (n < 1) throw std::invalid_argument("iota constant must be >= 1");
    return IotaFunction(Kind::Constant, n);
  }
  static IotaFunction custom(std::function<std::size_t(std::size_t)> fn) {
    IotaFunction iota(Kind::Custom, 0);
    iota.custom_ = std::move(fn);
    return iota;
  }

  /// Parses "sqrt" | "half" | "const:<n>".
  static IotaFunction parse(std::string_view text) {
    if (text == "sqrt") return sqrt();
    if (text == "half") return half();
    if (text.rfind("const:", 0) == 0) {
      const std::string digits(text.substr(6));
      std::size_t pos = 0;
      unsigned long value = 0;
      try {
        value = std::stoul(digits, &pos);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad iota spec: " + std::string(text));
      }
      if (pos != digits.size() || value < 1)
        throw std::invalid_argument("bad iota spec: " + std::string(text));
      return constant(value);
    }
    throw std::invalid_argument("bad iota spec: " + std::string(text));
  }

  std::size_t operator()(std::size_t sensors) const {
    std::size_t value = 0;
    switch (kind_) {
      case Kind::Sqrt:
        value = static_cast<std::size_t>(
            std::floor(std::sqrt(static_cast<double>(sensors))));
        value = std::max<std::size_t>(1, value);
        break;
      case Kind::Half:
        value = std::max<std::size_t>(1, sensors / 2);
        break;
      case Kind::Constant:
        value = constant_;
        break;
      case Kind::Custom:
        value = custom_(sensors);
        break;
    }
    if (value < 1 || value > sensors)
      throw std::invalid_argument("iota(K) out of range 1..K");
    return value;
  }

  Kind kind() const { return kind_; }

  std::string to_string() const {
    switch (kind_) {
      case Kind::Sqrt: return "sqrt";
      case Kind::Half: return "half";
      case Kind::Constant: return "const:" + std::to_string(constant_);
      case Kind::Custom: return "custom";
    }
    return "?";
  }

 private:
  IotaFunction(Kind kind, std::size_t constant)
      : kind_(kind), constant_(constant) {}
  Kind kind_;
  std::size_t constant_;
  std::function<std::size_t(std::size_t)> custom_;
};

/// First-iota policy: critical number i = iota(K), Rx-scaling factor at the
/// interval midpoint a = (1/h_{i+1} + 1/h_i) / (2 sqrt(P)) with
/// 1/h_{K+1} := 0, and Tx scales per the switching structure.
inline TxRxPolicy first_iota(const SystemParams& params,
                             const ChannelState& channels,
                             const IotaFunction& iota) {
  detail::check_dimensions(params, channels);
  const std::size_t i = iota(channels.size());
  const auto& h = channels.gains();
  const double inv_here = 1.0 / h[i - 1];
  const double inv_next = i < channels.size() ? 1.0 / h[i] : 0.0;
  const double a =
      (inv_here + inv_next) / (2.0 * std::sqrt(params.peak_power));
  return optimal_b_given_a(params, channels, a);
}

/// Tx-Rx scaling pairs of the MAC remote-estimation problem; rx_scales[k] is
/// the per-sensor MMSE Rx factor for the stored Tx scales.
struct MacPolicy {
  std::vector<double> rx_scales;
  std::vector<double> tx_scales;
};

/// Per-sensor estimation MSE for given Tx scales with the MMSE Rx factor
/// substituted: MSE_k = 1 - (h_k b_k)^2 / (sigma^2 + sum_j (h_j b_j)^2).
inline std::vector<double> mac_mse_tuple(const SystemParams& params,
                                         const ChannelState& channels,
                                         const std::vector<double>& tx_scales) {
  detail::check_dimensions(params, channels);
  if (tx_scales.size() != channels.size())
    throw std::invalid_argument("tx scale count does not match sensor_count");
  const double cap = std::sqrt(params.peak_power);
  for (double b : tx_scales) {
    if (!(b >= 0.0) || b > cap)
      throw constraint_error("MAC tx scale outside [0, sqrt(P)]");
  }
  double received_sum = 0.0;
  for (std::size_t k = 0; k < channels.size(); ++k) {
    const double hb = channels.gains()[k] * tx_scales[k];
    received_sum += hb * hb;
  }
  const double denom = params.noise_power + received_sum;
  std::vector<double> mse(channels.size(), 1.0);
  if (denom > 0.0) {
    for (std::size_t k = 0; k < channels.size(); ++k) {
      const double hb = channels.gains()[k] * tx_scales[k];
      mse[k] = 1.0 - hb * hb / denom;
    }
  }
  return mse;
}

/// MMSE Rx-scaling factors for given Tx scales,
/// a_k = h_k b_k / (sigma^2 + sum_j (h_j b_j)^2).
inline std::vector<double> mac_rx_scales(const SystemParams& params,
                                         const ChannelState& channels,
                                         const std::vector<double>& tx_scales) {
  detail::check_dimensions(params, channels);
  if (tx_scales.size() != channels.size())
    throw std::invalid_argument("tx scale count does not match sensor_count");
  double received_sum = 0.0;
  for (std::size_t k = 0; k < channels.size(); ++k) {
    const double hb = channels.gains()[k] * tx_scales[k];
    received_sum += hb * hb;
  }
  const double denom = params.noise_power + received_sum;
  std::vector<double> rx(channels.size(), 0.0);
  if (denom > 0.0) {
    for (std::size_t k = 0; k < channels.size(); ++k)
      rx[k] = channels.gains()[k] * tx_scales[k] / denom;
  }
  return rx;
}

/// Minimizer of the sum of per-sensor estimation MSEs: every sensor at peak
/// power, b_k = sqrt(P), with the matching MMSE Rx factors.
inline MacPolicy mac_optimal(const SystemParams& params,
                             const ChannelState& channels) {
  detail::check_dimensions(params, channels);
  MacPolicy policy;
  policy.tx_scales.assign(channels.size(), std::sqrt(params.peak_power));
  policy.rx_scales = mac_rx_scales(params, channels, policy.tx_scales);
  return policy;
}

enum class PolicyKind { Optimal, Inversion, Greedy, FirstIota };

/// A policy selector as it appears on the command line: a kind tag plus the
/// iota rule used by first-iota policies.
struct PolicySpec {
  PolicyKind kind = PolicyKind::Optimal;
  IotaFunction iota = IotaFunction::sqrt();

  static PolicySpec parse(std::string_view tag,
                          std::string_view iota_spec = "sqrt") {
    PolicySpec spec;
    spec.iota = IotaFunction::parse(iota_spec);
    if (tag == "optimal") {
      spec.kind = PolicyKind::Optimal;
    } else if (tag == "inversion") {
      spec.kind = PolicyKind::Inversion;
    } else if (tag == "greedy") {
      spec.kind = PolicyKind::Greedy;
    } else if (tag == "first-iota") {
      spec.kind = PolicyKind::FirstIota;
    } else {
      throw std::invalid_argument("unknown policy tag: " + std::string(tag));
    }
    return spec;
  }

  std::string to_string() const {
    switch (kind) {
      case PolicyKind::Optimal: return "optimal";
      case PolicyKind::Inversion: return "inversion";
      case PolicyKind::Greedy: return "greedy";
      case PolicyKind::FirstIota: return "first-iota:" + iota.to_string();
    }
    return "?";
  }
};

inline TxRxPolicy make_policy(const SystemParams& params,
                              const ChannelState& channels,
                              const PolicySpec& spec) {
  switch (spec.kind) {
    case PolicyKind::Optimal: return computation_optimal(params, channels);
    case PolicyKind::Inversion: return channel_inversion(params, channels);
    case PolicyKind::Greedy: return energy_greedy(params, channels);
    case PolicyKind::FirstIota: return first_iota(params, channels, spec.iota);
  }
  throw std::invalid_argument("unknown policy kind");
}

}  // namespace aircomp
