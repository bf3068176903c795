#include <doctest.h>

#include <cmath>
#include <vector>

#include "aircomp/mac_region.hpp"
#include "aircomp/oracle.hpp"
#include "aircomp/policies.hpp"
#include "test_support.hpp"

using namespace aircomp;

namespace {

const SystemParams kParams{2, 1.0, 1.0};

MseTuple random_feasible_tuple(const SystemParams& params,
                               const ChannelState& channels, CounterRng& rng) {
  const double cap = std::sqrt(params.peak_power);
  std::vector<double> tx;
  for (std::size_t k = 0; k < channels.size(); ++k)
    tx.push_back(cap * rng.uniform_open());
  return mac_mse_tuple(params, channels, tx);
}

}  // namespace

TEST_CASE("is_achievable recognizes the worked tuples") {
  const auto channels = ChannelState::from_gains({1.0, 2.0});
  CHECK(is_achievable(kParams, channels, {5.0 / 6.0, 1.0 / 3.0}));
  CHECK(is_achievable(kParams, channels, {1.0, 1.0}));
  CHECK_FALSE(is_achievable(kParams, channels, {0.0, 0.0}));
  CHECK_FALSE(is_achievable(kParams, channels, {1.2, 0.9}));

  CHECK_THROWS_AS(is_achievable(kParams, channels, {0.5}),
                  std::invalid_argument);
  const SystemParams quiet{2, 1.0, 0.0};
  CHECK_THROWS_AS(is_achievable(quiet, channels, {0.5, 0.5}),
                  unsupported_error);
}

TEST_CASE("pareto membership lists the active inner boundaries") {
  const auto channels = ChannelState::from_gains({1.0, 2.0});
  SUBCASE("the sum-of-MSE optimum touches every inner boundary") {
    const auto active =
        pareto_membership(kParams, channels, {5.0 / 6.0, 1.0 / 3.0});
    CHECK(active == std::vector<std::size_t>{0, 1});
  }
  SUBCASE("the all-silent corner is not on the front") {
    CHECK(pareto_membership(kParams, channels, {1.0, 1.0}).empty());
  }
  SUBCASE("only the peak-power sensor sits on its boundary") {
    const auto tuple = mac_mse_tuple(kParams, channels, {1.0, 0.5});
    REQUIRE(is_achievable(kParams, channels, tuple));
    CHECK(pareto_membership(kParams, channels, tuple) ==
          std::vector<std::size_t>{0});
  }
}

TEST_CASE("boundary trace covers the two-sensor region") {
  const auto channels = ChannelState::from_gains({1.0, 2.0});
  const auto points = boundary_trace(kParams, channels, 50);
  REQUIRE(points.size() == 200);
  bool corner_seen = false;
  for (const auto& point : points) {
    REQUIRE(is_achievable(kParams, channels, point.tuple));
    if (point.tuple[0] == 1.0 && point.tuple[1] == 1.0) corner_seen = true;
  }
  CHECK(corner_seen);

  // the sum-of-MSE optimum is the shared endpoint of the inner pieces
  const auto mac = mac_optimal(kParams, channels);
  const auto optimum = mac_mse_tuple(kParams, channels, mac.tx_scales);
  bool optimum_on_inner1 = false;
  bool optimum_on_inner2 = false;
  for (const auto& point : points) {
    const bool same = std::abs(point.tuple[0] - optimum[0]) < 1e-12 &&
                      std::abs(point.tuple[1] - optimum[1]) < 1e-12;
    if (same && point.segment == "inner1") optimum_on_inner1 = true;
    if (same && point.segment == "inner2") optimum_on_inner2 = true;
  }
  CHECK(optimum_on_inner1);
  CHECK(optimum_on_inner2);

  CHECK_THROWS_AS(
      boundary_trace(SystemParams{3, 1.0, 1.0},
                     ChannelState::from_gains({1.0, 2.0, 3.0}), 10),
      unsupported_error);
  CHECK_THROWS_AS(boundary_trace(kParams, channels, 1), std::invalid_argument);
}

TEST_CASE("region is convex: midpoints of achievable tuples are achievable") {
  for (std::uint64_t idx = 0; idx < 200; ++idx) {
    auto instance = random_instance(131, idx, 6);
    if (!(instance.params.noise_power > 0.0)) continue;
    CounterRng rng(132, idx);
    const auto first =
        random_feasible_tuple(instance.params, instance.channels, rng);
    const auto second =
        random_feasible_tuple(instance.params, instance.channels, rng);
    REQUIRE(is_achievable(instance.params, instance.channels, first));
    REQUIRE(is_achievable(instance.params, instance.channels, second));
    MseTuple midpoint(first.size());
    for (std::size_t k = 0; k < first.size(); ++k)
      midpoint[k] = 0.5 * (first[k] + second[k]);
    REQUIRE(is_achievable(instance.params, instance.channels, midpoint));
  }
}

TEST_CASE("tx powers round-trip through the tuple representation") {
  for (std::uint64_t idx = 0; idx < 200; ++idx) {
    auto instance = random_instance(141, idx, 6);
    if (!(instance.params.noise_power > 0.0)) continue;
    CounterRng rng(142, idx);
    const double cap = std::sqrt(instance.params.peak_power);
    std::vector<double> tx;
    for (std::size_t k = 0; k < instance.channels.size(); ++k)
      tx.push_back(cap * rng.uniform_open());
    const auto tuple = mac_mse_tuple(instance.params, instance.channels, tx);
    REQUIRE(is_achievable(instance.params, instance.channels, tuple));
    const auto tx_power =
        reconstruct_tx_power(instance.params, instance.channels, tuple);
    for (std::size_t k = 0; k < tx.size(); ++k) {
      const double expected = tx[k] * tx[k];
      REQUIRE(tx_power[k] ==
              doctest::Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("the AirComp optimum lands on the Pareto front of the MAC region") {
  for (std::uint64_t idx = 0; idx < 200; ++idx) {
    auto instance = random_instance(151, idx, 6);
    if (!(instance.params.noise_power > 0.0)) continue;
    const auto policy =
        computation_optimal(instance.params, instance.channels);
    const auto tuple = mac_mse_tuple(instance.params, instance.channels,
                                     policy.tx_scales);
    REQUIRE(is_achievable(instance.params, instance.channels, tuple));
    REQUIRE_FALSE(
        pareto_membership(instance.params, instance.channels, tuple).empty());
  }
}
