#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "aircomp/multiantenna.hpp"
#include "aircomp/oracle.hpp"

using namespace aircomp;

TEST_CASE("effective channels reduce to the single-antenna state") {
  SUBCASE("N = 1 recovers the magnitudes") {
    MultiAntennaChannel channel;
    channel.antennas = 1;
    channel.per_sensor = {{{0.0, 2.0}}, {{-1.0, 0.0}}};
    const auto state = effective_channels(channel, Direction::basis(1, 0));
    CHECK(state.gains() == std::vector<double>{1.0, 2.0});
  }
  SUBCASE("basis directions select per-antenna magnitudes") {
    MultiAntennaChannel channel;
    channel.antennas = 2;
    channel.per_sensor = {{{3.0, 0.0}, {0.0, 1.0}},
                          {{0.0, -2.0}, {4.0, 0.0}}};
    const auto first = effective_channels(channel, Direction::basis(2, 0));
    CHECK(first.gains() == std::vector<double>{2.0, 3.0});
    const auto second = effective_channels(channel, Direction::basis(2, 1));
    CHECK(second.gains() == std::vector<double>{1.0, 4.0});
  }
  SUBCASE("degenerate direction is rejected") {
    MultiAntennaChannel channel;
    channel.antennas = 2;
    channel.per_sensor = {{{1.0, 0.0}, {0.0, 0.0}}};
    CHECK_THROWS_AS(effective_channels(channel, Direction::basis(2, 1)),
                    std::invalid_argument);
  }
  SUBCASE("dimension and norm validation") {
    MultiAntennaChannel channel;
    channel.antennas = 2;
    channel.per_sensor = {{{1.0, 0.0}, {1.0, 0.0}}};
    CHECK_THROWS_AS(effective_channels(channel, Direction::basis(3, 0)),
                    std::invalid_argument);
    Direction stretched;
    stretched.v = {{2.0, 0.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(effective_channels(channel, stretched),
                    std::invalid_argument);
    MultiAntennaChannel zero_column;
    zero_column.antennas = 1;
    zero_column.per_sensor = {{{0.0, 0.0}}};
    CHECK_THROWS_AS(validate(zero_column), std::invalid_argument);
  }
}

TEST_CASE("fixed-direction solve matches a 1-D oracle on effective gains") {
  for (std::uint64_t idx = 0; idx < 30; ++idx) {
    const auto channel = MultiAntennaChannel::sample(2, 2, 161, idx);
    const SystemParams params{2, 1.0 + static_cast<double>(idx % 4), 1.0};
    CounterRng rng(162, idx);
    const Direction direction = Direction::random(2, rng);
    const auto solution = solve_for_direction(params, channel, direction);
    const auto effective = effective_channels(channel, direction);
    const auto oracle = oracle_aircomp_refined(params, effective, 3000, 3000);
    CHECK(solution.mse <= oracle.mse + 1e-9 * (1.0 + oracle.mse));
    CHECK(oracle.mse <= solution.mse * (1.0 + 1e-5) + 1e-9);
  }
}

TEST_CASE("reduction exactness: complex MSE equals the reduced MSE") {
  for (std::uint64_t idx = 0; idx < 60; ++idx) {
    CounterRng pick(171, idx);
    const std::size_t sensors = 1 + pick.below(10);
    const std::size_t antennas = 1 + pick.below(8);
    const auto channel =
        MultiAntennaChannel::sample(sensors, antennas, 172, idx);
    const SystemParams params{sensors, 2.0, 0.5};
    CounterRng rng(173, idx);
    const Direction direction = Direction::random(antennas, rng);
    const auto solution = solve_for_direction(params, channel, direction);
    const auto [rx_vector, tx_scales] = expand_policy(channel, solution);
    const double full = complex_mse(params, channel, rx_vector, tx_scales);
    REQUIRE(std::abs(full - solution.mse) <=
            1e-10 * std::max(1.0, std::abs(solution.mse)));
  }
}

TEST_CASE("phase rotation of the direction changes nothing") {
  const auto channel = MultiAntennaChannel::sample(4, 3, 181, 0);
  const SystemParams params{4, 1.0, 1.0};
  CounterRng rng(182, 0);
  Direction direction = Direction::random(3, rng);
  const auto base = solve_for_direction(params, channel, direction);
  const std::complex<double> phase = std::polar(1.0, 1.234);
  Direction rotated = direction;
  for (auto& component : rotated.v) component *= phase;
  const auto turned = solve_for_direction(params, channel, rotated);
  CHECK(turned.mse == doctest::Approx(base.mse).epsilon(1e-12));
  const auto base_state = effective_channels(channel, direction);
  const auto turned_state = effective_channels(channel, rotated);
  for (std::size_t k = 0; k < base_state.size(); ++k)
    CHECK(turned_state.gains()[k] ==
          doctest::Approx(base_state.gains()[k]).epsilon(1e-12));
}

TEST_CASE("antenna selection scans the basis directions") {
  SUBCASE("N = 1 is the single-antenna optimum") {
    const auto channel = MultiAntennaChannel::sample(5, 1, 191, 0);
    const SystemParams params{5, 1.0, 1.0};
    const auto selected = antenna_selection(params, channel);
    CHECK(selected.antenna == 0);
    const auto state = effective_channels(channel, Direction::basis(1, 0));
    const auto direct = computation_optimal(params, state);
    CHECK(selected.mse ==
          doctest::Approx(compute_mse(params, state, direct)).epsilon(1e-12));
  }
  SUBCASE("duplicate antennas tie to the smallest index") {
    MultiAntennaChannel channel;
    channel.antennas = 3;
    channel.per_sensor = {{{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}},
                          {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}}};
    const SystemParams params{2, 1.0, 1.0};
    CHECK(antenna_selection(params, channel).antenna == 0);
  }
  SUBCASE("selection dominates every individual antenna") {
    for (std::uint64_t idx = 0; idx < 20; ++idx) {
      const auto channel = MultiAntennaChannel::sample(3, 2, 201, idx);
      const SystemParams params{3, 1.0, 1.0};
      const auto selected = antenna_selection(params, channel);
      for (std::size_t n = 0; n < 2; ++n) {
        const auto solo = solve_for_direction(params, channel,
                                              Direction::basis(2, n));
        REQUIRE(selected.mse <= solo.mse + 1e-12);
      }
    }
  }
}

TEST_CASE("random direction search improves monotonically in trials") {
  const auto channel = MultiAntennaChannel::sample(6, 4, 211, 0);
  const SystemParams params{6, 10.0, 1.0};
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t trials : {1u, 4u, 16u, 64u}) {
    const auto best = random_direction_search(params, channel, trials, 212);
    CHECK(best.mse <= previous + 1e-15);
    previous = best.mse;
  }
  SUBCASE("including the basis dominates antenna selection") {
    const auto with_basis =
        random_direction_search(params, channel, 8, 212, true);
    const auto selected = antenna_selection(params, channel);
    CHECK(with_basis.mse <= selected.mse + 1e-15);
  }
  SUBCASE("N = 1 directions are all equivalent up to phase") {
    const auto single = MultiAntennaChannel::sample(4, 1, 221, 0);
    const SystemParams single_params{4, 1.0, 1.0};
    const auto searched =
        random_direction_search(single_params, single, 5, 222);
    const auto selected = antenna_selection(single_params, single);
    CHECK(searched.mse == doctest::Approx(selected.mse).epsilon(1e-10));
  }
}
