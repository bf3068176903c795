#include <doctest.h>

#include <cmath>
#include <vector>

#include "aircomp/montecarlo.hpp"

using namespace aircomp;

TEST_CASE("channel sampling is deterministic and unit-mean-square") {
  const auto once = sample_channels(8, 42, 7);
  const auto again = sample_channels(8, 42, 7);
  CHECK(once.gains() == again.gains());
  CHECK(sample_channels(8, 42, 8).gains() != once.gains());

  // E[h^2] = 1 and E[U_1] = 1/K for the minimum order statistic
  const std::size_t k = 10;
  const std::size_t draws = 20000;
  double sum_power = 0.0;
  double sum_min = 0.0;
  for (std::size_t t = 0; t < draws; ++t) {
    const auto state = sample_channels(k, 77, t);
    for (double h : state.gains()) sum_power += h * h;
    const double h_min = state.gains().front();
    sum_min += h_min * h_min;
  }
  const double mean_power = sum_power / (draws * k);
  // var(U) = 1 -> SE = 1/sqrt(draws * k)
  CHECK(std::abs(mean_power - 1.0) <= 3.0 / std::sqrt(double(draws * k)));
  const double mean_min = sum_min / draws;
  // U_1 ~ Exp(K): mean 1/K, std 1/K
  CHECK(std::abs(mean_min - 1.0 / k) <=
        3.0 / (k * std::sqrt(double(draws))));
}

TEST_CASE("ergodic estimates are invariant to the thread count") {
  const SystemParams params{12, 10.0, 1.0};
  const auto spec = PolicySpec::parse("optimal");
  const auto serial = ergodic_evaluate(params, spec, 4000, 5, 1);
  const auto threaded = ergodic_evaluate(params, spec, 4000, 5, 4);
  CHECK(serial.mean_mse_per_k == threaded.mean_mse_per_k);
  CHECK(serial.std_mse_per_k == threaded.std_mse_per_k);
  CHECK(serial.mean_pw_per_k == threaded.mean_pw_per_k);
  CHECK(serial.std_pw_per_k == threaded.std_pw_per_k);
  CHECK(serial.mean_critical == threaded.mean_critical);
  CHECK_THROWS_AS(ergodic_evaluate(params, spec, 1, 5), std::invalid_argument);
}

TEST_CASE("energy greedy consumes peak power deterministically") {
  const SystemParams params{10, 10.0, 1.0};
  const auto est = ergodic_evaluate(params, PolicySpec::parse("greedy"), 2000, 9);
  const double cap_sq = std::sqrt(10.0) * std::sqrt(10.0);
  CHECK(est.mean_pw_per_k == cap_sq);  // P up to one rounding of sqrt(P)^2
  CHECK(std::abs(est.mean_pw_per_k - 10.0) <= 4 * 1e-15 * 10.0);
  CHECK(est.std_pw_per_k == 0.0);
  CHECK_FALSE(est.mse_diverged);
}

TEST_CASE("channel inversion matches its closed-form average power") {
  const SystemParams params{10, 10.0, 1.0};
  const auto est =
      ergodic_evaluate(params, PolicySpec::parse("inversion"), 30000, 11);
  const double expected = 10.0 * std::log(10.0) / 9.0;  // P ln K / (K - 1)
  CHECK(est.mean_pw_per_k == doctest::Approx(expected).epsilon(0.03));
}

TEST_CASE("channel inversion's running MSE mean fails the Cauchy check") {
  const SystemParams params{10, 10.0, 1.0};
  const auto inversion =
      ergodic_evaluate(params, PolicySpec::parse("inversion"), 100000, 13);
  CHECK(inversion.mse_diverged);
  const auto optimal =
      ergodic_evaluate(params, PolicySpec::parse("optimal"), 100000, 13);
  CHECK_FALSE(optimal.mse_diverged);
}

TEST_CASE("scaling sweep validates input and reports slopes") {
  const SystemParams params{1, 10.0, 1.0};
  const auto spec = PolicySpec::parse("optimal");
  CHECK_THROWS_AS(scaling_sweep(params, spec, {}, 100, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(scaling_sweep(params, spec, {10, 10}, 100, 1),
                  std::invalid_argument);
  const auto series = scaling_sweep(params, spec, {8, 32, 128}, 2000, 3, 2);
  REQUIRE(series.points.size() == 3);
  CHECK(series.points[0].sensors == 8);
  CHECK(series.acm_loglog_slope < 0.0);
  CHECK(series.apc_loglog_slope < 0.0);
}

TEST_CASE("std of MSE/K and PW/K shrinks as K grows") {
  const SystemParams params{1, 10.0, 1.0};
  for (const char* tag : {"optimal", "greedy"}) {
    auto spec = PolicySpec::parse(tag);
    const auto series = scaling_sweep(params, spec, {10, 100, 1000}, 4000, 21);
    for (std::size_t i = 1; i < series.points.size(); ++i) {
      const auto& prev = series.points[i - 1].estimate;
      const auto& here = series.points[i].estimate;
      CHECK(here.std_mse_per_k < prev.std_mse_per_k);
      CHECK(here.std_pw_per_k <= prev.std_pw_per_k);
    }
  }
  auto iota_spec = PolicySpec::parse("first-iota", "sqrt");
  const auto series =
      scaling_sweep(params, iota_spec, {10, 100, 1000}, 4000, 22);
  for (std::size_t i = 1; i < series.points.size(); ++i) {
    CHECK(series.points[i].estimate.std_mse_per_k <
          series.points[i - 1].estimate.std_mse_per_k);
    CHECK(series.points[i].estimate.std_pw_per_k <
          series.points[i - 1].estimate.std_pw_per_k);
  }
}

TEST_CASE("classification reproduces the policy effectiveness table") {
  const SystemParams params{1, 10.0, 1.0};
  const std::vector<std::size_t> k_values{10, 100, 1000};
  const std::size_t trials = 20000;

  struct Row {
    const char* tag;
    const char* iota;
    Trend acm;
    Trend apc;
  };
  const Row rows[] = {
      {"inversion", "sqrt", Trend::NonVanishing, Trend::Vanishing},
      {"greedy", "sqrt", Trend::NonVanishing, Trend::NonVanishing},
      {"optimal", "sqrt", Trend::Vanishing, Trend::Vanishing},
      {"first-iota", "sqrt", Trend::Vanishing, Trend::Vanishing},
      {"first-iota", "half", Trend::NonVanishing, Trend::NonVanishing},
  };
  for (const auto& row : rows) {
    CAPTURE(row.tag);
    CAPTURE(row.iota);
    const auto spec = PolicySpec::parse(row.tag, row.iota);
    const auto series = scaling_sweep(params, spec, k_values, trials, 31);
    const auto verdict = classify(series);
    CHECK(verdict.computation_effective == row.acm);
    CHECK(verdict.energy_efficient == row.apc);
  }

  SUBCASE("insufficient span is inconclusive") {
    const auto spec = PolicySpec::parse("optimal");
    const auto narrow = scaling_sweep(params, spec, {10, 20, 40}, 2000, 32);
    const auto verdict = classify(narrow);
    CHECK(verdict.computation_effective == Trend::Inconclusive);
    CHECK(verdict.energy_efficient == Trend::Inconclusive);
    const auto two_points = scaling_sweep(params, spec, {10, 1000}, 2000, 33);
    CHECK(classify(two_points).computation_effective == Trend::Inconclusive);
  }
}

TEST_CASE("mu evaluates the scaling-law integral") {
  CHECK(mu(0.0) == 0.0);
  CHECK(std::abs(mu(0.5) - 0.12) < 0.005);  // approx 0.1224
  CHECK(mu(1e-3) == doctest::Approx(1e-6 / 6.0).epsilon(0.01));
  // series handoff is smooth
  CHECK(mu(9.9e-5) == doctest::Approx(mu(1.01e-4)).epsilon(0.05));
  CHECK_THROWS_AS(mu(-0.01), std::domain_error);
  CHECK_THROWS_AS(mu(1.0), std::domain_error);
  CHECK_THROWS_AS(mu(1.5), std::domain_error);
}

TEST_CASE("mean critical number of the optimal policy sits between the roots") {
  const SystemParams params20{20, 10.0, 1.0};
  const auto spec = PolicySpec::parse("optimal");
  const auto est20 = ergodic_evaluate(params20, spec, 20000, 41);
  CHECK(est20.mean_critical > std::cbrt(20.0));
  CHECK(est20.mean_critical < std::sqrt(20.0));
  const SystemParams params100{100, 10.0, 1.0};
  const auto est100 = ergodic_evaluate(params100, spec, 10000, 41);
  CHECK(est100.mean_critical > std::cbrt(100.0));
  CHECK(est100.mean_critical < std::sqrt(100.0));
}
