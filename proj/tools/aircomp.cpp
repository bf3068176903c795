// Command-line front end: evaluates scaling policies on single channel
// realizations, runs ergodic Monte Carlo sweeps, traces the two-sensor MSE
// region and spot-checks the closed forms against the brute-force oracle.
//
// Exit codes: 0 success, 2 input error, 3 constraint violation,
// 4 unsupported combination.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aircomp/aircomp.hpp"

namespace {

using nlohmann::json;

struct CommonOptions {
  std::string channel_file;
  std::size_t sensors = 10;
  bool sensors_given = false;
  double peak_power = 10.0;
  double noise_power = 1.0;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string format = "csv";
};

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != token.size())
      throw std::invalid_argument("bad number in list: " + token);
    values.push_back(value);
  }
  if (values.empty()) throw std::invalid_argument("empty value list");
  return values;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> values;
  for (double value : parse_double_list(text)) {
    if (value < 1 || value != static_cast<std::size_t>(value))
      throw std::invalid_argument("expected positive integers in list");
    values.push_back(static_cast<std::size_t>(value));
  }
  return values;
}

void add_instance_flags(CLI::App* cmd, CommonOptions& opt,
                        std::string& h_list) {
  // free the short -h so the inline gain list can be spelled --h
  cmd->set_help_flag("--help", "print this help message and exit");
  cmd->add_option("--h", h_list, "inline channel gains, comma separated");
  cmd->add_option("--channels", opt.channel_file,
                  "file with one channel gain per line ('#' comments)");
  cmd->add_option("--sensors", opt.sensors, "number of sensors K")
      ->capture_default_str()
      ->each([&opt](const std::string&) { opt.sensors_given = true; });
}

void add_param_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--power", opt.peak_power, "peak transmit power P")
      ->capture_default_str();
  cmd->add_option("--noise", opt.noise_power, "noise power sigma^2")
      ->capture_default_str();
}

void add_output_flags(CLI::App* cmd, CommonOptions& opt,
                      bool with_format = true) {
  cmd->add_option("--out", opt.out_path, "output file (default stdout)");
  if (with_format)
    cmd->add_option("--format", opt.format, "csv | jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}))
        ->capture_default_str();
}

void add_seed_flag(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option_function<std::uint64_t>(
         "--seed", [&opt](std::uint64_t value) { opt.seed = value; },
         "RNG seed (required whenever channels are sampled)");
}

// Resolves the instance source for single-realization subcommands: exactly
// one of --h, --channels or --sensors (+ --seed) must be given.
aircomp::ChannelState resolve_channels(const CommonOptions& opt,
                                       const std::string& h_list) {
  const int sources = (!h_list.empty() ? 1 : 0) +
                      (!opt.channel_file.empty() ? 1 : 0) +
                      (opt.sensors_given ? 1 : 0);
  if (sources != 1)
    throw std::invalid_argument(
        "exactly one instance source required: --h, --channels or --sensors");
  if (!h_list.empty())
    return aircomp::ChannelState::from_gains(parse_double_list(h_list));
  if (!opt.channel_file.empty())
    return aircomp::ChannelState::from_gains(
        aircomp::read_channel_file(opt.channel_file));
  if (!opt.seed)
    throw std::invalid_argument("--seed is required when sampling channels");
  return aircomp::sample_channels(opt.sensors, *opt.seed, 0);
}

class OutputStream {
 public:
  explicit OutputStream(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_)
        throw std::invalid_argument("cannot open output file: " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string fmt(double value) { return aircomp::format_double(value); }

// ---- eval ----------------------------------------------------------------

struct EvalOptions {
  CommonOptions common;
  std::string h_list;
  std::string policy = "optimal";
  std::string iota = "sqrt";
};

int run_eval(const EvalOptions& opt) {
  const auto channels = resolve_channels(opt.common, opt.h_list);
  const aircomp::SystemParams params{channels.size(), opt.common.peak_power,
                                     opt.common.noise_power};
  const auto spec = aircomp::PolicySpec::parse(opt.policy, opt.iota);
  const auto policy = aircomp::make_policy(params, channels, spec);
  const auto metrics = aircomp::evaluate(params, channels, policy);
  const std::size_t critical =
      aircomp::interval_of(params, channels, policy.rx_scale);
  const auto tx_original = channels.to_original_order(policy.tx_scales);

  OutputStream out(opt.common.out_path);
  if (opt.common.format == "jsonl") {
    json record{{"policy", spec.to_string()},
                {"K", channels.size()},
                {"critical_number", critical},
                {"a", policy.rx_scale},
                {"b", tx_original},
                {"mse", metrics.mse},
                {"power", metrics.power}};
    out.get() << record.dump() << "\n";
  } else {
    std::vector<std::string> header{"policy", "K", "critical_number", "a"};
    std::vector<std::string> row{spec.to_string(),
                                 std::to_string(channels.size()),
                                 std::to_string(critical), fmt(policy.rx_scale)};
    for (std::size_t k = 0; k < tx_original.size(); ++k) {
      header.push_back("b" + std::to_string(k + 1));
      row.push_back(fmt(tx_original[k]));
    }
    header.insert(header.end(), {"mse", "power"});
    row.insert(row.end(), {fmt(metrics.mse), fmt(metrics.power)});
    out.get() << aircomp::csv_row(header) << "\n"
              << aircomp::csv_row(row) << "\n";
  }
  std::cerr << "eval: policy=" << spec.to_string() << " K=" << channels.size()
            << " mse=" << fmt(metrics.mse) << " power=" << fmt(metrics.power)
            << "\n";
  return 0;
}

// ---- ergodic / scaling -----------------------------------------------------

struct ErgodicOptions {
  CommonOptions common;
  std::string policy = "optimal";
  std::string iota = "sqrt";
  std::size_t trials = 100000;
  std::string k_list;
  unsigned threads = 1;
};

void write_estimate_row(std::ostream& out, const std::string& format,
                        const std::string& policy, std::size_t sensors,
                        const aircomp::ErgodicEstimate& est) {
  if (format == "jsonl") {
    json record{{"policy", policy},
                {"K", sensors},
                {"trials", est.trials},
                {"seed", est.seed},
                {"acm", est.mean_mse_per_k},
                {"acm_std", est.std_mse_per_k},
                {"apc", est.mean_pw_per_k},
                {"apc_std", est.std_pw_per_k},
                {"mean_istar", est.mean_critical},
                {"std_istar", est.std_critical},
                {"acm_diverged", est.mse_diverged}};
    out << record.dump() << "\n";
  } else {
    out << aircomp::csv_row({policy, std::to_string(sensors),
                             std::to_string(est.trials),
                             std::to_string(est.seed), fmt(est.mean_mse_per_k),
                             fmt(est.std_mse_per_k), fmt(est.mean_pw_per_k),
                             fmt(est.std_pw_per_k), fmt(est.mean_critical),
                             fmt(est.std_critical)})
        << "\n";
  }
}

constexpr const char* kSweepHeader =
    "policy,K,trials,seed,acm,acm_std,apc,apc_std,mean_istar,std_istar";

int run_ergodic(const ErgodicOptions& opt) {
  if (!opt.common.seed)
    throw std::invalid_argument("--seed is required for ergodic runs");
  const aircomp::SystemParams params{opt.common.sensors, opt.common.peak_power,
                                     opt.common.noise_power};
  const auto spec = aircomp::PolicySpec::parse(opt.policy, opt.iota);
  const auto est = aircomp::ergodic_evaluate(params, spec, opt.trials,
                                             *opt.common.seed, opt.threads);
  OutputStream out(opt.common.out_path);
  if (opt.common.format == "csv") out.get() << kSweepHeader << "\n";
  write_estimate_row(out.get(), opt.common.format, spec.to_string(),
                     params.sensor_count, est);
  std::cerr << "ergodic: policy=" << spec.to_string()
            << " K=" << params.sensor_count << " trials=" << est.trials
            << " acm=" << fmt(est.mean_mse_per_k)
            << " apc=" << fmt(est.mean_pw_per_k)
            << (est.mse_diverged ? " [running mean diverged]" : "") << "\n";
  return 0;
}

int run_scaling(const ErgodicOptions& opt) {
  if (!opt.common.seed)
    throw std::invalid_argument("--seed is required for scaling runs");
  if (opt.k_list.empty())
    throw std::invalid_argument("--k-list is required for scaling runs");
  const aircomp::SystemParams params_template{1, opt.common.peak_power,
                                              opt.common.noise_power};
  const auto spec = aircomp::PolicySpec::parse(opt.policy, opt.iota);
  const auto series = aircomp::scaling_sweep(
      params_template, spec, parse_size_list(opt.k_list), opt.trials,
      *opt.common.seed, opt.threads);
  OutputStream out(opt.common.out_path);
  if (opt.common.format == "csv") out.get() << kSweepHeader << "\n";
  for (const auto& point : series.points)
    write_estimate_row(out.get(), opt.common.format, series.policy,
                       point.sensors, point.estimate);
  std::cerr << "scaling: policy=" << series.policy
            << " acm_slope=" << fmt(series.acm_loglog_slope)
            << " apc_slope=" << fmt(series.apc_loglog_slope) << "\n";
  return 0;
}

// ---- region ----------------------------------------------------------------

struct RegionOptions {
  CommonOptions common;
  std::string h_list;
  std::size_t grid = 200;
};

int run_region(const RegionOptions& opt) {
  const auto channels = resolve_channels(opt.common, opt.h_list);
  const aircomp::SystemParams params{channels.size(), opt.common.peak_power,
                                     opt.common.noise_power};
  const auto points = aircomp::boundary_trace(params, channels, opt.grid);
  OutputStream out(opt.common.out_path);
  out.get() << "mse1,mse2,boundary\n";
  for (const auto& point : points) {
    const auto original = channels.to_original_order(point.tuple);
    out.get() << aircomp::csv_row(
                     {fmt(original[0]), fmt(original[1]), point.segment})
              << "\n";
  }
  std::cerr << "region: K=2 grid=" << opt.grid << " rows=" << points.size()
            << "\n";
  return 0;
}

// ---- mac -------------------------------------------------------------------

struct MacOptions {
  CommonOptions common;
  std::string h_list;
  std::string b_list;  // optional: evaluate these Tx scales instead
};

int run_mac(const MacOptions& opt) {
  const auto channels = resolve_channels(opt.common, opt.h_list);
  const aircomp::SystemParams params{channels.size(), opt.common.peak_power,
                                     opt.common.noise_power};
  aircomp::MacPolicy policy;
  if (opt.b_list.empty()) {
    policy = aircomp::mac_optimal(params, channels);
  } else {
    // user-chosen Tx scales, given in original sensor order
    const auto original = parse_double_list(opt.b_list);
    if (original.size() != channels.size())
      throw std::invalid_argument("--b must list one scale per sensor");
    policy.tx_scales.resize(original.size());
    for (std::size_t i = 0; i < original.size(); ++i)
      policy.tx_scales[i] = original[channels.permutation()[i]];
    policy.rx_scales = aircomp::mac_rx_scales(params, channels,
                                              policy.tx_scales);
  }
  const auto tuple = aircomp::mac_mse_tuple(params, channels, policy.tx_scales);
  double sum_mse = 0.0;
  for (double value : tuple) sum_mse += value;
  const auto rx = channels.to_original_order(policy.rx_scales);
  const auto tx = channels.to_original_order(policy.tx_scales);
  const auto mse = channels.to_original_order(tuple);

  OutputStream out(opt.common.out_path);
  if (opt.common.format == "jsonl") {
    json record{{"policy", "mac"},      {"K", channels.size()},
                {"a_tilde", rx},        {"b_tilde", tx},
                {"mse", mse},           {"sum_mse", sum_mse}};
    out.get() << record.dump() << "\n";
  } else {
    std::vector<std::string> header{"policy", "K", "sum_mse"};
    std::vector<std::string> row{"mac", std::to_string(channels.size()),
                                 fmt(sum_mse)};
    for (std::size_t k = 0; k < channels.size(); ++k) {
      header.push_back("a" + std::to_string(k + 1));
      row.push_back(fmt(rx[k]));
    }
    for (std::size_t k = 0; k < channels.size(); ++k) {
      header.push_back("b" + std::to_string(k + 1));
      row.push_back(fmt(tx[k]));
    }
    for (std::size_t k = 0; k < channels.size(); ++k) {
      header.push_back("mse" + std::to_string(k + 1));
      row.push_back(fmt(mse[k]));
    }
    out.get() << aircomp::csv_row(header) << "\n"
              << aircomp::csv_row(row) << "\n";
  }
  std::cerr << "mac: K=" << channels.size() << " sum_mse=" << fmt(sum_mse)
            << "\n";
  return 0;
}

// ---- multiantenna ----------------------------------------------------------

struct MultiAntennaOptions {
  CommonOptions common;
  std::size_t antennas = 8;
  std::string method = "select";
  bool include_basis = false;
};

aircomp::MultiAntennaChannel load_complex_channels(const std::string& path,
                                                   std::size_t antennas) {
  std::ifstream input(path);
  if (!input) throw std::invalid_argument("cannot open channel file: " + path);
  aircomp::MultiAntennaChannel channel;
  channel.antennas = antennas;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream fields(line);
    std::vector<double> values;
    double value = 0.0;
    while (fields >> value) values.push_back(value);
    if (values.empty()) continue;
    if (values.size() != 2 * antennas)
      throw std::invalid_argument(
          "channel file line " + std::to_string(line_number) + ": expected " +
          std::to_string(2 * antennas) + " values (re im per antenna)");
    aircomp::ComplexVector column;
    column.reserve(antennas);
    for (std::size_t n = 0; n < antennas; ++n)
      column.emplace_back(values[2 * n], values[2 * n + 1]);
    channel.per_sensor.push_back(std::move(column));
  }
  aircomp::validate(channel);
  return channel;
}

int run_multiantenna(const MultiAntennaOptions& opt) {
  aircomp::MultiAntennaChannel channel;
  if (!opt.common.channel_file.empty()) {
    channel = load_complex_channels(opt.common.channel_file, opt.antennas);
  } else {
    if (!opt.common.seed)
      throw std::invalid_argument("--seed is required when sampling channels");
    channel = aircomp::MultiAntennaChannel::sample(
        opt.common.sensors, opt.antennas, *opt.common.seed, 0);
  }
  const aircomp::SystemParams params{channel.sensors(), opt.common.peak_power,
                                     opt.common.noise_power};

  aircomp::DirectionPolicy solution;
  if (opt.method == "select") {
    solution = aircomp::antenna_selection(params, channel);
  } else if (opt.method.rfind("random:", 0) == 0) {
    if (!opt.common.seed)
      throw std::invalid_argument("--seed is required for random search");
    const std::size_t trials = std::stoull(opt.method.substr(7));
    // Decouple the direction streams from the channel-sampling streams.
    const std::uint64_t direction_seed =
        *opt.common.seed ^ 0x9e3779b97f4a7c15ull;
    solution = aircomp::random_direction_search(params, channel, trials,
                                                direction_seed,
                                                opt.include_basis);
  } else {
    throw std::invalid_argument("--method must be select or random:<trials>");
  }

  double power = 0.0;
  for (double b : solution.tx_magnitudes) power += b * b;
  OutputStream out(opt.common.out_path);
  if (opt.common.format == "jsonl") {
    json direction = json::array();
    for (const auto& component : solution.direction.v)
      direction.push_back({component.real(), component.imag()});
    json record{{"method", opt.method},
                {"antennas", channel.antennas},
                {"K", channel.sensors()},
                {"critical_number", solution.critical_number},
                {"mse", solution.mse},
                {"power", power},
                {"direction", direction}};
    if (solution.antenna != aircomp::DirectionPolicy::npos)
      record["antenna"] = solution.antenna;
    out.get() << record.dump() << "\n";
  } else {
    std::vector<std::string> header{"method", "antennas", "K", "antenna",
                                    "critical_number", "mse", "power"};
    std::vector<std::string> row{
        opt.method,
        std::to_string(channel.antennas),
        std::to_string(channel.sensors()),
        solution.antenna == aircomp::DirectionPolicy::npos
            ? std::string("-")
            : std::to_string(solution.antenna + 1),
        std::to_string(solution.critical_number),
        fmt(solution.mse),
        fmt(power)};
    for (std::size_t n = 0; n < solution.direction.v.size(); ++n) {
      header.push_back("v_re" + std::to_string(n + 1));
      header.push_back("v_im" + std::to_string(n + 1));
      row.push_back(fmt(solution.direction.v[n].real()));
      row.push_back(fmt(solution.direction.v[n].imag()));
    }
    out.get() << aircomp::csv_row(header) << "\n"
              << aircomp::csv_row(row) << "\n";
  }
  std::cerr << "multiantenna: method=" << opt.method
            << " N=" << channel.antennas << " K=" << channel.sensors()
            << " mse=" << fmt(solution.mse) << "\n";
  return 0;
}

// ---- verify ----------------------------------------------------------------

struct VerifyOptions {
  CommonOptions common;
  std::string h_list;
  std::size_t resolution = 100000;
  std::size_t mac_resolution = 400;
};

int run_verify(const VerifyOptions& opt) {
  const auto channels = resolve_channels(opt.common, opt.h_list);
  const aircomp::SystemParams params{channels.size(), opt.common.peak_power,
                                     opt.common.noise_power};
  const auto policy = aircomp::computation_optimal(params, channels);
  const double closed_mse = aircomp::compute_mse(params, channels, policy);
  const auto oracle = aircomp::oracle_aircomp(
      params, channels, aircomp::make_grid(params, channels, opt.resolution));

  json record{{"K", channels.size()},
              {"power", params.peak_power},
              {"noise", params.noise_power},
              {"closed_a", policy.rx_scale},
              {"closed_mse", closed_mse},
              {"oracle_a", oracle.rx_scale},
              {"oracle_mse", oracle.mse},
              {"mse_gap", oracle.mse - closed_mse}};
  if (channels.size() <= 3) {
    const auto mac = aircomp::mac_optimal(params, channels);
    const auto tuple =
        aircomp::mac_mse_tuple(params, channels, mac.tx_scales);
    double sum_mse = 0.0;
    for (double value : tuple) sum_mse += value;
    const auto mac_oracle =
        aircomp::oracle_mac(params, channels, opt.mac_resolution);
    record["mac_sum_mse"] = sum_mse;
    record["mac_oracle_sum_mse"] = mac_oracle.sum_mse;
    record["mac_gap"] = mac_oracle.sum_mse - sum_mse;
  }

  OutputStream out(opt.common.out_path);
  if (opt.common.format == "jsonl") {
    out.get() << record.dump() << "\n";
  } else {
    std::vector<std::string> header;
    std::vector<std::string> row;
    for (const auto& [key, value] : record.items()) {
      header.push_back(key);
      row.push_back(value.is_number_float() ? fmt(value.get<double>())
                                            : value.dump());
    }
    out.get() << aircomp::csv_row(header) << "\n"
              << aircomp::csv_row(row) << "\n";
  }
  std::cerr << "verify: closed_mse=" << fmt(closed_mse)
            << " oracle_mse=" << fmt(oracle.mse)
            << " gap=" << fmt(oracle.mse - closed_mse) << "\n";
  return 0;
}

void add_policy_flags(CLI::App* cmd, std::string& policy, std::string& iota) {
  cmd->add_option("--policy", policy,
                  "optimal | inversion | greedy | first-iota")
      ->check(CLI::IsMember({"optimal", "inversion", "greedy", "first-iota"}))
      ->capture_default_str();
  cmd->add_option("--iota", iota, "sqrt | half | const:<n>")
      ->capture_default_str();
}

void add_threads_flag(CLI::App* cmd, unsigned& threads) {
  cmd->add_option("--threads", threads, "worker thread count")
      ->envname("AIRCOMP_THREADS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Closed-form transmit/receive scaling policies for over-the-air "
      "computation, with ergodic Monte Carlo evaluation"};
  app.require_subcommand(1);

  EvalOptions eval_opt;
  auto* eval_cmd = app.add_subcommand(
      "eval", "evaluate one policy on a single channel realization");
  add_instance_flags(eval_cmd, eval_opt.common, eval_opt.h_list);
  add_param_flags(eval_cmd, eval_opt.common);
  add_seed_flag(eval_cmd, eval_opt.common);
  add_output_flags(eval_cmd, eval_opt.common);
  add_policy_flags(eval_cmd, eval_opt.policy, eval_opt.iota);

  ErgodicOptions ergodic_opt;
  auto* ergodic_cmd = app.add_subcommand(
      "ergodic", "Monte Carlo estimate of ACM/APC under Rayleigh fading");
  ergodic_cmd->add_option("--sensors", ergodic_opt.common.sensors,
                          "number of sensors K")
      ->capture_default_str();
  add_param_flags(ergodic_cmd, ergodic_opt.common);
  add_seed_flag(ergodic_cmd, ergodic_opt.common);
  add_output_flags(ergodic_cmd, ergodic_opt.common);
  add_policy_flags(ergodic_cmd, ergodic_opt.policy, ergodic_opt.iota);
  ergodic_cmd->add_option("--trials", ergodic_opt.trials, "channel draws")
      ->capture_default_str();
  add_threads_flag(ergodic_cmd, ergodic_opt.threads);

  ErgodicOptions scaling_opt;
  auto* scaling_cmd = app.add_subcommand(
      "scaling", "ACM/APC sweep over a list of sensor counts");
  scaling_cmd->add_option("--k-list", scaling_opt.k_list,
                          "sensor counts, comma separated (e.g. 10,100,1000)");
  add_param_flags(scaling_cmd, scaling_opt.common);
  add_seed_flag(scaling_cmd, scaling_opt.common);
  add_output_flags(scaling_cmd, scaling_opt.common);
  add_policy_flags(scaling_cmd, scaling_opt.policy, scaling_opt.iota);
  scaling_cmd->add_option("--trials", scaling_opt.trials, "channel draws per K")
      ->capture_default_str();
  add_threads_flag(scaling_cmd, scaling_opt.threads);

  RegionOptions region_opt;
  auto* region_cmd = app.add_subcommand(
      "region", "trace the two-sensor achievable MSE region boundary");
  add_instance_flags(region_cmd, region_opt.common, region_opt.h_list);
  add_param_flags(region_cmd, region_opt.common);
  add_seed_flag(region_cmd, region_opt.common);
  add_output_flags(region_cmd, region_opt.common, /*with_format=*/false);
  region_cmd->add_option("--grid", region_opt.grid, "points per boundary piece")
      ->capture_default_str();

  MacOptions mac_opt;
  auto* mac_cmd = app.add_subcommand(
      "mac", "optimal sum-of-MSE policy of the MAC estimation problem");
  add_instance_flags(mac_cmd, mac_opt.common, mac_opt.h_list);
  mac_cmd->add_option("--b", mac_opt.b_list,
                      "evaluate these Tx scales instead of the optimum, "
                      "comma separated in sensor order");
  add_param_flags(mac_cmd, mac_opt.common);
  add_seed_flag(mac_cmd, mac_opt.common);
  add_output_flags(mac_cmd, mac_opt.common);

  MultiAntennaOptions multi_opt;
  auto* multi_cmd = app.add_subcommand(
      "multiantenna", "multi-antenna receiver via effective-channel reduction");
  multi_cmd->add_option("--sensors", multi_opt.common.sensors,
                        "number of sensors K")
      ->capture_default_str();
  multi_cmd->add_option("--channels", multi_opt.common.channel_file,
                        "file with one sensor per line: re im per antenna");
  multi_cmd->add_option("--antennas", multi_opt.antennas,
                        "number of receive antennas N")
      ->capture_default_str();
  multi_cmd->add_option("--method", multi_opt.method,
                        "select | random:<trials>")
      ->capture_default_str();
  multi_cmd->add_flag("--include-basis", multi_opt.include_basis,
                      "add the basis vectors to the random candidate set");
  add_param_flags(multi_cmd, multi_opt.common);
  add_seed_flag(multi_cmd, multi_opt.common);
  add_output_flags(multi_cmd, multi_opt.common);

  VerifyOptions verify_opt;
  auto* verify_cmd = app.add_subcommand(
      "verify", "spot-check the closed forms against the grid-search oracle");
  add_instance_flags(verify_cmd, verify_opt.common, verify_opt.h_list);
  add_param_flags(verify_cmd, verify_opt.common);
  add_seed_flag(verify_cmd, verify_opt.common);
  add_output_flags(verify_cmd, verify_opt.common);
  verify_cmd->add_option("--resolution", verify_opt.resolution,
                         "oracle grid points")
      ->capture_default_str();
  verify_cmd
      ->add_option("--mac-resolution", verify_opt.mac_resolution,
                   "MAC oracle grid points per dimension")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*eval_cmd) return run_eval(eval_opt);
    if (*ergodic_cmd) return run_ergodic(ergodic_opt);
    if (*scaling_cmd) return run_scaling(scaling_opt);
    if (*region_cmd) return run_region(region_opt);
    if (*mac_cmd) return run_mac(mac_opt);
    if (*multi_cmd) return run_multiantenna(multi_opt);
    if (*verify_cmd) return run_verify(verify_opt);
  } catch (const aircomp::constraint_error& e) {
    std::cerr << "constraint violation: " << e.what() << "\n";
    return 3;
  } catch (const aircomp::unsupported_error& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
