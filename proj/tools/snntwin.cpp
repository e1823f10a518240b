// snntwin: energy comparison of rate-coded spiking networks against their
// quantized counterparts. Subcommands: energy, breakeven, sweep, landscape,
// verify, presets.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "snntwin/snntwin.hpp"

namespace {

using namespace snntwin;
using nlohmann::json;

// exit codes: 0 ok, 1 verification failure, 2 configuration error, 3 I/O error
constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

class VerificationFailure : public std::runtime_error {
public:
  explicit VerificationFailure(const std::string& msg) : std::runtime_error(msg) {}
};

// What one invocation resolved to. The output format must agree with the
// output file's extension whenever there is one.
struct RunManifest {
  std::string command;
  std::string config;  // optional workload JSON file
  std::string hw;
  std::string out;     // empty: stdout
  std::string format;  // "csv" or "json"
  std::uint64_t seed = 1;
};

std::string resolve_format(const std::string& requested, const std::string& out_path,
                           const std::string& fallback) {
  std::string by_extension;
  const auto ext = std::filesystem::path(out_path).extension().string();
  if (ext == ".csv") by_extension = "csv";
  if (ext == ".json") by_extension = "json";

  if (!requested.empty()) {
    if (!by_extension.empty() && requested != by_extension)
      throw ConfigError("requested format '" + requested + "' conflicts with output extension '" +
                        ext + "'");
    return requested;
  }
  return by_extension.empty() ? fallback : by_extension;
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw IoError("cannot open output path '" + out_path + "'");
  out << content;
  if (!out) throw IoError("failed writing to '" + out_path + "'");
}

Rational parse_decimal_flag(const std::string& text, const char* flag) {
  try {
    return parse_decimal(text);
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string(flag) + ": " + e.what());
  }
}

HardwareProfile load_hw(const std::string& name_or_path) {
  HardwareProfile hw = resolve_profile(name_or_path);
  for (const auto& warning : hw.validate()) std::cerr << "warning: " << warning << "\n";
  return hw;
}

SnnTransmission parse_snn_mode(const std::string& mode) {
  if (mode == "auto") return SnnTransmission::automatic;
  if (mode == "sparse") return SnnTransmission::sparse;
  if (mode == "dense") return SnnTransmission::dense;
  if (mode == "aggregated") return SnnTransmission::aggregated;
  throw ConfigError("unknown --snn-mode '" + mode + "'");
}

std::optional<ModelPreset> find_model(const std::string& name) {
  for (auto& preset : builtin_model_presets())
    if (preset.name == name) return preset;
  return std::nullopt;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = csv.find(',', start);
    if (comma == std::string::npos) {
      parts.push_back(csv.substr(start));
      break;
    }
    parts.push_back(csv.substr(start, comma - start));
    start = comma + 1;
  }
  return parts;
}

std::vector<std::int64_t> parse_int_list(const std::string& csv, const char* flag) {
  std::vector<std::int64_t> values;
  for (const auto& part : split_list(csv)) {
    try {
      std::size_t used = 0;
      values.push_back(std::stoll(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw ConfigError(std::string(flag) + ": '" + part + "' is not an integer");
    }
  }
  return values;
}

json breakdown_to_json(const EnergyBreakdown& b) {
  json j;
  j["compute_pj"] = to_double(b.compute_pj);
  j["data_pj"] = to_double(b.data_pj);
  j["total_pj"] = to_double(b.total_pj);
  j["transmission_mode"] = move_mode_name(b.transmission_mode);
  if (b.aggregated) j["aggregated"] = true;
  json terms;
  for (const auto& [name, pj] : b.terms) terms[name] = to_double(pj);
  j["terms"] = std::move(terms);
  return j;
}

// --- energy ------------------------------------------------------------

struct EnergyArgs {
  std::string model;
  std::string scenario;
  std::int64_t window = 4;
  std::string spike_rate = "0.1";
  std::string gamma;
  std::int64_t n_src = 4096;
  int weight_bits = 8;
  std::string snn_mode = "auto";
  bool strict_log2 = false;
  bool exact = false;
  // which flags were given explicitly (they override a --config file)
  bool window_set = false, spike_rate_set = false, gamma_set = false;
  bool n_src_set = false, weight_bits_set = false;
};

// Workload JSON: {"T": 4, "s_r": "0.1", "gamma": "0.8", "n_src": 4096,
// "weight_bits": 8}; rates may be decimal strings or numbers.
void apply_workload_config(const std::string& path, EnergyArgs& args) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open workload config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("workload config '" + path + "': " + e.what());
  }
  const auto decimal_field = [&](const char* key) {
    const auto& v = j.at(key);
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  if (j.contains("T") && !args.window_set) args.window = j["T"].get<std::int64_t>();
  if (j.contains("s_r") && !args.spike_rate_set) args.spike_rate = decimal_field("s_r");
  if (j.contains("gamma") && !args.gamma_set) args.gamma = decimal_field("gamma");
  if (j.contains("n_src") && !args.n_src_set) args.n_src = j["n_src"].get<std::int64_t>();
  if (j.contains("weight_bits") && !args.weight_bits_set)
    args.weight_bits = j["weight_bits"].get<int>();
}

int run_energy(EnergyArgs args, const RunManifest& manifest) {
  if (!manifest.config.empty()) apply_workload_config(manifest.config, args);
  std::int64_t window = args.window;
  Rational spike_rate = parse_decimal_flag(args.spike_rate, "--s-r");
  std::string model_label = "custom";
  if (!args.model.empty()) {
    const auto preset = find_model(args.model);
    if (!preset) throw ConfigError("unknown model preset '" + args.model + "'");
    window = preset->window;
    spike_rate = preset->spike_rate;
    model_label = preset->name;
  }

  Rational gamma;
  std::string scenario_label = "fixed";
  if (!args.gamma.empty()) {
    gamma = parse_decimal_flag(args.gamma, "--gamma");
  } else {
    Scenario scenario = Scenario::average;
    if (args.scenario == "worst") scenario = Scenario::worst;
    else if (args.scenario == "best") scenario = Scenario::best;
    else if (!args.scenario.empty() && args.scenario != "average")
      throw ConfigError("unknown scenario '" + args.scenario + "'");
    scenario_label = scenario_name(scenario);
    try {
      gamma = scenario_sparsity(spike_rate, window, scenario);
    } catch (const InfeasibleError& e) {
      throw ConfigError(e.what());
    }
  }

  const WorkloadConfig cfg{args.n_src, window, spike_rate, gamma, args.weight_bits};
  cfg.validate();
  const HardwareProfile hw = load_hw(manifest.hw);
  const EnergyPair pair =
      total_energy(cfg, hw, parse_snn_mode(args.snn_mode), args.strict_log2);

  const std::string format = resolve_format(manifest.format, manifest.out, "json");
  if (format == "csv") {
    SweepRecord rec;
    rec.model = model_label;
    rec.hw = hw.name;
    rec.scenario = scenario_label;
    rec.cfg = cfg;
    rec.snn = pair.snn;
    rec.qnn = pair.qnn;
    rec.ratio = energy_ratio(pair);
    write_output(manifest.out, sweep_to_csv({rec}));
    return kExitOk;
  }

  json j;
  j["workload"] = {{"T", cfg.window},
                   {"s_r", to_double(cfg.spike_rate)},
                   {"gamma", to_double(cfg.sparsity)},
                   {"n_src", cfg.n_src},
                   {"weight_bits", cfg.weight_bits},
                   {"activation_bits", cfg.activation_bits()},
                   {"model", model_label},
                   {"scenario", scenario_label}};
  j["hw"] = hw.name;
  j["snn"] = breakdown_to_json(pair.snn);
  j["qnn"] = breakdown_to_json(pair.qnn);
  j["e_snn_total_pj"] = to_double(pair.snn.total_pj);
  j["e_qnn_total_pj"] = to_double(pair.qnn.total_pj);
  j["ratio"] = energy_ratio(pair);
  const auto compute_adv = compute_advantage(cfg, hw, args.exact);
  j["advantage"] = {{"compute", compute_adv.holds},
                    {"compute_margin", to_double(compute_adv.margin)},
                    {"data", pair.snn.data_pj <= pair.qnn.data_pj},
                    {"total", pair.snn.total_pj <= pair.qnn.total_pj},
                    {"exact_fanin_term", args.exact}};
  write_output(manifest.out, j.dump(2) + "\n");
  return kExitOk;
}

// --- breakeven ---------------------------------------------------------

struct BreakevenArgs {
  std::int64_t window = 4;
  std::int64_t window_max = 0;  // 0: single window
  std::int64_t n_src = 4096;
  std::string gamma = "0.8";
  int weight_bits = 8;
};

int run_breakeven(const BreakevenArgs& args, const RunManifest& manifest) {
  const Rational gamma = parse_decimal_flag(args.gamma, "--gamma");
  const HardwareProfile hw = load_hw(manifest.hw);
  const std::int64_t t_hi = args.window_max > 0 ? args.window_max : args.window;
  if (t_hi < args.window) throw ConfigError("--t-max must be >= --t");

  std::vector<BreakevenRecord> records;
  for (std::int64_t window = args.window; window <= t_hi; ++window)
    records.push_back({hw.name, window, args.n_src, args.weight_bits, gamma,
                       breakeven_spike_rate(window, args.n_src, gamma, args.weight_bits, hw)});

  std::vector<std::string> annotations;
  if (hw.e_move_sparse + hw.weight_pj(args.weight_bits) > 0)
    annotations.push_back("transmission threshold: dense broadcast is cheaper above s_r = " +
                          format_real(to_double(sparse_dense_threshold(hw, args.weight_bits)), 6) +
                          " on '" + hw.name + "' with " + std::to_string(args.weight_bits) +
                          "-bit weights");
  {
    double lo = 2.0, hi = -1.0;
    std::int64_t lo_t = 0, hi_t = 0;
    for (const auto& r : records) {
      if (r.result.status != BreakevenResult::Status::root) continue;
      const double s = to_double(*r.result.s_star);
      if (hi < 0 || s > hi) { hi = s; hi_t = r.window; }
      if (s < lo) { lo = s; lo_t = r.window; }
    }
    if (hi >= 0)
      annotations.push_back(
          "breakeven spike rate spans " + format_real(lo, 6) + " (T=" + std::to_string(lo_t) +
          ") to " + format_real(hi, 6) + " (T=" + std::to_string(hi_t) +
          ") over the computed windows; values depend on the configured e_mac table");
  }

  const std::string format = resolve_format(manifest.format, manifest.out, "csv");
  if (format == "json") {
    json j;
    j["breakeven"] = breakevens_to_json(records);
    j["annotations"] = annotations;
    write_output(manifest.out, j.dump(2) + "\n");
  } else {
    std::string csv = breakevens_to_csv(records);
    for (const auto& note : annotations) csv += "# " + note + "\n";
    write_output(manifest.out, csv);
  }
  return kExitOk;
}

// --- sweep / landscape ---------------------------------------------------

struct SweepArgs {
  std::int64_t t_min = 1;
  std::int64_t t_max = 8;
  std::string sr_min = "0";
  std::string sr_max = "0.5";
  std::string sr_step = "0.01";
  std::string bits_list = "4,8";
  std::string n_list = "64,4096";
  std::string gamma_qnn = "0.8";
};

int run_sweep(const SweepArgs& args, const RunManifest& manifest) {
  if (args.t_min < 1 || args.t_max < args.t_min)
    throw ConfigError("window range must satisfy 1 <= --t-min <= --t-max");
  std::vector<std::int64_t> windows;
  for (std::int64_t t = args.t_min; t <= args.t_max; ++t) windows.push_back(t);

  const Rational sr_min = parse_decimal_flag(args.sr_min, "--sr-min");
  const Rational sr_max = parse_decimal_flag(args.sr_max, "--sr-max");
  const Rational sr_step = parse_decimal_flag(args.sr_step, "--sr-step");
  if (sr_step <= 0 || sr_min < 0 || sr_max > 1 || sr_max < sr_min)
    throw ConfigError("spike-rate grid must satisfy 0 <= --sr-min <= --sr-max <= 1, step > 0");
  std::vector<Rational> rates;
  for (Rational s = sr_min; s <= sr_max; s += sr_step) rates.push_back(s);

  std::vector<int> bits;
  for (const std::int64_t b : parse_int_list(args.bits_list, "--bits"))
    bits.push_back(static_cast<int>(b));
  const std::vector<std::int64_t> fanins = parse_int_list(args.n_list, "--n-list");

  const HardwareProfile hw = load_hw(manifest.hw);
  const auto result = sensitivity(windows, rates, bits, fanins, hw,
                                  parse_decimal_flag(args.gamma_qnn, "--gamma-qnn"));

  const std::string format = resolve_format(manifest.format, manifest.out, "csv");
  if (format == "json") {
    json j;
    j["records"] = sweep_to_json(result.records);
    j["breakeven"] = breakevens_to_json(result.breakevens);
    write_output(manifest.out, j.dump(2) + "\n");
    return kExitOk;
  }
  if (manifest.out.empty()) {
    write_output("", sweep_to_csv(result.records) + "\n" + breakevens_to_csv(result.breakevens));
  } else {
    write_output(manifest.out, sweep_to_csv(result.records));
    const std::filesystem::path main_path(manifest.out);
    std::filesystem::path companion = main_path;
    companion.replace_extension(".breakeven" + main_path.extension().string());
    write_output(companion.string(), breakevens_to_csv(result.breakevens));
    std::cerr << "breakeven companion table: " << companion.string() << "\n";
  }
  return kExitOk;
}

struct LandscapeArgs {
  std::string models = "efficient,typical,high-performance";
  std::string hw_list = "theoretical-min,typical-neuromorphic,worst-sparse";
  std::int64_t n_src = 4096;
  int weight_bits = 8;
};

int run_landscape(const LandscapeArgs& args, const RunManifest& manifest) {
  std::vector<ModelPreset> models;
  for (const auto& name : split_list(args.models)) {
    const auto preset = find_model(name);
    if (!preset) throw ConfigError("unknown model preset '" + name + "'");
    models.push_back(*preset);
  }
  std::vector<HardwareProfile> profiles;
  for (const auto& name : split_list(args.hw_list)) profiles.push_back(load_hw(name));

  const auto records = landscape(models, profiles, args.n_src, args.weight_bits);
  const std::string format = resolve_format(manifest.format, manifest.out, "csv");
  if (format == "json")
    write_output(manifest.out, sweep_to_json(records).dump(2) + "\n");
  else
    write_output(manifest.out, sweep_to_csv(records));
  return kExitOk;
}

// --- verify --------------------------------------------------------------

struct VerifyArgs {
  std::int64_t trials = 10000;
  std::int64_t max_n_src = 16;
  std::int64_t max_window = 32;
  std::string weight_budget = "0.99";  // total weight mass / theta; > 1 allows violations
};

int run_verify(const VerifyArgs& args, const RunManifest& manifest) {
  if (args.trials < 1) throw ConfigError("--trials must be >= 1");
  if (args.max_n_src < 1 || args.max_window < 1)
    throw ConfigError("--max-n-src and --max-window must be >= 1");
  const Rational budget = parse_decimal_flag(args.weight_budget, "--weight-budget");
  if (budget <= 0) throw ConfigError("--weight-budget must be > 0");

  Rng rng(manifest.seed);
  std::int64_t premise_ok_count = 0;
  std::int64_t oracle_mismatches = 0;       // among premise-satisfying runs
  std::int64_t equivalence_mismatches = 0;  // among premise-satisfying twin checks
  std::int64_t violation_mismatches = 0;    // |n_sim - n_oracle| > 0 outside the premise
  Integer max_violation_gap = 0;
  Rational max_eps = 0;

  for (std::int64_t trial = 0; trial < args.trials; ++trial) {
    const auto inst =
        random_if_instance(rng, args.max_n_src, args.max_window, budget);
    const auto trace = simulate_if(inst.inputs, inst.params);
    const auto oracle = spike_count_oracle(inst.counts, inst.params);
    if (trace.premise_ok) {
      ++premise_ok_count;
      if (oracle.count != trace.n) ++oracle_mismatches;
      const Rational eps = trace.residual / inst.params.threshold;
      if (eps > max_eps) max_eps = eps;
      const auto report = check_equivalence(inst.counts, inst.params,
                                            TwinSpec{inst.inputs.window(), inst.params.threshold});
      if (report.premise_ok && !report.match) ++equivalence_mismatches;
    } else {
      Integer gap = oracle.count - trace.n;
      if (gap < 0) gap = -gap;
      if (gap > 0) ++violation_mismatches;
      if (gap > max_violation_gap) max_violation_gap = gap;
    }
  }

  const std::int64_t violations = args.trials - premise_ok_count;
  json j;
  j["trials"] = args.trials;
  j["seed"] = manifest.seed;
  j["bounds"] = {{"max_n_src", args.max_n_src},
                 {"max_window", args.max_window},
                 {"weight_budget", args.weight_budget}};
  j["premise_ok"] = premise_ok_count;
  j["premise_violations"] = violations;
  j["violation_rate"] = static_cast<double>(violations) / static_cast<double>(args.trials);
  j["oracle_mismatches"] = oracle_mismatches;
  j["equivalence_mismatches"] = equivalence_mismatches;
  j["max_residual_eps"] = to_double(max_eps);
  j["out_of_premise_count_mismatches"] = violation_mismatches;
  j["max_out_of_premise_gap"] = max_violation_gap.str();
  const bool passed = oracle_mismatches == 0 && equivalence_mismatches == 0;
  j["passed"] = passed;

  const std::string format = resolve_format(manifest.format, manifest.out, "json");
  if (format == "json") {
    write_output(manifest.out, j.dump(2) + "\n");
  } else {
    std::string csv =
        "trials,seed,premise_ok,premise_violations,oracle_mismatches,"
        "equivalence_mismatches,max_residual_eps,out_of_premise_count_mismatches,passed\n";
    csv += std::to_string(args.trials) + ',' + std::to_string(manifest.seed) + ',' +
           std::to_string(premise_ok_count) + ',' + std::to_string(violations) + ',' +
           std::to_string(oracle_mismatches) + ',' + std::to_string(equivalence_mismatches) +
           ',' + format_real(to_double(max_eps), 6) + ',' +
           std::to_string(violation_mismatches) + ',' + (passed ? "true" : "false") + "\n";
    write_output(manifest.out, csv);
  }
  if (!passed)
    throw VerificationFailure(std::to_string(oracle_mismatches + equivalence_mismatches) +
                              " premise-satisfying mismatches");
  return kExitOk;
}

// --- presets ---------------------------------------------------------------

int run_presets(const RunManifest& manifest) {
  const std::string format = resolve_format(manifest.format, manifest.out, "json");
  json j;
  j["models"] = json::array();
  for (const auto& m : builtin_model_presets())
    j["models"].push_back(
        {{"name", m.name}, {"T", m.window}, {"s_r", to_double(m.spike_rate)}});
  j["hardware"] = json::array();
  for (const auto& hw : builtin_profiles()) j["hardware"].push_back(to_json(hw));
  if (const char* dir = std::getenv("SNN_TWIN_PROFILE_DIR")) j["profile_dir"] = dir;
  write_output(manifest.out, j.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "snntwin: analytical energy comparison of rate-coded spiking networks and their "
      "quantized twins"};
  app.require_subcommand(1);

  RunManifest manifest;
  EnergyArgs energy_args;
  BreakevenArgs breakeven_args;
  SweepArgs sweep_args;
  LandscapeArgs landscape_args;
  VerifyArgs verify_args;

  const auto add_common = [&](CLI::App* cmd, const char* default_hw = "typical-neuromorphic") {
    manifest.hw = default_hw;
    cmd->add_option("--hw", manifest.hw, "hardware profile name or JSON file path");
    cmd->add_option("--out", manifest.out, "output file (default: stdout)");
    cmd->add_option("--format", manifest.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", manifest.seed, "seed for all randomized behavior");
  };

  auto* energy = app.add_subcommand("energy", "energy breakdown of one twin pair");
  add_common(energy);
  energy->add_option("--config", manifest.config, "workload JSON file (flags override it)");
  energy->add_option("--model", energy_args.model,
                     "model preset: efficient, typical, high-performance");
  auto* opt_t = energy->add_option("--t", energy_args.window, "SNN window length (timesteps)");
  auto* opt_sr = energy->add_option("--s-r", energy_args.spike_rate, "SNN spike rate in [0,1]");
  auto* opt_gamma =
      energy->add_option("--gamma", energy_args.gamma, "QNN activation sparsity in [0,1]");
  energy->add_option(
      "--scenario", energy_args.scenario,
      "derive gamma from the spike rate; named from the SNN's side: 'best' = fewest spikes "
      "(maps to the densest QNN, gamma = 1 - s_r*T), 'worst' = most spikes (sparsest QNN, "
      "gamma = 1 - s_r), 'average' = uniform activations (gamma = 1 - 2*s_r*T/(T+1))");
  auto* opt_n = energy->add_option("--n-src", energy_args.n_src, "fan-in");
  auto* opt_bits = energy->add_option("--weight-bits", energy_args.weight_bits,
                                      "weight precision");
  energy->add_option("--snn-mode", energy_args.snn_mode,
                     "SNN transmission: auto, sparse, dense, aggregated")
      ->check(CLI::IsMember({"auto", "sparse", "dense", "aggregated"}));
  energy->add_flag("--strict-log2", energy_args.strict_log2,
                   "aggregated mode uses a log2(T)-bit word instead of ceil(log2(T+1))");
  energy->add_flag("--exact", energy_args.exact,
                   "keep the 1/N_src term in the compute-advantage check");

  auto* breakeven = app.add_subcommand("breakeven", "spike rate at which the twins' energies tie");
  add_common(breakeven);
  breakeven->add_option("--t", breakeven_args.window, "window length (or range start)");
  breakeven->add_option("--t-max", breakeven_args.window_max, "range end (inclusive)");
  breakeven->add_option("--n-src", breakeven_args.n_src, "fan-in");
  breakeven->add_option("--gamma", breakeven_args.gamma, "QNN activation sparsity");
  breakeven->add_option("--weight-bits", breakeven_args.weight_bits, "weight precision");

  auto* sweep = app.add_subcommand("sweep", "sensitivity grid over T, s_r, precision, fan-in");
  add_common(sweep);
  sweep->add_option("--t-min", sweep_args.t_min, "smallest window");
  sweep->add_option("--t-max", sweep_args.t_max, "largest window");
  sweep->add_option("--sr-min", sweep_args.sr_min, "spike-rate grid start");
  sweep->add_option("--sr-max", sweep_args.sr_max, "spike-rate grid end");
  sweep->add_option("--sr-step", sweep_args.sr_step, "spike-rate grid step");
  sweep->add_option("--bits", sweep_args.bits_list, "comma list of weight bit-widths");
  sweep->add_option("--n-list", sweep_args.n_list, "comma list of fan-ins");
  sweep->add_option("--gamma-qnn", sweep_args.gamma_qnn, "fixed QNN sparsity");

  auto* lands = app.add_subcommand("landscape", "model presets x hardware x scenarios grid");
  add_common(lands);
  lands->add_option("--models", landscape_args.models, "comma list of model presets");
  lands->add_option("--hw-list", landscape_args.hw_list, "comma list of hardware profiles");
  lands->add_option("--n-src", landscape_args.n_src, "fan-in");
  lands->add_option("--weight-bits", landscape_args.weight_bits, "weight precision");

  auto* verify = app.add_subcommand(
      "verify", "randomized simulation vs closed-form spike-count cross-check");
  add_common(verify);
  verify->add_option("--trials", verify_args.trials, "number of random instances");
  verify->add_option("--max-n-src", verify_args.max_n_src, "fan-in bound");
  verify->add_option("--max-window", verify_args.max_window, "window bound");
  verify->add_option("--weight-budget", verify_args.weight_budget,
                     "total weight mass relative to the threshold; values above 1 permit "
                     "bounded-current violations");

  auto* presets = app.add_subcommand("presets", "list built-in models and hardware profiles");
  add_common(presets);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  energy_args.window_set = opt_t->count() > 0;
  energy_args.spike_rate_set = opt_sr->count() > 0;
  energy_args.gamma_set = opt_gamma->count() > 0;
  energy_args.n_src_set = opt_n->count() > 0;
  energy_args.weight_bits_set = opt_bits->count() > 0;
  for (const auto* cmd : app.get_subcommands()) manifest.command = cmd->get_name();

  try {
    if (energy->parsed()) return run_energy(energy_args, manifest);
    if (breakeven->parsed()) return run_breakeven(breakeven_args, manifest);
    if (sweep->parsed()) return run_sweep(sweep_args, manifest);
    if (lands->parsed()) return run_landscape(landscape_args, manifest);
    if (verify->parsed()) return run_verify(verify_args, manifest);
    if (presets->parsed()) return run_presets(manifest);
  } catch (const VerificationFailure& e) {
    std::cerr << manifest.command << ": verification failed: " << e.what() << "\n";
    return kExitVerificationFailure;
  } catch (const IoError& e) {
    std::cerr << manifest.command << ": i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& e) {
    std::cerr << manifest.command << ": configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << manifest.command << ": configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << manifest.command << ": error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
