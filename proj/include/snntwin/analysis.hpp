#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "snntwin/energy.hpp"
#include "snntwin/hardware.hpp"
#include "snntwin/rational.hpp"
#include "snntwin/twin.hpp"

namespace snntwin {

// Named SNN operating point used by the landscape sweep.
struct ModelPreset {
  std::string name;
  std::int64_t window;
  Rational spike_rate;
};

inline std::vector<ModelPreset> builtin_model_presets() {
  return {{"efficient", 2, parse_decimal("0.02")},
          {"typical", 4, parse_decimal("0.1")},
          {"high-performance", 32, parse_decimal("0.20")}};
}

// Spike rate at which event-driven transmission stops paying off:
// above (E_move_dense + E_weight) / (E_move_sparse + E_weight) the dense
// broadcast is cheaper. Can exceed 1 when the per-bit costs are close.
inline Rational sparse_dense_threshold(const HardwareProfile& hw, int weight_bits) {
  const Rational& e_w = hw.weight_pj(weight_bits);
  const Rational denom = hw.e_move_sparse + e_w;
  if (denom == 0) throw std::domain_error("e_move_sparse + e_weight must be > 0");
  return (hw.e_move_dense + e_w) / denom;
}

// E_SNN(s_r) is piecewise affine with at most two segments (sparse below the
// transmission threshold, dense above), so the breakeven with the fixed QNN
// energy is solved segment-by-segment in closed form.
struct BreakevenResult {
  enum class Status { root, infeasible, always_snn };
  Status status = Status::infeasible;
  std::optional<Rational> s_star;
  MoveMode segment = MoveMode::sparse;  // transmission mode active at the root
  Rational s_lo, s_hi;                  // evaluated bracket endpoints
  Rational e_lo, e_hi;                  // E_SNN at the bracket
  Rational qnn_energy_pj;
};

inline const char* breakeven_status_name(BreakevenResult::Status s) {
  switch (s) {
    case BreakevenResult::Status::root: return "root";
    case BreakevenResult::Status::infeasible: return "infeasible";
    case BreakevenResult::Status::always_snn: return "always-snn";
  }
  return "?";
}

inline BreakevenResult breakeven_spike_rate(std::int64_t window, std::int64_t n_src,
                                            const Rational& gamma_qnn, int weight_bits,
                                            const HardwareProfile& hw) {
  WorkloadConfig cfg{n_src, window, Rational(0), gamma_qnn, weight_bits};
  cfg.validate();
  const Rational e_qnn = total_energy(cfg, hw).qnn.total_pj;
  const Rational& e_w = hw.weight_pj(weight_bits);

  // segment coefficients: E(s) = intercept + slope * s
  const Rational compute_slope = Rational(n_src) * window * hw.e_acc + Rational(window) * hw.e_sub;
  const Rational c_sparse = Rational(window) * hw.e_cmp;
  const Rational m_sparse = compute_slope + Rational(n_src) * window * (hw.e_move_sparse + e_w);
  const Rational c_dense = c_sparse + Rational(n_src) * window * (hw.e_move_dense + e_w);
  const Rational m_dense = compute_slope;

  // A free sparse path (zero per-bit and per-weight cost) never loses to
  // dense, so the sparse segment covers the whole rate axis.
  Rational split = hw.e_move_sparse + e_w == 0 ? Rational(1)
                                               : sparse_dense_threshold(hw, weight_bits);
  if (split > 1) split = 1;

  const Rational e_at_0 = c_sparse;
  const Rational e_at_1 = split < 1 ? c_dense + m_dense : c_sparse + m_sparse;

  BreakevenResult result;
  result.qnn_energy_pj = e_qnn;
  result.s_lo = 0;
  result.s_hi = 1;
  result.e_lo = e_at_0;
  result.e_hi = e_at_1;

  if (e_qnn < e_at_0) {
    result.status = BreakevenResult::Status::infeasible;
    return result;
  }
  if (e_qnn > e_at_1) {
    result.status = BreakevenResult::Status::always_snn;
    result.s_star = 1;
    result.segment = split < 1 ? MoveMode::dense : MoveMode::sparse;
    return result;
  }

  const auto solve_segment = [&](const Rational& intercept, const Rational& slope,
                                 const Rational& lo, const Rational& hi) -> std::optional<Rational> {
    if (slope == 0) return intercept == e_qnn ? std::optional<Rational>(lo) : std::nullopt;
    const Rational s = (e_qnn - intercept) / slope;
    if (s >= lo && s <= hi) return s;
    return std::nullopt;
  };

  std::optional<Rational> root = solve_segment(c_sparse, m_sparse, Rational(0), split);
  if (!root && split < 1) root = solve_segment(c_dense, m_dense, split, Rational(1));
  if (!root) {  // continuity guarantees one; reachable only through rounding-free ties
    result.status = BreakevenResult::Status::infeasible;
    return result;
  }

  result.status = BreakevenResult::Status::root;
  result.s_star = *root;
  result.segment = *root < split ? MoveMode::sparse : MoveMode::dense;
  if (result.segment == MoveMode::sparse) {
    result.s_lo = 0;
    result.s_hi = split;
    result.e_lo = c_sparse;
    result.e_hi = c_sparse + m_sparse * split;
  } else {
    result.s_lo = split;
    result.s_hi = 1;
    result.e_lo = c_dense + m_dense * split;
    result.e_hi = c_dense + m_dense;
  }
  return result;
}

// One evaluated grid point of a sweep.
struct SweepRecord {
  std::string model;
  std::string hw;
  std::string scenario;
  WorkloadConfig cfg;  // cfg.sparsity may be out of range when infeasible
  bool feasible = true;
  EnergyBreakdown snn;
  EnergyBreakdown qnn;
  double ratio = 0.0;
  bool compute_advantage_holds = false;
  bool data_advantage_holds = false;
  bool total_advantage_holds = false;
};

namespace detail {

inline SweepRecord evaluate_point(std::string model, std::string scenario,
                                  const WorkloadConfig& cfg, const HardwareProfile& hw) {
  SweepRecord rec;
  rec.model = std::move(model);
  rec.hw = hw.name;
  rec.scenario = std::move(scenario);
  rec.cfg = cfg;
  const EnergyPair pair = total_energy(cfg, hw);
  rec.snn = pair.snn;
  rec.qnn = pair.qnn;
  rec.ratio = energy_ratio(pair);
  rec.compute_advantage_holds = pair.snn.compute_pj <= pair.qnn.compute_pj;
  rec.data_advantage_holds = pair.snn.data_pj <= pair.qnn.data_pj;
  rec.total_advantage_holds = pair.snn.total_pj <= pair.qnn.total_pj;
  return rec;
}

}  // namespace detail

// Model-presets x hardware x scenarios grid. The twin's sparsity is derived
// from the preset's spike rate per scenario; points where that mapping
// leaves [0,1] are emitted as infeasibility markers.
inline std::vector<SweepRecord> landscape(const std::vector<ModelPreset>& models,
                                          const std::vector<HardwareProfile>& profiles,
                                          std::int64_t n_src = 4096, int weight_bits = 8) {
  static constexpr Scenario kScenarios[] = {Scenario::worst, Scenario::average, Scenario::best};
  std::vector<SweepRecord> records;
  records.reserve(models.size() * profiles.size() * 3);
  for (const auto& model : models) {
    for (const auto& hw : profiles) {
      for (const Scenario scenario : kScenarios) {
        const Rational gamma = scenario_sparsity_value(model.spike_rate, model.window, scenario);
        WorkloadConfig cfg{n_src, model.window, model.spike_rate, gamma, weight_bits};
        if (gamma < 0 || gamma > 1) {
          SweepRecord rec;
          rec.model = model.name;
          rec.hw = hw.name;
          rec.scenario = scenario_name(scenario);
          rec.cfg = cfg;
          rec.feasible = false;
          records.push_back(std::move(rec));
          continue;
        }
        records.push_back(detail::evaluate_point(model.name, scenario_name(scenario), cfg, hw));
      }
    }
  }
  return records;
}

struct BreakevenRecord {
  std::string hw;
  std::int64_t window;
  std::int64_t n_src;
  int weight_bits;
  Rational gamma_qnn;
  BreakevenResult result;
};

struct SensitivityResult {
  std::vector<SweepRecord> records;
  std::vector<BreakevenRecord> breakevens;
};

// Cross-product sweep of (T, weight_bits, n_src, s_r) against one hardware
// profile with the QNN pinned at a fixed sparsity, plus one breakeven
// solve per (T, weight_bits, n_src) as companion records.
inline SensitivityResult sensitivity(const std::vector<std::int64_t>& windows,
                                     const std::vector<Rational>& spike_rates,
                                     const std::vector<int>& weight_bits_set,
                                     const std::vector<std::int64_t>& n_src_set,
                                     const HardwareProfile& hw, const Rational& gamma_qnn) {
  if (windows.empty() || spike_rates.empty() || weight_bits_set.empty() || n_src_set.empty())
    throw std::domain_error("sensitivity grids must be non-empty");
  SensitivityResult out;
  out.records.reserve(windows.size() * weight_bits_set.size() * n_src_set.size() *
                      spike_rates.size());
  for (const std::int64_t window : windows) {
    for (const int bits : weight_bits_set) {
      for (const std::int64_t n : n_src_set) {
        for (const Rational& s_r : spike_rates) {
          WorkloadConfig cfg{n, window, s_r, gamma_qnn, bits};
          out.records.push_back(detail::evaluate_point("sweep", "fixed", cfg, hw));
        }
        out.breakevens.push_back(
            {hw.name, window, n, bits, gamma_qnn,
             breakeven_spike_rate(window, n, gamma_qnn, bits, hw)});
      }
    }
  }
  return out;
}

// --- report emission --------------------------------------------------------

inline std::string format_real(double v, int significant_digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, v);
  return buf;
}

inline constexpr const char* kSweepCsvHeader =
    "model,hw,scenario,T,s_r,gamma,n_src,weight_bits,activation_bits,"
    "e_snn_compute_pj,e_snn_data_pj,e_snn_total_pj,snn_mode,"
    "e_qnn_compute_pj,e_qnn_data_pj,e_qnn_total_pj,ratio,feasible";

inline std::string sweep_to_csv(const std::vector<SweepRecord>& records) {
  std::string out = kSweepCsvHeader;
  out += '\n';
  for (const auto& r : records) {
    out += r.model + ',' + r.hw + ',' + r.scenario + ',';
    out += std::to_string(r.cfg.window) + ',';
    out += format_real(to_double(r.cfg.spike_rate)) + ',';
    out += format_real(to_double(r.cfg.sparsity)) + ',';
    out += std::to_string(r.cfg.n_src) + ',';
    out += std::to_string(r.cfg.weight_bits) + ',';
    out += std::to_string(r.cfg.activation_bits()) + ',';
    if (r.feasible) {
      out += format_real(to_double(r.snn.compute_pj)) + ',';
      out += format_real(to_double(r.snn.data_pj)) + ',';
      out += format_real(to_double(r.snn.total_pj)) + ',';
      out += std::string(move_mode_name(r.snn.transmission_mode)) + ',';
      out += format_real(to_double(r.qnn.compute_pj)) + ',';
      out += format_real(to_double(r.qnn.data_pj)) + ',';
      out += format_real(to_double(r.qnn.total_pj)) + ',';
      out += format_real(r.ratio, 6);
      out += ",true";
    } else {
      out += ",,,,,,,,false";
    }
    out += '\n';
  }
  return out;
}

inline nlohmann::json sweep_to_json(const std::vector<SweepRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json j;
    j["model"] = r.model;
    j["hw"] = r.hw;
    j["scenario"] = r.scenario;
    j["T"] = r.cfg.window;
    j["s_r"] = to_double(r.cfg.spike_rate);
    j["gamma"] = to_double(r.cfg.sparsity);
    j["n_src"] = r.cfg.n_src;
    j["weight_bits"] = r.cfg.weight_bits;
    j["activation_bits"] = r.cfg.activation_bits();
    j["feasible"] = r.feasible;
    if (r.feasible) {
      j["e_snn_compute_pj"] = to_double(r.snn.compute_pj);
      j["e_snn_data_pj"] = to_double(r.snn.data_pj);
      j["e_snn_total_pj"] = to_double(r.snn.total_pj);
      j["snn_mode"] = move_mode_name(r.snn.transmission_mode);
      j["e_qnn_compute_pj"] = to_double(r.qnn.compute_pj);
      j["e_qnn_data_pj"] = to_double(r.qnn.data_pj);
      j["e_qnn_total_pj"] = to_double(r.qnn.total_pj);
      j["ratio"] = r.ratio;
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

inline constexpr const char* kBreakevenCsvHeader =
    "hw,T,n_src,weight_bits,gamma_qnn,status,s_star,segment,e_qnn_pj";

inline std::string breakevens_to_csv(const std::vector<BreakevenRecord>& records) {
  std::string out = kBreakevenCsvHeader;
  out += '\n';
  for (const auto& r : records) {
    out += r.hw + ',';
    out += std::to_string(r.window) + ',';
    out += std::to_string(r.n_src) + ',';
    out += std::to_string(r.weight_bits) + ',';
    out += format_real(to_double(r.gamma_qnn)) + ',';
    out += breakeven_status_name(r.result.status);
    out += ',';
    if (r.result.s_star) {
      out += format_real(to_double(*r.result.s_star)) + ',';
      out += move_mode_name(r.result.segment);
    } else {
      out += ",";
    }
    out += ',';
    out += format_real(to_double(r.result.qnn_energy_pj));
    out += '\n';
  }
  return out;
}

inline nlohmann::json breakeven_to_json(const BreakevenRecord& r) {
  nlohmann::json j;
  j["hw"] = r.hw;
  j["T"] = r.window;
  j["n_src"] = r.n_src;
  j["weight_bits"] = r.weight_bits;
  j["gamma_qnn"] = to_double(r.gamma_qnn);
  j["status"] = breakeven_status_name(r.result.status);
  if (r.result.s_star) {
    j["s_star"] = to_double(*r.result.s_star);
    j["segment"] = move_mode_name(r.result.segment);
  }
  j["bracket"] = {{"s_lo", to_double(r.result.s_lo)},
                  {"s_hi", to_double(r.result.s_hi)},
                  {"e_lo_pj", to_double(r.result.e_lo)},
                  {"e_hi_pj", to_double(r.result.e_hi)}};
  j["e_qnn_pj"] = to_double(r.result.qnn_energy_pj);
  return j;
}

inline nlohmann::json breakevens_to_json(const std::vector<BreakevenRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) arr.push_back(breakeven_to_json(r));
  return arr;
}

}  // namespace snntwin
