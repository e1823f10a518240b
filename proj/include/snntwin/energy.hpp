#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "snntwin/hardware.hpp"
#include "snntwin/rational.hpp"
#include "snntwin/twin.hpp"

namespace snntwin {

// One operating point of a twin pair: SNN side characterized by
// (window, spike_rate), QNN side by sparsity, both sharing fan-in and
// weight precision. Activation bits are always derived from the window.
struct WorkloadConfig {
  std::int64_t n_src = 1;
  std::int64_t window = 1;
  Rational spike_rate;  // s_r in [0, 1]
  Rational sparsity;    // gamma in [0, 1]
  int weight_bits = 8;

  int activation_bits() const { return bits_for_window(window); }

  void validate() const {
    if (n_src < 1) throw std::domain_error("n_src must be >= 1");
    if (window < 1) throw std::domain_error("window must be >= 1");
    if (spike_rate < 0 || spike_rate > 1)
      throw std::domain_error("spike rate must lie in [0, 1]");
    if (sparsity < 0 || sparsity > 1)
      throw std::domain_error("sparsity must lie in [0, 1]");
    if (weight_bits < 1) throw std::domain_error("weight_bits must be >= 1");
  }
};

enum class MoveMode { sparse, dense };

inline const char* move_mode_name(MoveMode m) {
  return m == MoveMode::sparse ? "sparse" : "dense";
}

enum class SnnTransmission { automatic, sparse, dense, aggregated };

// E_MAC / E_ACC, the multiplier-to-adder energy ratio.
struct MacRatio {
  Rational k;
};

inline MacRatio mac_ratio(const WorkloadConfig& cfg, const HardwareProfile& hw) {
  if (hw.e_acc <= 0) throw ConfigError("profile '" + hw.name + "': e_acc must be > 0 for k");
  const Rational& mac = hw.mac_pj(cfg.activation_bits(), cfg.weight_bits);
  if (mac <= 0) throw ConfigError("profile '" + hw.name + "': e_mac must be > 0 for k");
  return {mac / hw.e_acc};
}

// --- core computation -------------------------------------------------------

// QNN forward pass: one MAC per non-zero input plus two comparisons for
// activation clamping.
inline Rational compute_energy_qnn(const WorkloadConfig& cfg, const HardwareProfile& hw) {
  cfg.validate();
  const Rational& mac = hw.mac_pj(cfg.activation_bits(), cfg.weight_bits);
  return Rational(cfg.n_src) * (1 - cfg.sparsity) * mac + 2 * hw.e_cmp;
}

// SNN forward pass: an accumulate per input spike plus per-timestep
// threshold compare and, on firing steps, a subtraction.
inline Rational compute_energy_snn(const WorkloadConfig& cfg, const HardwareProfile& hw) {
  cfg.validate();
  return Rational(cfg.n_src) * cfg.window * cfg.spike_rate * hw.e_acc +
         Rational(cfg.window) * (hw.e_cmp + cfg.spike_rate * hw.e_sub);
}

struct AdvantageResult {
  bool holds;       // SNN at or below QNN (ties count as holding)
  Rational margin;  // slack, in units of N_src * E_ACC when comparable
};

// SNN compute advantage. When the three unit costs coincide the condition
// reduces to T*s_r + (T + T*s_r - 2)/N_src <= k*(1-gamma); with exact=false
// the 1/N_src term is dropped. Unequal costs fall back to comparing the two
// compute energies directly.
inline AdvantageResult compute_advantage(const WorkloadConfig& cfg, const HardwareProfile& hw,
                                         bool exact) {
  cfg.validate();
  const bool uniform_costs = hw.e_acc == hw.e_cmp && hw.e_cmp == hw.e_sub && hw.e_acc > 0;
  if (uniform_costs) {
    const Rational k = hw.mac_pj(cfg.activation_bits(), cfg.weight_bits) / hw.e_acc;
    const Rational ts = Rational(cfg.window) * cfg.spike_rate;
    Rational lhs = ts;
    if (exact) lhs += (cfg.window + ts - 2) / cfg.n_src;
    const Rational margin = k * (1 - cfg.sparsity) - lhs;
    return {margin >= 0, margin};
  }
  const Rational diff = compute_energy_qnn(cfg, hw) - compute_energy_snn(cfg, hw);
  const Rational unit = hw.e_acc > 0 ? Rational(cfg.n_src) * hw.e_acc : Rational(1);
  return {diff >= 0, diff / unit};
}

// --- data movement ----------------------------------------------------------

// QNN moves one B-bit activation per (non-zero, when sparse) input and
// fetches each required weight once.
inline Rational data_energy_qnn(const WorkloadConfig& cfg, const HardwareProfile& hw,
                                MoveMode mode) {
  cfg.validate();
  const Rational& e_w = hw.weight_pj(cfg.weight_bits);
  const Rational bits(cfg.activation_bits());
  if (mode == MoveMode::sparse)
    return Rational(cfg.n_src) * (1 - cfg.sparsity) * (bits * hw.e_move_sparse + e_w);
  return Rational(cfg.n_src) * (bits * hw.e_move_dense + e_w);
}

// SNN moves 1-bit spikes over T timesteps; every handled slot refetches the
// weight.
inline Rational data_energy_snn(const WorkloadConfig& cfg, const HardwareProfile& hw,
                                MoveMode mode) {
  cfg.validate();
  const Rational& e_w = hw.weight_pj(cfg.weight_bits);
  if (mode == MoveMode::sparse)
    return Rational(cfg.n_src) * cfg.window * cfg.spike_rate * (hw.e_move_sparse + e_w);
  return Rational(cfg.n_src) * cfg.window * (hw.e_move_dense + e_w);
}

// Aggregated transmission: the whole spike train is sent once as a B-bit
// count, so the effective sparsity is the activation-level gamma and the
// cost structure matches the QNN's. B defaults to ceil(log2(T+1)); the
// strict_log2 switch reproduces the plain log2(T) width instead.
inline Rational data_energy_snn_aggregated(const WorkloadConfig& cfg, const HardwareProfile& hw,
                                           MoveMode mode, bool strict_log2 = false) {
  cfg.validate();
  const Rational& e_w = hw.weight_pj(cfg.weight_bits);
  const Rational bits = strict_log2
                            ? Rational(std::log2(static_cast<double>(cfg.window)))
                            : Rational(cfg.activation_bits());
  if (mode == MoveMode::sparse)
    return Rational(cfg.n_src) * (1 - cfg.sparsity) * (bits * hw.e_move_sparse + e_w);
  return Rational(cfg.n_src) * (bits * hw.e_move_dense + e_w);
}

// F(lambda) = (B*lambda + E_weight) / (E_move_sparse + E_weight), the factor
// all data-movement advantage thresholds are expressed in. lambda is the
// QNN's per-bit move cost, picked by mode.
inline Rational factor_f(MoveMode lambda_mode, std::int64_t window, int weight_bits,
                         const HardwareProfile& hw) {
  if (window < 1) throw std::domain_error("window must be >= 1");
  const Rational& e_w = hw.weight_pj(weight_bits);
  const Rational denom = hw.e_move_sparse + e_w;
  if (denom == 0) throw std::domain_error("e_move_sparse + e_weight must be > 0 for F");
  const Rational lambda = lambda_mode == MoveMode::sparse ? hw.e_move_sparse : hw.e_move_dense;
  return (Rational(bits_for_window(window)) * lambda + e_w) / denom;
}

enum class ThresholdKind { none, max_window, min_sparsity };

struct DataAdvantage {
  bool holds;
  ThresholdKind kind = ThresholdKind::none;
  std::optional<Rational> threshold;  // absent when unconditional or infinite
  bool degenerate = false;            // gamma = 1: both sides vanish or SNN is free
};

// Closed-form conditions for the sparse SNN data path to be at or below the
// chosen QNN variant, with the spike rate fixed by the scenario. All were
// derived by dividing out (1-gamma), so gamma = 1 is handled up front: the
// scenario spike rate is then 0 and the SNN side costs nothing.
inline DataAdvantage data_advantage(const WorkloadConfig& cfg, const HardwareProfile& hw,
                                    Scenario scenario, MoveMode qnn_mode) {
  cfg.validate();
  const Rational gamma = cfg.sparsity;
  const std::int64_t window = cfg.window;

  if (scenario == Scenario::best && qnn_mode == MoveMode::sparse)
    return {true, ThresholdKind::none, std::nullopt, false};
  if (scenario == Scenario::best) {  // vs dense QNN: gamma >= 1 - F(dense)
    const Rational threshold = 1 - factor_f(MoveMode::dense, window, cfg.weight_bits, hw);
    return {gamma >= threshold, ThresholdKind::min_sparsity, threshold, false};
  }

  if (gamma == 1)
    return {true, ThresholdKind::max_window, std::nullopt, true};

  Rational threshold;
  if (scenario == Scenario::average && qnn_mode == MoveMode::sparse)
    threshold = 2 * factor_f(MoveMode::sparse, window, cfg.weight_bits, hw) - 1;
  else if (scenario == Scenario::average)
    threshold = 2 * factor_f(MoveMode::dense, window, cfg.weight_bits, hw) / (1 - gamma) - 1;
  else if (qnn_mode == MoveMode::sparse)
    threshold = factor_f(MoveMode::sparse, window, cfg.weight_bits, hw);
  else
    threshold = factor_f(MoveMode::dense, window, cfg.weight_bits, hw) / (1 - gamma);
  return {Rational(window) <= threshold, ThresholdKind::max_window, threshold, false};
}

// --- assembly ---------------------------------------------------------------

struct EnergyBreakdown {
  Rational compute_pj;
  Rational data_pj;
  Rational total_pj;
  MoveMode transmission_mode = MoveMode::dense;
  bool aggregated = false;
  std::vector<std::pair<std::string, Rational>> terms;
};

struct EnergyPair {
  EnergyBreakdown snn;
  EnergyBreakdown qnn;
};

namespace detail {

// Ties between equal sparse/dense costs resolve to dense.
inline MoveMode cheaper_mode(const Rational& sparse_pj, const Rational& dense_pj) {
  return sparse_pj < dense_pj ? MoveMode::sparse : MoveMode::dense;
}

inline void add_data_terms(EnergyBreakdown& b, const Rational& activation_move,
                           const Rational& weight_fetch) {
  b.terms.emplace_back("activation-move", activation_move);
  b.terms.emplace_back("weight-fetch", weight_fetch);
}

}  // namespace detail

// Total energy of both twins: compute plus data movement. The QNN data term
// is always min(sparse, dense); the SNN follows the requested transmission
// strategy ('automatic' takes the min too, 'aggregated' is the compressed
// spike-count encoding).
inline EnergyPair total_energy(const WorkloadConfig& cfg, const HardwareProfile& hw,
                               SnnTransmission snn_mode = SnnTransmission::automatic,
                               bool strict_log2_aggregated = false) {
  cfg.validate();
  EnergyPair pair;

  // QNN side
  {
    EnergyBreakdown& q = pair.qnn;
    const Rational active_ops =
        Rational(cfg.n_src) * (1 - cfg.sparsity) * hw.mac_pj(cfg.activation_bits(), cfg.weight_bits);
    const Rational clamping = 2 * hw.e_cmp;
    q.compute_pj = active_ops + clamping;
    q.terms.emplace_back("active-ops", active_ops);
    q.terms.emplace_back("clamping", clamping);

    const Rational sparse_pj = data_energy_qnn(cfg, hw, MoveMode::sparse);
    const Rational dense_pj = data_energy_qnn(cfg, hw, MoveMode::dense);
    q.transmission_mode = detail::cheaper_mode(sparse_pj, dense_pj);
    q.data_pj = q.transmission_mode == MoveMode::sparse ? sparse_pj : dense_pj;
    const Rational& e_w = hw.weight_pj(cfg.weight_bits);
    if (q.transmission_mode == MoveMode::sparse)
      detail::add_data_terms(q, q.data_pj - Rational(cfg.n_src) * (1 - cfg.sparsity) * e_w,
                             Rational(cfg.n_src) * (1 - cfg.sparsity) * e_w);
    else
      detail::add_data_terms(q, q.data_pj - Rational(cfg.n_src) * e_w,
                             Rational(cfg.n_src) * e_w);
    q.total_pj = q.compute_pj + q.data_pj;
  }

  // SNN side
  {
    EnergyBreakdown& s = pair.snn;
    const Rational membrane_update = Rational(cfg.n_src) * cfg.window * cfg.spike_rate * hw.e_acc;
    const Rational spiking_ops = Rational(cfg.window) * (hw.e_cmp + cfg.spike_rate * hw.e_sub);
    s.compute_pj = membrane_update + spiking_ops;
    s.terms.emplace_back("membrane-update", membrane_update);
    s.terms.emplace_back("spiking-ops", spiking_ops);

    const Rational& e_w = hw.weight_pj(cfg.weight_bits);
    Rational sparse_pj, dense_pj, sparse_weight, dense_weight;
    if (snn_mode == SnnTransmission::aggregated) {
      s.aggregated = true;
      sparse_pj = data_energy_snn_aggregated(cfg, hw, MoveMode::sparse, strict_log2_aggregated);
      dense_pj = data_energy_snn_aggregated(cfg, hw, MoveMode::dense, strict_log2_aggregated);
      sparse_weight = Rational(cfg.n_src) * (1 - cfg.sparsity) * e_w;
      dense_weight = Rational(cfg.n_src) * e_w;
    } else {
      sparse_pj = data_energy_snn(cfg, hw, MoveMode::sparse);
      dense_pj = data_energy_snn(cfg, hw, MoveMode::dense);
      sparse_weight = Rational(cfg.n_src) * cfg.window * cfg.spike_rate * e_w;
      dense_weight = Rational(cfg.n_src) * cfg.window * e_w;
    }

    switch (snn_mode) {
      case SnnTransmission::sparse: s.transmission_mode = MoveMode::sparse; break;
      case SnnTransmission::dense: s.transmission_mode = MoveMode::dense; break;
      default: s.transmission_mode = detail::cheaper_mode(sparse_pj, dense_pj); break;
    }
    if (s.transmission_mode == MoveMode::sparse) {
      s.data_pj = sparse_pj;
      detail::add_data_terms(s, sparse_pj - sparse_weight, sparse_weight);
    } else {
      s.data_pj = dense_pj;
      detail::add_data_terms(s, dense_pj - dense_weight, dense_weight);
    }
    s.total_pj = s.compute_pj + s.data_pj;
  }

  return pair;
}

// E_SNN / E_QNN as a reporting double; exact 1.0 when the totals tie.
inline double energy_ratio(const EnergyPair& pair) {
  if (pair.qnn.total_pj == 0)
    return pair.snn.total_pj == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  if (pair.snn.total_pj == pair.qnn.total_pj) return 1.0;
  return to_double(pair.snn.total_pj / pair.qnn.total_pj);
}

}  // namespace snntwin
