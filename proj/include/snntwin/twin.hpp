#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "snntwin/errors.hpp"
#include "snntwin/neuron.hpp"
#include "snntwin/rational.hpp"
#include "snntwin/spike.hpp"

namespace snntwin {

// Activation precision needed to represent the T+1 spike-count levels of a
// rate code: ceil(log2(T+1)).
inline int bits_for_window(std::int64_t window) {
  if (window < 1) throw std::domain_error("window must be >= 1");
  return static_cast<int>(std::bit_width(static_cast<std::uint64_t>(window)));
}

// The quantized counterpart of a T-step rate-coded neuron: same threshold,
// activations on the {0, 1/T, ..., 1} lattice.
struct TwinSpec {
  std::int64_t window;
  Rational theta;

  int activation_bits() const { return bits_for_window(window); }

  void validate() const {
    if (window < 1) throw std::domain_error("window must be >= 1");
    if (theta <= 0) throw std::domain_error("theta must be positive");
  }
};

enum class Scenario { worst, average, best };

inline const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::worst: return "worst";
    case Scenario::average: return "average";
    case Scenario::best: return "best";
  }
  return "?";
}

// Quantized activation h(z) = (1/T) * floor(z*T/theta), clamped to the
// representable levels 0..T.
struct QnnActivation {
  Integer level;   // numerator of h(z), i.e. h(z)*T after clamping
  Rational value;  // level / T
  bool clamped;    // raw level fell outside [0, T]
};

inline QnnActivation qnn_activation(const Rational& pre_activation, const TwinSpec& spec) {
  spec.validate();
  const Integer raw = floor_rational(pre_activation * spec.window / spec.theta);
  Integer level = raw;
  if (level < 0) level = 0;
  if (level > spec.window) level = spec.window;
  return {level, Rational(level, spec.window), level != raw};
}

struct EquivalenceReport {
  std::int64_t n_snn = 0;
  Integer n_qnn_level;  // h(z) * T
  bool match = false;
  bool premise_ok = false;
  Rational residual_eps;  // v(T) / theta
};

// Runs the SNN on an even-spaced encoding of the counts and compares its
// output spike count against the twin's activation level.
inline EquivalenceReport check_equivalence(const std::vector<std::int64_t>& counts,
                                           const NeuronParams& params, const TwinSpec& spec) {
  spec.validate();
  params.validate(static_cast<std::int64_t>(counts.size()));
  if (spec.theta != params.threshold)
    throw std::domain_error("twin spec threshold differs from neuron threshold");

  SpikeMatrix inputs;
  inputs.trains.reserve(counts.size());
  for (const std::int64_t k : counts) inputs.trains.push_back(encode_rate(k, spec.window));

  const SimulationTrace trace = simulate_if(inputs, params);

  Rational pre_activation = 0;  // z = sum_j w_j k_j / T
  for (std::size_t j = 0; j < counts.size(); ++j)
    pre_activation += params.weights[j] * counts[j];
  pre_activation /= spec.window;

  EquivalenceReport report;
  report.n_snn = trace.n;
  report.n_qnn_level = qnn_activation(pre_activation, spec).level;
  report.match = (report.n_qnn_level == report.n_snn);
  report.premise_ok = trace.premise_ok;
  report.residual_eps = trace.residual / params.threshold;
  return report;
}

namespace detail {
inline void check_unit_interval(const Rational& value, const char* what) {
  if (value < 0 || value > 1)
    throw std::domain_error(std::string(what) + " must lie in [0, 1]");
}
}  // namespace detail

// Admissible spike-rate interval [(1-gamma)/T, 1-gamma] for a twin pair
// with sparsity gamma.
inline std::pair<Rational, Rational> spike_rate_bounds(const Rational& sparsity,
                                                       std::int64_t window) {
  detail::check_unit_interval(sparsity, "sparsity");
  if (window < 1) throw std::domain_error("window must be >= 1");
  const Rational active = 1 - sparsity;
  return {active / window, active};
}

// Spike rate implied by a sparsity under one of the three scenarios
// (named from the SNN's side: best = fewest spikes).
inline Rational scenario_spike_rate(const Rational& sparsity, std::int64_t window, Scenario s) {
  detail::check_unit_interval(sparsity, "sparsity");
  if (window < 1) throw std::domain_error("window must be >= 1");
  const Rational active = 1 - sparsity;
  switch (s) {
    case Scenario::worst: return active;
    case Scenario::average: return active * (Rational(1, window) + 1) / 2;
    case Scenario::best: return active / window;
  }
  throw std::domain_error("unknown scenario");
}

// Inverse map, without the [0,1] feasibility check.
inline Rational scenario_sparsity_value(const Rational& spike_rate, std::int64_t window,
                                        Scenario s) {
  detail::check_unit_interval(spike_rate, "spike rate");
  if (window < 1) throw std::domain_error("window must be >= 1");
  switch (s) {
    case Scenario::worst: return 1 - spike_rate;
    case Scenario::average: return 1 - Rational(2) * spike_rate * window / (window + 1);
    case Scenario::best: return 1 - spike_rate * window;
  }
  throw std::domain_error("unknown scenario");
}

// Sparsity of the twin matching a given spike rate; throws when the
// scenario is infeasible (e.g. best-case with s_r * T > 1).
inline Rational scenario_sparsity(const Rational& spike_rate, std::int64_t window, Scenario s) {
  const Rational gamma = scenario_sparsity_value(spike_rate, window, s);
  if (gamma < 0 || gamma > 1)
    throw InfeasibleError(std::string(scenario_name(s)) + "-scenario sparsity " +
                          std::to_string(to_double(gamma)) + " outside [0, 1] (spike rate " +
                          std::to_string(to_double(spike_rate)) + " over window " +
                          std::to_string(window) + ")");
  return gamma;
}

}  // namespace snntwin
