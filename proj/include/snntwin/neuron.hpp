#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "snntwin/rational.hpp"
#include "snntwin/spike.hpp"

namespace snntwin {

// Integrate-and-fire neuron: weights plus firing threshold. No leakage,
// reset-by-subtraction, v(0) = 0.
struct NeuronParams {
  std::vector<Rational> weights;
  Rational threshold;

  void validate(std::int64_t n_src) const {
    if (threshold <= 0) throw std::domain_error("threshold must be positive");
    if (static_cast<std::int64_t>(weights.size()) != n_src)
      throw std::domain_error("weight count " + std::to_string(weights.size()) +
                              " does not match fan-in " + std::to_string(n_src));
  }
};

struct SimulationTrace {
  std::vector<Rational> potentials;  // v(1..T)
  SpikeTrain out_spikes;
  std::int64_t n = 0;       // output spike count
  Rational residual;        // v(T)
  bool premise_ok = false;  // 0 <= I(t) < theta held at every step
};

struct PremiseStep {
  Rational current;  // I(t)
  bool ok;           // 0 <= I(t) < theta
};

struct PremiseReport {
  std::vector<PremiseStep> steps;
  bool all_ok = true;
};

// Closed-form output spike count floor(sum_j w_j k_j / theta). Valid only
// when the per-step current stays in [0, theta); a negative weighted sum is
// outside that regime and is flagged rather than rejected.
struct OracleResult {
  Integer count;
  bool in_premise = true;  // weighted sum was non-negative
};

namespace detail {

// Common-denominator scaling: turns the rational recurrence into exact
// integer arithmetic for the hot loop.
struct ScaledParams {
  std::vector<Integer> weights;
  Integer threshold;
  Integer denom;
};

inline ScaledParams scale_params(const NeuronParams& params) {
  Integer denom = denominator(params.threshold);
  for (const auto& w : params.weights)
    denom = boost::multiprecision::lcm(denom, denominator(w));
  ScaledParams scaled;
  scaled.denom = denom;
  scaled.threshold = scale_to_integer(params.threshold, denom);
  scaled.weights.reserve(params.weights.size());
  for (const auto& w : params.weights) scaled.weights.push_back(scale_to_integer(w, denom));
  return scaled;
}

}  // namespace detail

// Exact simulation of v(t) = v(t-1) + I(t) - theta*s_out(t) with
// I(t) = sum_j w_j s_j(t); a spike is emitted whenever v(t-1) + I(t)
// reaches the threshold.
inline SimulationTrace simulate_if(const SpikeMatrix& inputs, const NeuronParams& params) {
  inputs.validate();
  params.validate(inputs.n_src());

  const auto scaled = detail::scale_params(params);
  const std::int64_t window = inputs.window();
  const std::size_t n_src = inputs.trains.size();

  SimulationTrace trace;
  trace.potentials.reserve(static_cast<std::size_t>(window));
  trace.out_spikes.slots.assign(static_cast<std::size_t>(window), 0);
  trace.premise_ok = true;

  Integer v = 0;
  for (std::int64_t t = 0; t < window; ++t) {
    Integer current = 0;
    for (std::size_t j = 0; j < n_src; ++j)
      if (inputs.trains[j].slots[static_cast<std::size_t>(t)]) current += scaled.weights[j];

    if (current < 0 || current >= scaled.threshold) trace.premise_ok = false;

    v += current;
    if (v >= scaled.threshold) {
      v -= scaled.threshold;
      trace.out_spikes.slots[static_cast<std::size_t>(t)] = 1;
      ++trace.n;
    }
    trace.potentials.emplace_back(v, scaled.denom);
  }
  trace.residual = trace.potentials.empty() ? Rational(0) : trace.potentials.back();
  return trace;
}

inline OracleResult spike_count_oracle(const std::vector<std::int64_t>& counts,
                                       const NeuronParams& params) {
  params.validate(static_cast<std::int64_t>(counts.size()));
  Rational weighted_sum = 0;
  for (std::size_t j = 0; j < counts.size(); ++j)
    weighted_sum += params.weights[j] * counts[j];
  OracleResult result;
  result.in_premise = weighted_sum >= 0;
  result.count = floor_rational(weighted_sum / params.threshold);
  return result;
}

// Per-timestep report of I(t) against [0, theta).
inline PremiseReport check_premise(const SpikeMatrix& inputs, const NeuronParams& params) {
  inputs.validate();
  params.validate(inputs.n_src());

  PremiseReport report;
  const std::int64_t window = inputs.window();
  report.steps.reserve(static_cast<std::size_t>(window));
  for (std::int64_t t = 0; t < window; ++t) {
    Rational current = 0;
    for (std::size_t j = 0; j < inputs.trains.size(); ++j)
      if (inputs.trains[j].slots[static_cast<std::size_t>(t)]) current += params.weights[j];
    const bool ok = current >= 0 && current < params.threshold;
    report.all_ok = report.all_ok && ok;
    report.steps.push_back({std::move(current), ok});
  }
  return report;
}

// Per-channel spike counts of a matrix; the oracle's natural input.
inline std::vector<std::int64_t> channel_counts(const SpikeMatrix& inputs) {
  std::vector<std::int64_t> counts;
  counts.reserve(inputs.trains.size());
  for (const auto& train : inputs.trains) counts.push_back(train.count());
  return counts;
}

}  // namespace snntwin
