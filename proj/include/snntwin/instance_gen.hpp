#pragma once

#include <cstdint>
#include <vector>

#include "snntwin/neuron.hpp"
#include "snntwin/rational.hpp"
#include "snntwin/rng.hpp"
#include "snntwin/spike.hpp"

namespace snntwin {

struct RandomInstance {
  SpikeMatrix inputs;
  NeuronParams params;
  std::vector<std::int64_t> counts;
};

// Random IF instance for randomized verification. weight_budget scales the
// total weight mass relative to the threshold: below 1 the bounded-current
// premise is guaranteed (I(t) never exceeds the sum of all weights), above 1
// violations become possible.
inline RandomInstance random_if_instance(Rng& rng, std::int64_t max_n_src,
                                         std::int64_t max_window,
                                         const Rational& weight_budget) {
  const std::int64_t n_src = rng.range(1, max_n_src);
  const std::int64_t window = rng.range(1, max_window);
  const Rational theta(rng.range(1, 24), rng.range(1, 8));

  std::vector<Rational> raw(static_cast<std::size_t>(n_src));
  Rational raw_sum = 0;
  for (auto& w : raw) {
    w = Rational(rng.range(0, 48), 16);
    raw_sum += w;
  }
  RandomInstance inst;
  inst.params.threshold = theta;
  inst.params.weights.resize(raw.size());
  if (raw_sum > 0) {
    const Rational scale = weight_budget * theta / raw_sum;
    for (std::size_t j = 0; j < raw.size(); ++j) inst.params.weights[j] = raw[j] * scale;
  }

  inst.counts.resize(static_cast<std::size_t>(n_src));
  inst.inputs.trains.reserve(static_cast<std::size_t>(n_src));
  for (std::size_t j = 0; j < inst.counts.size(); ++j) {
    inst.counts[j] = rng.range(0, window);
    const bool even = rng.below(2) == 0;
    inst.inputs.trains.push_back(encode_rate(inst.counts[j], window,
                                             even ? SpikeSchedule::even_spaced
                                                  : SpikeSchedule::seeded_random,
                                             rng.next()));
  }
  return inst;
}

}  // namespace snntwin
