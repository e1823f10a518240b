#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "snntwin/rng.hpp"

namespace snntwin {

// Binary spike train over a window of T timesteps.
struct SpikeTrain {
  std::vector<std::uint8_t> slots;  // each 0 or 1

  std::int64_t window() const { return static_cast<std::int64_t>(slots.size()); }

  std::int64_t count() const {
    return std::accumulate(slots.begin(), slots.end(), std::int64_t{0});
  }
};

// N_src parallel spike trains sharing one window.
struct SpikeMatrix {
  std::vector<SpikeTrain> trains;

  std::int64_t n_src() const { return static_cast<std::int64_t>(trains.size()); }

  std::int64_t window() const { return trains.empty() ? 0 : trains.front().window(); }

  void validate() const {
    if (trains.empty()) throw std::domain_error("spike matrix needs at least one train");
    const std::int64_t t = trains.front().window();
    if (t < 1) throw std::domain_error("spike window must be positive");
    for (const auto& train : trains) {
      if (train.window() != t)
        throw std::domain_error("all spike trains must share the same window");
      for (const auto slot : train.slots)
        if (slot > 1) throw std::domain_error("spike slots must be 0 or 1");
    }
  }
};

enum class SpikeSchedule { even_spaced, seeded_random };

// Rate-encodes an integer count k into a T-slot train with exactly k ones.
// even_spaced puts them at floor(i*T/k); seeded_random draws a uniform
// k-subset of the slots. Spike timing never changes the count, so the
// placement rule is a determinism convenience, not a model choice.
inline SpikeTrain encode_rate(std::int64_t k, std::int64_t window,
                              SpikeSchedule schedule = SpikeSchedule::even_spaced,
                              std::uint64_t seed = 0) {
  if (window < 1) throw std::domain_error("window must be >= 1");
  if (k < 0 || k > window)
    throw std::domain_error("spike count " + std::to_string(k) + " outside [0, " +
                            std::to_string(window) + "]");
  SpikeTrain train;
  train.slots.assign(static_cast<std::size_t>(window), 0);
  if (k == 0) return train;

  if (schedule == SpikeSchedule::even_spaced) {
    for (std::int64_t i = 0; i < k; ++i)
      train.slots[static_cast<std::size_t>(i * window / k)] = 1;
  } else {
    // partial Fisher-Yates over slot indices
    Rng rng(seed);
    std::vector<std::int64_t> idx(static_cast<std::size_t>(window));
    std::iota(idx.begin(), idx.end(), 0);
    for (std::int64_t i = 0; i < k; ++i) {
      const std::int64_t j = i + rng.range(0, window - 1 - i);
      std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
      train.slots[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] = 1;
    }
  }
  return train;
}

}  // namespace snntwin
