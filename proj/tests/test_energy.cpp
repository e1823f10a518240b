#include <catch2/catch_amalgamated.hpp>

#include "snntwin/energy.hpp"
#include "snntwin/hardware.hpp"

using namespace snntwin;

namespace {

HardwareProfile typical() { return resolve_profile("typical-neuromorphic"); }

WorkloadConfig fig3_typical_point() {
  // N_src = 4096, T = 4, s_r = 0.1, gamma = 0.8, 8-bit weights
  return {4096, 4, Rational(1, 10), Rational(8, 10), 8};
}

}  // namespace

TEST_CASE("compute_energy_qnn") {
  auto hw = typical();
  WorkloadConfig cfg = fig3_typical_point();

  SECTION("fully sparse input leaves only clamping") {
    cfg.sparsity = 1;
    CHECK(compute_energy_qnn(cfg, hw) == 2 * hw.e_cmp);
  }
  SECTION("reference point") {
    hw.e_mac[{3, 8}] = parse_decimal("0.2724");
    CHECK(compute_energy_qnn(cfg, hw) == parse_decimal("223.25904"));
  }
  SECTION("single dense MAC") {
    cfg.n_src = 1;
    cfg.sparsity = 0;
    CHECK(compute_energy_qnn(cfg, hw) == hw.mac_pj(3, 8) + 2 * hw.e_cmp);
  }
  SECTION("missing MAC entry is a configuration error") {
    cfg.weight_bits = 5;
    CHECK_THROWS_AS(compute_energy_qnn(cfg, hw), ConfigError);
  }
}

TEST_CASE("compute_energy_snn") {
  const auto hw = typical();
  WorkloadConfig cfg = fig3_typical_point();

  SECTION("silent network still pays the per-step threshold compare") {
    cfg.spike_rate = 0;
    CHECK(compute_energy_snn(cfg, hw) == Rational(cfg.window) * hw.e_cmp);
  }
  SECTION("reference point") {
    CHECK(compute_energy_snn(cfg, hw) == parse_decimal("89.499744"));
  }
  SECTION("window must be positive") {
    cfg.window = 0;
    CHECK_THROWS_AS(compute_energy_snn(cfg, hw), std::domain_error);
  }
}

TEST_CASE("compute_advantage threshold specializations") {
  // uniform unit costs; k set via a single-entry MAC table
  const auto with_k = [](const Rational& k) {
    HardwareProfile hw;
    hw.name = "unit";
    hw.e_acc = hw.e_cmp = hw.e_sub = parse_decimal("0.05448");
    hw.e_weight[8] = parse_decimal("0.18");
    return [hw, k](std::int64_t window) mutable {
      hw.e_mac[{bits_for_window(window), 8}] = k * hw.e_acc;
      return hw;
    };
  };

  const Rational gamma(8, 10);
  for (const std::int64_t window : {1, 2, 4, 7, 8, 16}) {
    const Rational thresholds[] = {Rational(1), Rational(1 + window, 2), Rational(window)};
    const Scenario scenarios[] = {Scenario::best, Scenario::average, Scenario::worst};
    for (int i = 0; i < 3; ++i) {
      WorkloadConfig cfg{1'000'000, window, scenario_spike_rate(gamma, window, scenarios[i]),
                         gamma, 8};
      CAPTURE(window, i);
      // boundary holds; a sliver below fails
      CHECK(compute_advantage(cfg, with_k(thresholds[i])(window), false).holds);
      CHECK_FALSE(
          compute_advantage(cfg, with_k(thresholds[i] - Rational(1, 1000))(window), false).holds);
      CHECK(compute_advantage(cfg, with_k(thresholds[i] + Rational(1, 1000))(window), false).holds);
    }
  }
}

TEST_CASE("compute_advantage exact form agrees with direct energy comparison") {
  const auto hw = typical();
  for (const std::int64_t window : {1, 3, 8, 31}) {
    for (int g = 0; g <= 10; ++g) {
      for (const std::int64_t n : {1, 64, 4096}) {
        const WorkloadConfig cfg{n, window, Rational(g, 20), Rational(g, 10), 8};
        const auto adv = compute_advantage(cfg, hw, true);
        const bool direct = compute_energy_snn(cfg, hw) <= compute_energy_qnn(cfg, hw);
        CAPTURE(window, g, n);
        CHECK(adv.holds == direct);
      }
    }
  }
}

TEST_CASE("compute_advantage falls back to direct comparison for unequal costs") {
  auto hw = typical();
  hw.e_cmp = hw.e_acc * 3;
  const WorkloadConfig cfg{64, 4, Rational(1, 10), Rational(8, 10), 8};
  const auto adv = compute_advantage(cfg, hw, false);
  CHECK(adv.holds == (compute_energy_snn(cfg, hw) <= compute_energy_qnn(cfg, hw)));
}

TEST_CASE("data_energy_qnn") {
  const auto hw = typical();
  WorkloadConfig cfg = fig3_typical_point();

  CHECK(data_energy_qnn(cfg, hw, MoveMode::sparse) == parse_decimal("7520.256"));
  CHECK(data_energy_qnn(cfg, hw, MoveMode::dense) == parse_decimal("3809.28"));
  cfg.sparsity = 1;
  CHECK(data_energy_qnn(cfg, hw, MoveMode::sparse) == 0);
  cfg.weight_bits = 3;
  CHECK_THROWS_AS(data_energy_qnn(cfg, hw, MoveMode::dense), ConfigError);
}

TEST_CASE("data_energy_snn") {
  const auto hw = typical();
  WorkloadConfig cfg = fig3_typical_point();

  CHECK(data_energy_snn(cfg, hw, MoveMode::sparse) == parse_decimal("5210.112"));
  CHECK(data_energy_snn(cfg, hw, MoveMode::dense) == parse_decimal("7045.12"));
  cfg.spike_rate = 0;
  CHECK(data_energy_snn(cfg, hw, MoveMode::sparse) == 0);
}

TEST_CASE("aggregated transmission matches the QNN data formulas") {
  const auto hw = typical();
  for (const std::int64_t window : {1, 2, 7, 8, 32}) {
    for (int g = 0; g <= 4; ++g) {
      const WorkloadConfig cfg{4096, window, Rational(1, 10), Rational(g, 4), 8};
      for (const MoveMode mode : {MoveMode::sparse, MoveMode::dense})
        CHECK(data_energy_snn_aggregated(cfg, hw, mode) == data_energy_qnn(cfg, hw, mode));
    }
  }
  SECTION("strict log2 width differs below the next power of two") {
    const WorkloadConfig at7{4096, 7, Rational(1, 10), Rational(1, 2), 8};
    CHECK(data_energy_snn_aggregated(at7, hw, MoveMode::dense, true) <
          data_energy_snn_aggregated(at7, hw, MoveMode::dense, false));
    const WorkloadConfig at8{4096, 8, Rational(1, 10), Rational(1, 2), 8};
    // log2(8) = 3 exactly vs ceil(log2(9)) = 4
    CHECK(data_energy_snn_aggregated(at8, hw, MoveMode::dense, true) ==
          Rational(4096) * (3 * hw.e_move_dense + hw.weight_pj(8)));
  }
}

TEST_CASE("factor_f") {
  const auto hw = typical();
  CHECK(factor_f(MoveMode::dense, 4, 8, hw) == Rational(31, 106));   // 0.93 / 3.18
  CHECK(factor_f(MoveMode::sparse, 4, 8, hw) == Rational(153, 53));  // 9.18 / 3.18
  CHECK(factor_f(MoveMode::sparse, 1, 8, hw) == 1);

  HardwareProfile zero;
  zero.name = "zero";
  zero.e_weight[8] = 0;
  CHECK_THROWS_AS(factor_f(MoveMode::sparse, 4, 8, zero), std::domain_error);
}

TEST_CASE("data_advantage closed forms") {
  const auto hw = typical();
  WorkloadConfig cfg = fig3_typical_point();

  SECTION("best scenario always beats the sparse QNN") {
    for (const std::int64_t window : {1, 4, 64}) {
      cfg.window = window;
      CHECK(data_advantage(cfg, hw, Scenario::best, MoveMode::sparse).holds);
    }
  }
  SECTION("worst scenario vs sparse QNN fails at T = 4 on this profile") {
    const auto adv = data_advantage(cfg, hw, Scenario::worst, MoveMode::sparse);
    CHECK_FALSE(adv.holds);
    REQUIRE(adv.threshold.has_value());
    CHECK(*adv.threshold == Rational(153, 53));  // F(sparse) < 4
  }
  SECTION("gamma = 1 is degenerate but holds") {
    cfg.sparsity = 1;
    for (const Scenario s : {Scenario::worst, Scenario::average})
      for (const MoveMode m : {MoveMode::sparse, MoveMode::dense}) {
        const auto adv = data_advantage(cfg, hw, s, m);
        CHECK(adv.holds);
        CHECK(adv.degenerate);
      }
  }
}

TEST_CASE("data_advantage agrees with direct energy comparison") {
  // smaller version of the full acceptance grid
  for (const auto& hw : builtin_profiles()) {
    for (std::int64_t window = 1; window <= 16; ++window) {
      for (int g = 0; g <= 10; ++g) {
        const Rational gamma(g, 10);
        for (const Scenario scenario :
             {Scenario::worst, Scenario::average, Scenario::best}) {
          WorkloadConfig cfg{4096, window, scenario_spike_rate(gamma, window, scenario),
                             gamma, 8};
          for (const MoveMode qnn_mode : {MoveMode::sparse, MoveMode::dense}) {
            const bool direct =
                data_energy_snn(cfg, hw, MoveMode::sparse) <= data_energy_qnn(cfg, hw, qnn_mode);
            CAPTURE(hw.name, window, g, scenario_name(scenario), move_mode_name(qnn_mode));
            CHECK(data_advantage(cfg, hw, scenario, qnn_mode).holds == direct);
          }
        }
      }
    }
  }
}

TEST_CASE("dense QNN transfers never exceed dense SNN transfers") {
  for (const auto& hw : builtin_profiles())
    for (std::int64_t window = 1; window <= 64; ++window) {
      const WorkloadConfig cfg{4096, window, Rational(1, 10), Rational(1, 2), 8};
      CHECK(data_energy_qnn(cfg, hw, MoveMode::dense) <=
            data_energy_snn(cfg, hw, MoveMode::dense));
    }
}

TEST_CASE("energies are affine in the spike rate and linear in fan-in") {
  const auto hw = typical();
  const WorkloadConfig base = fig3_typical_point();
  const auto e_at = [&](const Rational& s) {
    WorkloadConfig cfg = base;
    cfg.spike_rate = s;
    return compute_energy_snn(cfg, hw) + data_energy_snn(cfg, hw, MoveMode::sparse);
  };
  const Rational s1(1, 10), s2(7, 10);
  CHECK(e_at(s1) + e_at(s2) == 2 * e_at((s1 + s2) / 2));  // affine
  CHECK(e_at(s2) >= e_at(s1));                            // non-negative slope

  WorkloadConfig doubled = base;
  doubled.n_src *= 2;
  CHECK(data_energy_snn(doubled, hw, MoveMode::sparse) ==
        2 * data_energy_snn(base, hw, MoveMode::sparse));
  CHECK(data_energy_qnn(doubled, hw, MoveMode::dense) ==
        2 * data_energy_qnn(base, hw, MoveMode::dense));
}

TEST_CASE("total_energy assembly") {
  const auto hw = typical();

  SECTION("reference point uses dense QNN data and sparse SNN data") {
    const auto pair = total_energy(fig3_typical_point(), hw);
    CHECK(pair.qnn.transmission_mode == MoveMode::dense);
    CHECK(pair.qnn.data_pj == parse_decimal("3809.28"));
    CHECK(pair.snn.transmission_mode == MoveMode::sparse);
    CHECK(pair.snn.data_pj == parse_decimal("5210.112"));
    CHECK(pair.snn.total_pj == pair.snn.compute_pj + pair.snn.data_pj);
    CHECK(pair.qnn.total_pj == pair.qnn.compute_pj + pair.qnn.data_pj);
    CHECK(energy_ratio(pair) > 0);

    // terms add up to their block
    for (const auto& side : {pair.snn, pair.qnn}) {
      Rational sum = 0;
      for (const auto& [name, pj] : side.terms) sum += pj;
      CHECK(sum == side.total_pj);
    }
  }
  SECTION("degenerate empty workload") {
    const WorkloadConfig cfg{4096, 4, Rational(0), Rational(1), 8};
    const auto pair = total_energy(cfg, hw);
    CHECK(pair.qnn.total_pj == 2 * hw.e_cmp);
    CHECK(pair.qnn.transmission_mode == MoveMode::sparse);
    CHECK(pair.snn.total_pj == Rational(4) * hw.e_cmp);
    CHECK(pair.snn.transmission_mode == MoveMode::sparse);
  }
  SECTION("forced SNN modes") {
    const auto cfg = fig3_typical_point();
    CHECK(total_energy(cfg, hw, SnnTransmission::dense).snn.data_pj ==
          parse_decimal("7045.12"));
    CHECK(total_energy(cfg, hw, SnnTransmission::sparse).snn.data_pj ==
          parse_decimal("5210.112"));
    const auto agg = total_energy(cfg, hw, SnnTransmission::aggregated);
    CHECK(agg.snn.aggregated);
    CHECK(agg.snn.data_pj ==
          std::min(data_energy_snn_aggregated(cfg, hw, MoveMode::sparse),
                   data_energy_snn_aggregated(cfg, hw, MoveMode::dense)));
  }
  SECTION("equal totals report ratio exactly 1") {
    EnergyPair pair;
    pair.snn.total_pj = pair.qnn.total_pj = Rational(1, 3);
    CHECK(energy_ratio(pair) == 1.0);
  }
}
