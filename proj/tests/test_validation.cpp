#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <future>

#include "corecert/config.hpp"
#include "corecert/scenario_core.hpp"
#include "corecert/validation.hpp"
#include "oracle_helpers.hpp"

using namespace corecert;

namespace {

std::vector<double> zero_delta(const GameDefinition& game) { return std::vector<double>(game.coalition_count(), 0.0); }

}  // namespace

TEST_CASE("point_violates: overwhelming shift, the nominal draw, and exact ties") {
  const GameDefinition game = preset_game("paper-table1-nonoise");
  const std::vector<double> member{4.0, 4.5, 3.0, 5.8};

  std::vector<double> big = zero_delta(game);
  for (auto& d : big) d = 100.0;
  CHECK(point_violates(game, member, big));

  CHECK_FALSE(point_violates(game, member, zero_delta(game)));

  // Perturb so every coalition value equals its received payoff exactly:
  // boundary draws are non-violations under the strict comparison.
  std::vector<double> tie(game.coalition_count());
  for (std::size_t row = 0; row < game.coalition_count(); ++row) {
    tie[row] = coalition_sum(game.coalitions[row], member) - game.nominal[row];
  }
  CHECK_FALSE(point_violates(game, member, tie));

  CHECK_THROWS_AS(point_violates(game, {1.0}, zero_delta(game)), std::invalid_argument);
}

TEST_CASE("core_violates: dominated draws never destabilize") {
  const GameDefinition game = preset_game("paper-table1-nonoise");
  const CorePolytope core = build_core(sample_scenarios(game, 1, 0), 0.0, true);
  const std::vector<double> minima = coalition_minima(core);
  std::vector<double> low = zero_delta(game);
  for (auto& d : low) d = -5.0;
  CHECK_FALSE(core_violates(minima, game, low));
}

TEST_CASE("core_violates reduces to point_violates on a singleton core") {
  // Pairs worth 2 with grand value 3: unique member (1, 1, 1).
  GameDefinition game;
  game.n = 3;
  game.grand_value = 3.0;
  game.coalitions = enumerate_coalitions(3);
  game.nominal = {0.0, 0.0, 0.0, 2.0, 2.0, 2.0};
  game.noise.assign(6, UncertaintyModel::uniform(-0.6, 0.6));
  game.validate();

  ScenarioGame sg = sample_scenarios(game, 1, 0);
  for (std::size_t row = 0; row < sg.coalitions.size(); ++row) sg.values[row] = game.nominal[row];
  const CorePolytope core = build_core(sg, 0.0, true);
  REQUIRE_FALSE(is_empty(core).empty);
  const std::vector<double> minima = coalition_minima(core);
  const std::vector<double> x0{1.0, 1.0, 1.0};

  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::vector<double> delta = sample_joint_perturbation(game, rng);
    CHECK(core_violates(minima, game, delta) == point_violates(game, x0, delta));
  }
}

TEST_CASE("core_violates agrees with a per-draw feasibility-LP oracle") {
  Rng rng(41);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const GameDefinition game = oracle::random_nonempty_core_game(3, rng, 0.8);
    const ScenarioGame sg = sample_scenarios(game, 25, static_cast<std::uint64_t>(trial));
    const CorePolytope core = build_core(sg, 0.0, true);
    if (is_empty(core).empty) continue;
    const std::vector<double> minima = coalition_minima(core);

    Rng draw_rng(derive_seed(1000 + static_cast<std::uint64_t>(trial), kSeedDomainTest));
    for (int d = 0; d < 200; ++d) {
      const std::vector<double> delta = sample_joint_perturbation(game, draw_rng);
      // Oracle: does any core member pay some coalition strictly less than
      // its drawn value? One feasibility LP per coalition.
      bool oracle_violates = false;
      for (std::size_t row = 0; row < core.coalitions.size() && !oracle_violates; ++row) {
        LinearProgram probe = core.to_lp();
        std::vector<double> coeffs(static_cast<std::size_t>(core.n), 0.0);
        for (int i = 0; i < core.n; ++i) {
          if (core.coalitions[row].contains(i)) coeffs[static_cast<std::size_t>(i)] = -1.0;
        }
        const double drawn = game.nominal[row] + delta[row];
        probe.add_ge(std::move(coeffs), -(drawn - 1e-9));  // sum_{i in S} x_i <= drawn - margin
        if (check_feasible(probe).feasible) oracle_violates = true;
      }
      CHECK(core_violates(minima, game, delta) == oracle_violates);
      ++checked;
    }
  }
  CHECK(checked >= 2000);
}

TEST_CASE("estimates: trivial zero and one cases") {
  const GameDefinition game = preset_game("paper-table1-uniform");

  // Allocation dominating the whole support.
  GameDefinition sunk = game;
  for (auto& v : sunk.nominal) v -= 1e6;
  const ViolationEstimate none = estimate_point_instability(sunk, {4.0, 4.5, 3.0, 5.8}, 2000, 1, 1e-3);
  CHECK(none.estimate == 0.0);

  // Coalition values far above anything an efficient allocation can pay.
  GameDefinition flooded = game;
  for (auto& v : flooded.nominal) v += 1e6;
  const ViolationEstimate all = estimate_point_instability(flooded, {4.0, 4.5, 3.0, 5.8}, 2000, 1, 1e-3);
  CHECK(all.estimate == 1.0);
}

TEST_CASE("estimates: reproducible, seed-sensitive, and shard-stable") {
  const GameDefinition game = preset_game("paper-table1-uniform");
  const std::vector<double> x{4.0, 4.5, 3.0, 5.8};

  const ViolationEstimate a = estimate_point_instability(game, x, 20000, 7, 1e-3);
  const ViolationEstimate b = estimate_point_instability(game, x, 20000, 7, 1e-3);
  const ViolationEstimate c = estimate_point_instability(game, x, 20000, 8, 1e-3);
  CHECK(a.violations == b.violations);
  CHECK(a.estimate == b.estimate);
  CHECK(a.violations != c.violations);

  // Parallel shards equal the same shards evaluated serially.
  const int shards = 4;
  const ViolationEstimate parallel = estimate_point_instability(game, x, 20001, 7, 1e-3, shards);
  long long serial = 0;
  for (int shard = 0; shard < shards; ++shard) {
    const int base = 20001 / shards;
    const int trials = base + (shard < 20001 % shards ? 1 : 0);
    Rng rng(derive_seed(7, kSeedDomainTest + 16 * static_cast<std::uint64_t>(shard)));
    for (int t = 0; t < trials; ++t) {
      if (point_violates(game, x, sample_joint_perturbation(game, rng))) ++serial;
    }
  }
  CHECK(parallel.violations == serial);
}

TEST_CASE("estimates: training and test streams differ") {
  const GameDefinition game = preset_game("paper-table1-uniform");
  const ScenarioGame sg = sample_scenarios(game, 1, 7);
  Rng test_rng(derive_seed(7, kSeedDomainTest));
  const std::vector<double> test_draw = sample_joint_perturbation(game, test_rng);
  std::vector<double> train_draw(game.coalition_count());
  for (std::size_t row = 0; row < game.coalition_count(); ++row) train_draw[row] = sg.value(row, 0) - game.nominal[row];
  CHECK(train_draw != test_draw);
}

TEST_CASE("hoeffding halfwidth formula") {
  CHECK(hoeffding_halfwidth(100000, 1e-3) == doctest::Approx(std::sqrt(std::log(2000.0) / 200000.0)).epsilon(1e-12));
  const ViolationEstimate est = estimate_point_instability(preset_game("paper-table1-uniform"), {4.0, 4.5, 3.0, 5.8},
                                                           12345, 3, 1e-3);
  CHECK(est.hoeffding_halfwidth == doctest::Approx(hoeffding_halfwidth(12345, 1e-3)).epsilon(1e-12));
  CHECK(est.trials == 12345);
}

TEST_CASE("dominance: member instability implies core instability, pointwise and in rates") {
  const GameDefinition game = preset_game("paper-table1-uniform");
  const ScenarioGame sg = sample_scenarios(game, 150, 3);
  const CorePolytope core = build_core(sg, 0.0, true);
  const CoreEmptiness emptiness = is_empty(core);
  REQUIRE_FALSE(emptiness.empty);
  const std::vector<double> member = *emptiness.witness;
  const std::vector<double> minima = coalition_minima(core);

  Rng rng(derive_seed(99, kSeedDomainTest));
  for (int trial = 0; trial < 500; ++trial) {
    const std::vector<double> delta = sample_joint_perturbation(game, rng);
    if (point_violates(game, member, delta)) CHECK(core_violates(minima, game, delta));
  }

  const int M = 50000;
  const ViolationEstimate point = estimate_point_instability(game, member, M, 5, 1e-3);
  const ViolationEstimate whole = estimate_core_instability(minima, game, M, 5, 1e-3);
  CHECK(point.estimate <= whole.estimate + 3.0 * point.hoeffding_halfwidth);
}
