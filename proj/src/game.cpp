#include "corecert/game.hpp"

#include <cmath>
#include <string>

#include "corecert/errors.hpp"

namespace corecert {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

UncertaintyModel UncertaintyModel::uniform(double lo, double hi) {
  UncertaintyModel m;
  m.kind = Kind::Uniform;
  m.lo = lo;
  m.hi = hi;
  m.validate();
  return m;
}

UncertaintyModel UncertaintyModel::truncated_normal(double mean, double stddev, double lo, double hi) {
  UncertaintyModel m;
  m.kind = Kind::TruncatedNormal;
  m.mean = mean;
  m.stddev = stddev;
  m.lo = lo;
  m.hi = hi;
  m.validate();
  return m;
}

void UncertaintyModel::validate() const {
  switch (kind) {
    case Kind::None:
      return;
    case Kind::Uniform:
      if (!(lo <= hi)) throw ConfigError("uniform noise: lo > hi");
      if (!std::isfinite(lo) || !std::isfinite(hi)) throw ConfigError("uniform noise: non-finite bounds");
      return;
    case Kind::TruncatedNormal: {
      if (!(stddev > 0.0)) throw ConfigError("truncated normal noise: stddev must be positive");
      if (!(lo < hi)) throw ConfigError("truncated normal noise: need lo < hi");
      if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(mean) || !std::isfinite(stddev)) {
        throw ConfigError("truncated normal noise: non-finite parameter");
      }
      const double mass = normal_cdf((hi - mean) / stddev) - normal_cdf((lo - mean) / stddev);
      if (!(mass > 1e-6)) {
        throw ConfigError("truncated normal noise: truncation interval carries negligible probability mass");
      }
      return;
    }
  }
  throw ConfigError("uncertainty model: unknown kind");
}

double UncertaintyModel::sample(Rng& rng) const {
  switch (kind) {
    case Kind::None:
      return 0.0;
    case Kind::Uniform:
      return rng.uniform(lo, hi);
    case Kind::TruncatedNormal:
      return rng.truncated_normal(mean, stddev, lo, hi);
  }
  return 0.0;
}

GameDefinition GameDefinition::with_uniform_noise(int n, const std::vector<double>& nominal_in_canonical_order,
                                                  double grand_value, const UncertaintyModel& noise_model) {
  GameDefinition g;
  g.n = n;
  g.grand_value = grand_value;
  g.coalitions = enumerate_coalitions(n);
  g.nominal = nominal_in_canonical_order;
  g.noise.assign(g.coalitions.size(), noise_model);
  g.validate();
  return g;
}

void GameDefinition::validate() const {
  if (n < 2) throw InvalidGameError("game: need at least 2 agents, got " + std::to_string(n));
  const auto expected = enumerate_coalitions(n);
  if (coalitions != expected) throw InvalidGameError("game: coalition list is not in canonical order");
  if (nominal.size() != expected.size()) {
    throw InvalidGameError("game: nominal values cover " + std::to_string(nominal.size()) + " coalitions, expected " +
                           std::to_string(expected.size()));
  }
  if (noise.size() != expected.size()) {
    throw InvalidGameError("game: noise models cover " + std::to_string(noise.size()) + " coalitions, expected " +
                           std::to_string(expected.size()));
  }
  for (double v : nominal) {
    if (!std::isfinite(v)) throw InvalidGameError("game: non-finite nominal value");
  }
  if (!std::isfinite(grand_value)) throw InvalidGameError("game: non-finite grand coalition value");
  for (const auto& m : noise) m.validate();
}

ScenarioGame sample_scenarios(const GameDefinition& game, int num_samples, std::uint64_t seed) {
  if (num_samples < 1) throw ConfigError("sample_scenarios: need at least one sample");
  game.validate();

  ScenarioGame sg;
  sg.n = game.n;
  sg.num_samples = num_samples;
  sg.coalitions = game.coalitions;
  sg.grand_value = game.grand_value;
  sg.sample_seed = seed;
  sg.values.resize(game.coalition_count() * static_cast<std::size_t>(num_samples));

  Rng rng(derive_seed(seed, kSeedDomainTraining));
  for (int k = 0; k < num_samples; ++k) {
    for (std::size_t row = 0; row < game.coalition_count(); ++row) {
      sg.values[row * static_cast<std::size_t>(num_samples) + k] = game.nominal[row] + game.noise[row].sample(rng);
    }
  }
  return sg;
}

std::vector<double> sample_joint_perturbation(const GameDefinition& game, Rng& rng) {
  std::vector<double> delta(game.coalition_count());
  for (std::size_t row = 0; row < game.coalition_count(); ++row) delta[row] = game.noise[row].sample(rng);
  return delta;
}

WorstCaseValues worst_case_values(const ScenarioGame& sg) {
  WorstCaseValues out;
  const std::size_t rows = sg.coalitions.size();
  out.values.resize(rows);
  out.attaining_index.resize(rows);
  for (std::size_t row = 0; row < rows; ++row) {
    double best = sg.value(row, 0);
    int best_k = 0;
    for (int k = 1; k < sg.num_samples; ++k) {
      const double v = sg.value(row, k);
      if (v > best) {  // strict: ties keep the smallest index
        best = v;
        best_k = k;
      }
    }
    out.values[row] = best;
    out.attaining_index[row] = best_k;
  }
  return out;
}

}  // namespace corecert
