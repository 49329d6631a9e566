#pragma once

#include <cstdint>
#include <vector>

#include "corecert/coalition.hpp"
#include "corecert/rng.hpp"

namespace corecert {

// Additive perturbation model for one coalition's value.
struct UncertaintyModel {
  enum class Kind { None, Uniform, TruncatedNormal };

  Kind kind = Kind::None;
  double lo = 0.0;      // support lower bound (uniform, truncated normal)
  double hi = 0.0;      // support upper bound
  double mean = 0.0;    // truncated normal only
  double stddev = 1.0;  // truncated normal only

  static UncertaintyModel none() { return {}; }
  static UncertaintyModel uniform(double lo, double hi);
  static UncertaintyModel truncated_normal(double mean, double stddev, double lo, double hi);

  // Throws ConfigError on inconsistent parameters (lo > hi, stddev <= 0,
  // truncation interval with negligible mass).
  void validate() const;

  double sample(Rng& rng) const;

  // Closed support interval of the perturbation; [0, 0] for Kind::None.
  double support_lo() const { return kind == Kind::None ? 0.0 : lo; }
  double support_hi() const { return kind == Kind::None ? 0.0 : hi; }
};

// An uncertain cooperative game: every proper nonempty coalition has a
// nominal value plus an independent additive perturbation; the grand
// coalition's value is deterministic. Vectors follow the canonical
// coalition order of enumerate_coalitions(n).
struct GameDefinition {
  int n = 0;
  double grand_value = 0.0;
  std::vector<Coalition> coalitions;         // canonical order, size 2^n - 2
  std::vector<double> nominal;               // per coalition
  std::vector<UncertaintyModel> noise;       // per coalition

  // Builds with every coalition sharing one noise model.
  static GameDefinition with_uniform_noise(int n, const std::vector<double>& nominal_in_canonical_order,
                                           double grand_value, const UncertaintyModel& noise_model);

  // Throws InvalidGameError / ConfigError when invariants fail.
  void validate() const;

  std::size_t coalition_count() const { return coalitions.size(); }
};

// Realized value matrix u(S, sample k) for all proper coalitions and K
// i.i.d. joint draws. Row order is canonical; column k is one joint draw.
struct ScenarioGame {
  int n = 0;
  int num_samples = 0;
  std::vector<Coalition> coalitions;
  std::vector<double> values;  // row-major: values[row * num_samples + k]
  double grand_value = 0.0;
  std::uint64_t sample_seed = 0;  // provenance

  double value(std::size_t coalition_row, int k) const { return values[coalition_row * num_samples + k]; }
};

// Per-coalition sample-wise maxima of a scenario game, plus the smallest
// sample index (0-based) attaining each maximum.
struct WorstCaseValues {
  std::vector<double> values;
  std::vector<int> attaining_index;
};

// Draws K i.i.d. joint perturbation samples and realizes the value matrix.
// Pure function of (game, K, seed): identical inputs give bit-identical
// output. The internal stream is domain-separated from validation streams.
ScenarioGame sample_scenarios(const GameDefinition& game, int num_samples, std::uint64_t seed);

// One joint perturbation draw (canonical coalition order), for validation.
std::vector<double> sample_joint_perturbation(const GameDefinition& game, Rng& rng);

WorstCaseValues worst_case_values(const ScenarioGame& sg);

}  // namespace corecert
