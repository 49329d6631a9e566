#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "corecert/game.hpp"

namespace corecert {

enum class ExperimentMode { CoreCertify, RelaxCertify };

// Experiment description, loadable from JSON:
//   {"game": {"n": int, "grand_value": num,
//             "coalitions": [{"members": [int...], "nominal": num,
//                             "noise": {"kind": "none|uniform|truncnorm",
//                                       "lo": num, "hi": num,
//                                       "mean": num, "stddev": num}}...]},
//    "K_grid": [int...], "beta": num, "test_samples": int, "seeds": [int...],
//    "mode": "core-certify|relax-certify", "nonneg": bool}
// Agents are 1-indexed in files. Defaults: beta 1e-4, test_samples 1e5,
// seeds [0], mode core-certify, nonneg true.
struct ExperimentConfig {
  GameDefinition game;
  std::vector<int> K_grid;
  double beta = 1e-4;
  int test_samples = 100000;
  std::vector<std::uint64_t> seeds = {0};
  ExperimentMode mode = ExperimentMode::CoreCertify;
  bool nonneg = true;
  double alpha = 1e-3;  // Hoeffding confidence level for the empirical estimates

  void validate() const;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);

// Bundled four-agent reference game (values 1, 1.5, 1, 2 / 6.5, 6.5, 7, 6,
// 7, 7.5 / 11.5, 12.5, 12, 12.5; grand value 17.3) under three noise models:
//   paper-table1-uniform    uniform(-0.5, 0.5) noise, core certification
//   paper-table1-truncnorm  normal(0, 0.3) truncated to [-1.5, 1.5], relaxed
//   paper-table1-nonoise    deterministic values, core certification
ExperimentConfig preset_config(const std::string& name);
GameDefinition preset_game(const std::string& name);
std::vector<std::string> preset_names();

std::string mode_to_string(ExperimentMode mode);
ExperimentMode mode_from_string(const std::string& text);

}  // namespace corecert
