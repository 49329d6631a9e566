#include "corecert/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "corecert/errors.hpp"

namespace corecert {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw ConfigError("config field \"" + field + "\": " + why);
}

double require_number(const json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_number()) fail(field, "expected a number");
  return j[field].get<double>();
}

UncertaintyModel parse_noise(const json& j, const std::string& context) {
  if (!j.is_object()) fail(context, "expected a noise object");
  const std::string kind = j.value("kind", std::string("none"));
  if (kind == "none") return UncertaintyModel::none();
  try {
    if (kind == "uniform") {
      return UncertaintyModel::uniform(require_number(j, "lo"), require_number(j, "hi"));
    }
    if (kind == "truncnorm") {
      return UncertaintyModel::truncated_normal(require_number(j, "mean"), require_number(j, "stddev"),
                                                require_number(j, "lo"), require_number(j, "hi"));
    }
  } catch (const ConfigError&) {
    throw;
  }
  fail(context + ".kind", "unknown noise kind \"" + kind + "\" (expected none|uniform|truncnorm)");
}

GameDefinition parse_game(const json& j) {
  if (!j.is_object()) fail("game", "expected an object");
  if (!j.contains("n") || !j["n"].is_number_integer()) fail("game.n", "expected an integer agent count");
  const int n = j["n"].get<int>();
  if (n < 2) fail("game.n", "need at least 2 agents");
  if (n > 16) fail("game.n", "agent counts above 16 are not supported");
  const double grand = require_number(j, "grand_value");
  if (!j.contains("coalitions") || !j["coalitions"].is_array()) fail("game.coalitions", "expected an array");

  const auto canonical = enumerate_coalitions(n);
  std::map<std::uint32_t, std::pair<double, UncertaintyModel>> by_mask;
  for (const auto& entry : j["coalitions"]) {
    if (!entry.is_object() || !entry.contains("members") || !entry["members"].is_array()) {
      fail("game.coalitions[].members", "expected an array of 1-indexed agent ids");
    }
    std::uint32_t mask = 0;
    for (const auto& m : entry["members"]) {
      if (!m.is_number_integer()) fail("game.coalitions[].members", "expected integers");
      const int agent = m.get<int>();
      if (agent < 1 || agent > n) fail("game.coalitions[].members", "agent id " + std::to_string(agent) + " out of 1.." + std::to_string(n));
      mask |= 1u << (agent - 1);
    }
    if (mask == 0) fail("game.coalitions[].members", "coalition must be nonempty");
    if (mask == (1u << n) - 1u) fail("game.coalitions[].members", "the grand coalition takes its value from grand_value");
    if (by_mask.count(mask)) fail("game.coalitions", "coalition " + Coalition{mask}.to_string() + " listed twice");
    const double nominal = require_number(entry, "nominal");
    UncertaintyModel noise = UncertaintyModel::none();
    if (entry.contains("noise")) noise = parse_noise(entry["noise"], "game.coalitions[].noise");
    by_mask.emplace(mask, std::make_pair(nominal, noise));
  }

  GameDefinition game;
  game.n = n;
  game.grand_value = grand;
  game.coalitions = canonical;
  game.nominal.reserve(canonical.size());
  game.noise.reserve(canonical.size());
  for (const auto& c : canonical) {
    auto it = by_mask.find(c.mask);
    if (it == by_mask.end()) fail("game.coalitions", "missing value for coalition " + c.to_string());
    game.nominal.push_back(it->second.first);
    game.noise.push_back(it->second.second);
  }
  if (by_mask.size() != canonical.size()) fail("game.coalitions", "unexpected extra coalition entries");
  game.validate();
  return game;
}

}  // namespace

void ExperimentConfig::validate() const {
  game.validate();
  if (K_grid.empty()) throw ConfigError("config field \"K_grid\": must be non-empty");
  for (int k : K_grid) {
    if (k < 1) throw ConfigError("config field \"K_grid\": sample counts must be >= 1, got " + std::to_string(k));
  }
  if (!(beta > 0.0) || !(beta < 1.0)) throw ConfigError("config field \"beta\": must lie in (0, 1)");
  if (test_samples < 1) throw ConfigError("config field \"test_samples\": must be >= 1");
  if (seeds.empty()) throw ConfigError("config field \"seeds\": must be non-empty");
  if (!(alpha > 0.0) || !(alpha < 1.0)) throw ConfigError("config field \"alpha\": must lie in (0, 1)");
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");

  ExperimentConfig cfg;
  if (!j.contains("game")) throw ConfigError("config field \"game\": missing");
  cfg.game = parse_game(j["game"]);

  if (!j.contains("K_grid") || !j["K_grid"].is_array()) fail("K_grid", "expected an array of sample counts");
  for (const auto& k : j["K_grid"]) {
    if (!k.is_number_integer()) fail("K_grid", "expected integers");
    cfg.K_grid.push_back(k.get<int>());
  }

  if (j.contains("beta")) cfg.beta = require_number(j, "beta");
  if (j.contains("test_samples")) {
    if (!j["test_samples"].is_number_integer()) fail("test_samples", "expected an integer");
    cfg.test_samples = j["test_samples"].get<int>();
  }
  if (j.contains("seeds")) {
    if (!j["seeds"].is_array()) fail("seeds", "expected an array");
    cfg.seeds.clear();
    for (const auto& s : j["seeds"]) {
      if (!s.is_number_integer()) fail("seeds", "expected integers");
      cfg.seeds.push_back(s.get<std::uint64_t>());
    }
  }
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) fail("mode", "expected a string");
    cfg.mode = mode_from_string(j["mode"].get<std::string>());
  }
  if (j.contains("nonneg")) {
    if (!j["nonneg"].is_boolean()) fail("nonneg", "expected a boolean");
    cfg.nonneg = j["nonneg"].get<bool>();
  }
  if (j.contains("alpha")) cfg.alpha = require_number(j, "alpha");

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

GameDefinition preset_game(const std::string& name) {
  // Reference four-agent game; rows in the order {1},{2},{3},{4},
  // {1,2},{2,3},{3,4},{1,3},{1,4},{2,4},{1,2,3},{1,2,4},{1,3,4},{2,3,4}.
  struct Entry {
    std::uint32_t mask;
    double value;
  };
  static const Entry entries[] = {
      {0b0001, 1.0},  {0b0010, 1.5},  {0b0100, 1.0},  {0b1000, 2.0},  {0b0011, 6.5},
      {0b0110, 6.5},  {0b1100, 7.0},  {0b0101, 6.0},  {0b1001, 7.0},  {0b1010, 7.5},
      {0b0111, 11.5}, {0b1011, 12.5}, {0b1101, 12.0}, {0b1110, 12.5},
  };
  UncertaintyModel noise;
  if (name == "paper-table1-uniform") {
    noise = UncertaintyModel::uniform(-0.5, 0.5);
  } else if (name == "paper-table1-truncnorm") {
    noise = UncertaintyModel::truncated_normal(0.0, 0.3, -1.5, 1.5);
  } else if (name == "paper-table1-nonoise") {
    noise = UncertaintyModel::none();
  } else {
    throw ConfigError("unknown preset \"" + name + "\" (expected one of paper-table1-uniform, paper-table1-truncnorm, paper-table1-nonoise)");
  }

  GameDefinition game;
  game.n = 4;
  game.grand_value = 17.3;
  game.coalitions = enumerate_coalitions(4);
  game.nominal.resize(game.coalitions.size());
  game.noise.assign(game.coalitions.size(), noise);
  for (const auto& e : entries) {
    for (std::size_t row = 0; row < game.coalitions.size(); ++row) {
      if (game.coalitions[row].mask == e.mask) game.nominal[row] = e.value;
    }
  }
  game.validate();
  return game;
}

ExperimentConfig preset_config(const std::string& name) {
  ExperimentConfig cfg;
  cfg.game = preset_game(name);
  cfg.K_grid = {200, 300, 400, 500, 1000, 1500, 2000};
  cfg.seeds.clear();
  for (std::uint64_t s = 0; s < 10; ++s) cfg.seeds.push_back(s);
  cfg.test_samples = 100000;
  if (name == "paper-table1-truncnorm") {
    cfg.mode = ExperimentMode::RelaxCertify;
    cfg.beta = 1e-5;
  } else {
    cfg.mode = ExperimentMode::CoreCertify;
    cfg.beta = 1e-4;
  }
  if (name == "paper-table1-nonoise") {
    cfg.K_grid = {1};
    cfg.seeds = {0};
  }
  cfg.validate();
  return cfg;
}

std::vector<std::string> preset_names() {
  return {"paper-table1-uniform", "paper-table1-truncnorm", "paper-table1-nonoise"};
}

std::string mode_to_string(ExperimentMode mode) {
  return mode == ExperimentMode::CoreCertify ? "core-certify" : "relax-certify";
}

ExperimentMode mode_from_string(const std::string& text) {
  if (text == "core-certify") return ExperimentMode::CoreCertify;
  if (text == "relax-certify") return ExperimentMode::RelaxCertify;
  throw ConfigError("config field \"mode\": expected core-certify or relax-certify, got \"" + text + "\"");
}

}  // namespace corecert
