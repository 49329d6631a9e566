#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "corecert/config.hpp"
#include "corecert/errors.hpp"
#include "corecert/experiment.hpp"
#include "corecert/relaxation.hpp"
#include "corecert/scenario_core.hpp"
#include "corecert/validation.hpp"

namespace {

using namespace corecert;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<double> parse_allocation(const std::string& text, int n) {
  std::vector<double> x;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      x.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("allocation: cannot parse \"" + item + "\" as a number");
    }
  }
  if (static_cast<int>(x.size()) != n) {
    throw ConfigError("allocation: expected " + std::to_string(n) + " comma-separated payoffs, got " +
                      std::to_string(x.size()));
  }
  return x;
}

struct GameSource {
  std::string preset;
  std::string config_path;

  ExperimentConfig resolve() const {
    if (!preset.empty() && !config_path.empty()) throw ConfigError("give either --preset or --config, not both");
    if (!preset.empty()) return preset_config(preset);
    if (!config_path.empty()) return load_config(config_path);
    throw ConfigError("a game is required: pass --preset <name> or --config <file>");
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--preset", preset, "bundled preset: paper-table1-uniform | paper-table1-truncnorm | paper-table1-nonoise");
    cmd->add_option("--config", config_path, "JSON experiment config file");
  }
};

void print_certificates(const CertificateReport& report) {
  std::cout << "eps_posteriori(s=" << report.s << "): " << fmt(report.eps_posteriori) << "\n";
  if (report.eps_apriori) std::cout << "eps_apriori: " << fmt(*report.eps_apriori) << "\n";
  std::cout << "risk_interval: [" << fmt(report.risk_lo) << ", " << fmt(report.risk_hi) << "]\n";
  if (report.theta) {
    std::cout << "theta: " << fmt(*report.theta) << "\n";
  } else {
    std::cout << "theta: undefined at s = 0 (risk_interval applies)\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"scenario-core stability certificates for cooperative games under uncertain coalition values"};
  app.require_subcommand(1);

  // core-check
  auto* core_check = app.add_subcommand("core-check", "build a scenario core and test emptiness / membership");
  GameSource cc_src;
  cc_src.attach(core_check);
  int cc_K = 0;
  std::uint64_t cc_seed = 0;
  double cc_zeta = 0.0;
  std::string cc_member;
  core_check->add_option("--K", cc_K, "sample count (default: first entry of the config grid)");
  core_check->add_option("--seed", cc_seed, "sample seed");
  core_check->add_option("--zeta", cc_zeta, "relaxation offset applied to every coalition constraint");
  core_check->add_option("--member", cc_member, "comma-separated allocation to test for membership");

  // compress
  auto* compress = app.add_subcommand("compress", "enumerate the compression set of a scenario core");
  GameSource cp_src;
  cp_src.attach(compress);
  int cp_K = 0;
  std::uint64_t cp_seed = 0;
  compress->add_option("--K", cp_K, "sample count (default: first entry of the config grid)");
  compress->add_option("--seed", cp_seed, "sample seed");

  // certify
  auto* certify = app.add_subcommand("certify", "probabilistic bounds for given (K, beta, s)");
  int ce_K = 0, ce_s = 0, ce_agents = 0;
  double ce_beta = 1e-4;
  certify->add_option("--K", ce_K, "sample count")->required();
  certify->add_option("--s", ce_s, "complexity (compression cardinality or active-sample count)")->required();
  certify->add_option("--beta", ce_beta, "confidence parameter in (0,1)");
  certify->add_option("--agents", ce_agents, "agent count; adds the a-priori level when K > 2^n");

  // relax
  auto* relax = app.add_subcommand("relax", "solve the relaxed scenario program for a least-core allocation");
  GameSource rx_src;
  rx_src.attach(relax);
  int rx_K = 0;
  std::uint64_t rx_seed = 0;
  std::optional<double> rx_beta;
  relax->add_option("--K", rx_K, "sample count (default: first entry of the config grid)");
  relax->add_option("--seed", rx_seed, "sample seed");
  relax->add_option("--beta", rx_beta, "confidence parameter (default: config beta)");

  // validate
  auto* validate = app.add_subcommand("validate", "Monte Carlo instability estimate on fresh test draws");
  GameSource va_src;
  va_src.attach(validate);
  int va_K = 0, va_M = 0;
  std::uint64_t va_seed = 0;
  std::string va_x;
  double va_alpha = 1e-3;
  validate->add_option("--K", va_K, "sample count for the core build (default: first grid entry)");
  validate->add_option("--seed", va_seed, "seed; test draws use a stream disjoint from training");
  validate->add_option("--M", va_M, "test draw count (default: config test_samples)");
  validate->add_option("--x", va_x, "allocation to test; omit to test the whole scenario core");
  validate->add_option("--alpha", va_alpha, "Hoeffding confidence level");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "run the full certification pipeline over a (K, seed) grid");
  GameSource ex_src;
  ex_src.attach(experiment);
  std::string ex_out, ex_format = "csv", ex_mode;
  std::vector<int> ex_grid;
  std::vector<std::uint64_t> ex_seeds;
  std::optional<double> ex_beta;
  std::optional<int> ex_M;
  experiment->add_option("--out", ex_out, "report output path (defaults to stdout)");
  experiment->add_option("--format", ex_format, "csv | json");
  experiment->add_option("--mode", ex_mode, "override: core-certify | relax-certify");
  experiment->add_option("--K", ex_grid, "override the K grid");
  experiment->add_option("--seeds", ex_seeds, "override the seed list");
  experiment->add_option("--beta", ex_beta, "override the confidence parameter");
  experiment->add_option("--M", ex_M, "override the test draw count");

  CLI11_PARSE(app, argc, argv);

  if (core_check->parsed()) {
    const ExperimentConfig cfg = cc_src.resolve();
    const int K = cc_K > 0 ? cc_K : cfg.K_grid.front();
    const ScenarioGame sg = sample_scenarios(cfg.game, K, cc_seed);
    const CorePolytope core = build_core(sg, cc_zeta, cfg.nonneg);
    const CoreEmptiness emptiness = is_empty(core);
    std::cout << "K: " << K << "  seed: " << cc_seed << "  zeta: " << fmt(cc_zeta) << "\n";
    std::cout << "scenario core nonempty: " << (emptiness.empty ? "false" : "true") << "\n";
    if (emptiness.witness) {
      std::cout << "witness:";
      for (double v : *emptiness.witness) std::cout << ' ' << fmt(v);
      std::cout << "\n";
    }
    if (!cc_member.empty()) {
      const auto x = parse_allocation(cc_member, cfg.game.n);
      std::cout << "member: " << (membership(core, x) ? "true" : "false") << "\n";
    }
    return kExitOk;
  }

  if (compress->parsed()) {
    const ExperimentConfig cfg = cp_src.resolve();
    const int K = cp_K > 0 ? cp_K : cfg.K_grid.front();
    const ScenarioGame sg = sample_scenarios(cfg.game, K, cp_seed);
    const CompressionResult result = compression_set(sg);
    std::cout << "K: " << K << "  seed: " << cp_seed << "\n";
    std::cout << "compression cardinality s_K: " << result.cardinality << "\n";
    std::cout << "compression set (0-based sample indices):";
    for (int idx : result.indices) std::cout << ' ' << idx;
    std::cout << "\n";
    std::cout << "a-priori bound 2^n-2: " << apriori_complexity(cfg.game.n) << "\n";
    for (const auto& probe : result.probes) {
      std::cout << "  " << probe.coalition.to_string() << "  probe " << (probe.feasible ? "feasible  " : "infeasible")
                << "  attaining sample " << probe.attaining_index << "\n";
    }
    return kExitOk;
  }

  if (certify->parsed()) {
    std::optional<int> d;
    if (ce_agents >= 2) {
      d = apriori_complexity(ce_agents);
      if (ce_K <= (1 << ce_agents)) {
        std::cout << "note: a-priori level needs K > 2^n = " << (1 << ce_agents) << "; skipping it\n";
        d.reset();
      }
    }
    print_certificates(make_certificate_report(ce_K, ce_beta, ce_s, d));
    return kExitOk;
  }

  if (relax->parsed()) {
    const ExperimentConfig cfg = rx_src.resolve();
    const int K = rx_K > 0 ? rx_K : cfg.K_grid.front();
    const double beta = rx_beta.value_or(cfg.beta);
    const ScenarioGame sg = sample_scenarios(cfg.game, K, rx_seed);
    const RelaxationResult result = solve_relaxed(sg);
    std::cout << "K: " << K << "  seed: " << rx_seed << "\n";
    std::cout << "x_star:";
    for (double v : result.x_star) std::cout << ' ' << fmt(v);
    std::cout << "\n";
    std::cout << "zeta_star: " << fmt(result.zeta_star) << "\n";
    std::cout << "active samples s_star: " << result.s_star << "\n";
    std::cout << "scenario core nonempty: " << (result.core_nonempty ? "true" : "false") << "\n";
    if (!result.core_nonempty) {
      std::cout << "robust core: empty as well (every scenario core contains it)\n";
    }
    print_certificates(certify_relaxed(result, beta));
    return kExitOk;
  }

  if (validate->parsed()) {
    const ExperimentConfig cfg = va_src.resolve();
    const int K = va_K > 0 ? va_K : cfg.K_grid.front();
    const int M = va_M > 0 ? va_M : cfg.test_samples;
    ViolationEstimate est;
    if (!va_x.empty()) {
      const auto x = parse_allocation(va_x, cfg.game.n);
      est = estimate_point_instability(cfg.game, x, M, va_seed, va_alpha);
      std::cout << "allocation instability estimate";
    } else {
      const ScenarioGame sg = sample_scenarios(cfg.game, K, va_seed);
      const CorePolytope core = build_core(sg, 0.0, cfg.nonneg);
      if (is_empty(core).empty) {
        std::cout << "scenario core is empty at K = " << K << "; use relax mode\n";
        return kExitOk;
      }
      est = estimate_core_instability(coalition_minima(core), cfg.game, M, va_seed, va_alpha);
      std::cout << "core instability estimate";
    }
    std::cout << " (M = " << est.trials << "): " << fmt(est.estimate) << " +/- " << fmt(est.hoeffding_halfwidth)
              << " (Hoeffding, alpha = " << fmt(va_alpha) << ")\n";
    return kExitOk;
  }

  if (experiment->parsed()) {
    ExperimentConfig cfg = ex_src.resolve();
    if (!ex_mode.empty()) cfg.mode = mode_from_string(ex_mode);
    if (!ex_grid.empty()) cfg.K_grid = ex_grid;
    if (!ex_seeds.empty()) cfg.seeds = ex_seeds;
    if (ex_beta) cfg.beta = *ex_beta;
    if (ex_M) cfg.test_samples = *ex_M;
    cfg.validate();

    const auto rows = run_experiment(cfg);
    ReportFormat format;
    if (ex_format == "csv") {
      format = ReportFormat::Csv;
    } else if (ex_format == "json") {
      format = ReportFormat::Json;
    } else {
      throw ConfigError("--format must be csv or json");
    }
    if (ex_out.empty()) {
      std::cout << render_report(rows, format);
    } else {
      emit_report(rows, format, ex_out);
      std::cout << "wrote " << rows.size() << " rows to " << ex_out << "\n";
    }
    return kExitOk;
  }

  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidGameError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
