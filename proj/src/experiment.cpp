#include "corecert/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "corecert/errors.hpp"
#include "corecert/relaxation.hpp"
#include "corecert/scenario_core.hpp"
#include "corecert/validation.hpp"

namespace corecert {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Both report formats carry the same 12-significant-digit values.
double round12(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

void sort_rows(std::vector<ReportRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (a.K != b.K) return a.K < b.K;
    return a.seed < b.seed;
  });
}

}  // namespace

std::vector<ReportRow> run_core_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.mode != ExperimentMode::CoreCertify) throw ConfigError("run_core_experiment: config mode is not core-certify");

  std::vector<ReportRow> rows;
  for (int K : cfg.K_grid) {
    for (std::uint64_t seed : cfg.seeds) {
      const auto start = std::chrono::steady_clock::now();
      ReportRow row;
      row.K = K;
      row.seed = seed;

      const ScenarioGame sg = sample_scenarios(cfg.game, K, seed);
      const CorePolytope core = build_core(sg, 0.0, cfg.nonneg);
      if (is_empty(core).empty) {
        row.core_empty = true;  // certification needs the relaxed program
        row.wall_time_ms = elapsed_ms(start);
        rows.push_back(row);
        continue;
      }
      const CompressionResult compression = compression_set(sg);
      row.s = compression.cardinality;
      row.bound = eps_posteriori(K, cfg.beta, compression.cardinality);
      const std::vector<double> minima = coalition_minima(core);
      const ViolationEstimate est = estimate_core_instability(minima, cfg.game, cfg.test_samples, seed, cfg.alpha);
      row.empirical = est.estimate;
      row.halfwidth = est.hoeffding_halfwidth;
      row.wall_time_ms = elapsed_ms(start);
      rows.push_back(row);
    }
  }
  sort_rows(rows);
  return rows;
}

std::vector<ReportRow> run_relax_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.mode != ExperimentMode::RelaxCertify) throw ConfigError("run_relax_experiment: config mode is not relax-certify");

  std::vector<ReportRow> rows;
  for (int K : cfg.K_grid) {
    for (std::uint64_t seed : cfg.seeds) {
      const auto start = std::chrono::steady_clock::now();
      ReportRow row;
      row.K = K;
      row.seed = seed;

      const ScenarioGame sg = sample_scenarios(cfg.game, K, seed);
      const RelaxationResult relaxed = solve_relaxed(sg);
      row.s = relaxed.s_star;
      row.zeta_star = relaxed.zeta_star;
      row.core_empty = !relaxed.core_nonempty;
      if (relaxed.s_star >= 1) {
        row.bound = theta_bound(K, relaxed.s_star, cfg.beta);
      } else {
        row.bound = risk_interval(K, 0, cfg.beta).hi;  // theta is undefined at s = 0
      }
      const ViolationEstimate est =
          estimate_point_instability(cfg.game, relaxed.x_star, cfg.test_samples, seed, cfg.alpha);
      row.empirical = est.estimate;
      row.halfwidth = est.hoeffding_halfwidth;
      row.wall_time_ms = elapsed_ms(start);
      rows.push_back(row);
    }
  }
  sort_rows(rows);
  return rows;
}

std::vector<ReportRow> run_experiment(const ExperimentConfig& cfg) {
  return cfg.mode == ExperimentMode::CoreCertify ? run_core_experiment(cfg) : run_relax_experiment(cfg);
}

std::string render_report(std::vector<ReportRow> rows, ReportFormat format) {
  if (rows.empty()) throw std::invalid_argument("render_report: no rows");
  sort_rows(rows);

  if (format == ReportFormat::Csv) {
    std::ostringstream out;
    out << "K,seed,s,bound,empirical,halfwidth,zeta_star,core_empty,wall_time_ms\n";
    for (const auto& r : rows) {
      out << r.K << ',' << r.seed << ',' << r.s << ',' << format_number(r.bound) << ',' << format_number(r.empirical)
          << ',' << format_number(r.halfwidth) << ',' << format_number(r.zeta_star) << ','
          << (r.core_empty ? "true" : "false") << ',' << format_number(r.wall_time_ms) << '\n';
    }
    return out.str();
  }

  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows) {
    j.push_back({{"K", r.K},
                 {"seed", r.seed},
                 {"s", r.s},
                 {"bound", round12(r.bound)},
                 {"empirical", round12(r.empirical)},
                 {"halfwidth", round12(r.halfwidth)},
                 {"zeta_star", round12(r.zeta_star)},
                 {"core_empty", r.core_empty},
                 {"wall_time_ms", round12(r.wall_time_ms)}});
  }
  return j.dump(2) + "\n";
}

void emit_report(const std::vector<ReportRow>& rows, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open report path for writing: " + path);
  out << render_report(rows, format);
  if (!out) throw ConfigError("failed while writing report to " + path);
}

std::vector<ReportRow> parse_csv_report(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("csv report: missing header");
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    std::vector<std::string> parts;
    while (std::getline(fields, field, ',')) parts.push_back(field);
    if (parts.size() != 9) throw ConfigError("csv report: expected 9 fields per row");
    ReportRow r;
    r.K = std::stoi(parts[0]);
    r.seed = std::stoull(parts[1]);
    r.s = std::stoi(parts[2]);
    r.bound = std::stod(parts[3]);
    r.empirical = std::stod(parts[4]);
    r.halfwidth = std::stod(parts[5]);
    r.zeta_star = std::stod(parts[6]);
    r.core_empty = parts[7] == "true";
    r.wall_time_ms = std::stod(parts[8]);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace corecert
