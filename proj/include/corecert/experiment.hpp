#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "corecert/config.hpp"

namespace corecert {

// One experiment row per (K, seed) pair. In core mode s is the compression
// cardinality and bound is eps(s); in relax mode s is the active-sample
// count and bound is theta(s) (or the risk-interval upper end when s = 0,
// where theta is undefined).
struct ReportRow {
  int K = 0;
  std::uint64_t seed = 0;
  int s = 0;
  double bound = 0.0;
  double empirical = 0.0;
  double halfwidth = 0.0;
  double zeta_star = 0.0;
  bool core_empty = false;
  double wall_time_ms = 0.0;
};

// Certification pipeline for a nonempty scenario core: sample, build the
// core, enumerate the compression set, certify at eps(s_K), and measure the
// empirical core instability on fresh test draws. Rows with an empty core
// are flagged and skipped (use relax mode for those games).
std::vector<ReportRow> run_core_experiment(const ExperimentConfig& cfg);

// Relaxed pipeline: sample, solve the relaxed program for a least-core
// allocation, certify at theta(s*), and measure the allocation's empirical
// instability on fresh test draws.
std::vector<ReportRow> run_relax_experiment(const ExperimentConfig& cfg);

// Dispatches on cfg.mode.
std::vector<ReportRow> run_experiment(const ExperimentConfig& cfg);

enum class ReportFormat { Csv, Json };

// CSV header: K,seed,s,bound,empirical,halfwidth,zeta_star,core_empty,wall_time_ms
// JSON mirrors the field names. Numbers carry 12 significant digits; rows
// are sorted by (K, seed).
std::string render_report(std::vector<ReportRow> rows, ReportFormat format);
void emit_report(const std::vector<ReportRow>& rows, ReportFormat format, const std::string& path);

std::vector<ReportRow> parse_csv_report(const std::string& text);

}  // namespace corecert
