#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gtsat/solver.hpp"

namespace gtsat {

struct InstanceResult {
  std::string path;
  int32_t num_vars = 0;
  int32_t num_clauses = 0;
  std::vector<std::optional<int64_t>> solved_at;
  std::string error;  // non-empty: excluded from aggregates

  bool ok() const { return error.empty(); }
  bool any_solved() const {
    for (const auto& s : solved_at)
      if (s) return true;
    return false;
  }
};

struct BenchReport {
  SolveConfig config;
  std::vector<InstanceResult> instances;
  double s_percent = 0.0;  // mean over instances of solved-sample fraction, x100
  double b_percent = 0.0;  // fraction of instances with >= 1 solved sample, x100
  std::vector<std::pair<int64_t, double>> curve;  // pooled over all samples
  int64_t total_epochs_run = 0;
  double wall_time_sec = 0.0;
  double steps_per_sec = 0.0;
};

struct BenchFilter {
  std::string glob = "*.cnf";
  int32_t limit = 0;  // 0 = all
};

// '*' and '?' wildcard match on the file name.
bool glob_match(const std::string& pattern, const std::string& name);

// Runs solve() on every matching file of `dir` (sorted by name). Unreadable
// or malformed files become per-instance errors and stay out of the
// aggregates.
BenchReport run_benchmark(const std::string& dir, const SolveConfig& config,
                          const BenchFilter& filter = {}, int threads = 1);

// (S, B) as percentages over the error-free instances.
std::pair<double, double> aggregate_sb(const std::vector<InstanceResult>& instances);

// One "epoch,solved_ratio" row per snapshot.
std::string export_curve_csv(const std::vector<std::pair<int64_t, double>>& curve);

nlohmann::json config_to_json(const SolveConfig& config);
nlohmann::json solve_report_to_json(const SolveReport& report, const SolveConfig& config,
                                    const std::string& instance_path, double wall_time_sec);
nlohmann::json bench_report_to_json(const BenchReport& report);

// Reads back the fields needed to recompute aggregates (round-trip checks).
BenchReport bench_report_from_json(const nlohmann::json& j);

}  // namespace gtsat
