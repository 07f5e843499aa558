#include "gtsat/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <sstream>
#include <thread>

namespace gtsat {

bool glob_match(const std::string& pattern, const std::string& name) {
  // Iterative wildcard match with backtracking over the last '*'.
  size_t p = 0, n = 0, star = std::string::npos, mark = 0;
  while (n < name.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == name[n])) {
      p++;
      n++;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = n;
    } else if (star != std::string::npos) {
      p = star + 1;
      n = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') p++;
  return p == pattern.size();
}

std::pair<double, double> aggregate_sb(const std::vector<InstanceResult>& instances) {
  double frac_sum = 0.0;
  int32_t ok = 0, solved_instances = 0;
  for (const auto& inst : instances) {
    if (!inst.ok()) continue;
    ok++;
    int32_t solved = 0;
    for (const auto& s : inst.solved_at) solved += s.has_value();
    if (solved > 0) solved_instances++;
    if (!inst.solved_at.empty())
      frac_sum += static_cast<double>(solved) / static_cast<double>(inst.solved_at.size());
  }
  if (ok == 0) return {0.0, 0.0};
  return {100.0 * frac_sum / ok, 100.0 * solved_instances / ok};
}

BenchReport run_benchmark(const std::string& dir, const SolveConfig& config,
                          const BenchFilter& filter, int threads) {
  validate_config(config);
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw std::invalid_argument("not a directory: " + dir);

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (glob_match(filter.glob, entry.path().filename().string())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (filter.limit > 0 && static_cast<int32_t>(files.size()) > filter.limit)
    files.resize(filter.limit);
  if (files.empty()) throw std::invalid_argument("no instances matching '" + filter.glob +
                                                 "' in " + dir);

  BenchReport report;
  report.config = config;
  const auto t0 = std::chrono::steady_clock::now();

  // One instance: parallelize over samples. Several: parallelize over
  // instances, one solver thread each. Results land in index-addressed slots,
  // so the report is identical for any thread count.
  std::vector<InstanceResult> results(files.size());
  std::vector<int64_t> epochs(files.size(), 0);
  auto run_instance = [&](size_t i, int solver_threads) {
    InstanceResult& inst = results[i];
    inst.path = files[i].string();
    try {
      const auto parsed = parse_dimacs_file(inst.path);
      inst.num_vars = parsed.cnf.num_vars;
      inst.num_clauses = static_cast<int32_t>(parsed.cnf.clauses.size());
      SolveReport r = solve(parsed.cnf, config, solver_threads);
      inst.solved_at = std::move(r.solved_at);
      epochs[i] = r.total_epochs_run;
    } catch (const std::exception& e) {
      inst.error = e.what();
    }
  };

  if (threads <= 1 || files.size() == 1) {
    for (size_t i = 0; i < files.size(); i++) run_instance(i, threads);
  } else {
    std::atomic<size_t> next{0};
    const int n = std::min<int>(threads, static_cast<int>(files.size()));
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (int t = 0; t < n; t++) {
      pool.emplace_back([&] {
        for (;;) {
          const size_t i = next.fetch_add(1);
          if (i >= files.size()) return;
          run_instance(i, 1);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  std::vector<std::vector<std::optional<int64_t>>> all_solved;
  for (size_t i = 0; i < files.size(); i++) {
    report.total_epochs_run += epochs[i];
    if (results[i].ok()) all_solved.push_back(results[i].solved_at);
    report.instances.push_back(std::move(results[i]));
  }

  const auto t1 = std::chrono::steady_clock::now();
  report.wall_time_sec = std::chrono::duration<double>(t1 - t0).count();
  report.steps_per_sec =
      report.wall_time_sec > 0 ? static_cast<double>(report.total_epochs_run) / report.wall_time_sec
                               : 0.0;
  std::tie(report.s_percent, report.b_percent) = aggregate_sb(report.instances);

  // Pooled curve over every (instance, sample) pair.
  std::vector<std::optional<int64_t>> pooled;
  for (const auto& v : all_solved) pooled.insert(pooled.end(), v.begin(), v.end());
  report.curve = progress_curve(pooled, config.max_epochs, config.progress_granularity);
  return report;
}

std::string export_curve_csv(const std::vector<std::pair<int64_t, double>>& curve) {
  std::ostringstream os;
  os << "epoch,solved_ratio\n";
  for (const auto& [epoch, ratio] : curve) {
    os << epoch << ',';
    // Shortest round-trip representation, same as the JSON side.
    os << nlohmann::json(ratio).dump();
    os << '\n';
  }
  return os.str();
}

nlohmann::json config_to_json(const SolveConfig& config) {
  nlohmann::json noise;
  noise["kind"] = [&] {
    switch (config.noise.kind) {
      case NoiseKind::None: return "none";
      case NoiseKind::Logistic: return "logistic";
      case NoiseKind::Uniform: return "uniform";
      case NoiseKind::Gumbel: return "gumbel";
    }
    return "?";
  }();
  if (config.noise.kind == NoiseKind::Uniform) {
    noise["a"] = config.noise.a;
    noise["b"] = config.noise.b;
  } else if (config.noise.kind != NoiseKind::None) {
    noise["scale"] = config.noise.scale;
  }
  return {
      {"semantics", semantics_name(config.semantics)},
      {"noise", noise},
      {"samples", config.samples},
      {"max_epochs", config.max_epochs},
      {"learning_rate", config.learning_rate},
      {"init_range", config.init_range},
      {"master_seed", config.master_seed},
      {"stop_on_solve", config.stop_on_solve},
      {"progress_granularity", config.progress_granularity},
  };
}

namespace {

nlohmann::json solved_at_json(const std::vector<std::optional<int64_t>>& solved_at) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : solved_at) {
    if (s) arr.push_back(*s);
    else arr.push_back(nullptr);
  }
  return arr;
}

nlohmann::json curve_json(const std::vector<std::pair<int64_t, double>>& curve) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [epoch, ratio] : curve) arr.push_back({{"epoch", epoch}, {"ratio", ratio}});
  return arr;
}

}  // namespace

nlohmann::json solve_report_to_json(const SolveReport& report, const SolveConfig& config,
                                    const std::string& instance_path, double wall_time_sec) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["type"] = "solve";
  j["instance"] = instance_path;
  j["num_vars"] = report.num_vars;
  j["num_clauses"] = report.num_clauses;
  j["config"] = config_to_json(config);
  j["samples"] = static_cast<int64_t>(report.solved_at.size());
  j["solved_samples"] = report.solved_samples();
  j["solved"] = report.witness.has_value();
  j["solved_at"] = solved_at_json(report.solved_at);
  if (report.witness) {
    nlohmann::json w = nlohmann::json::array();
    for (size_t v = 0; v < report.witness->size(); v++)
      w.push_back((*report.witness)[v] > 0 ? static_cast<int64_t>(v + 1)
                                           : -static_cast<int64_t>(v + 1));
    j["witness"] = w;
    j["witness_sample"] = report.witness_sample;
    j["witness_epoch"] = report.witness_epoch;
  } else {
    j["witness"] = nullptr;
  }
  j["curve"] = curve_json(report.curve);
  j["total_epochs_run"] = report.total_epochs_run;
  j["wall_time_sec"] = wall_time_sec;
  j["steps_per_sec"] =
      wall_time_sec > 0 ? static_cast<double>(report.total_epochs_run) / wall_time_sec : 0.0;
  return j;
}

nlohmann::json bench_report_to_json(const BenchReport& report) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["type"] = "bench";
  j["config"] = config_to_json(report.config);
  nlohmann::json insts = nlohmann::json::array();
  for (const auto& inst : report.instances) {
    nlohmann::json ji;
    ji["path"] = inst.path;
    if (inst.ok()) {
      ji["num_vars"] = inst.num_vars;
      ji["num_clauses"] = inst.num_clauses;
      ji["solved_at"] = solved_at_json(inst.solved_at);
    } else {
      ji["error"] = inst.error;
    }
    insts.push_back(std::move(ji));
  }
  j["instances"] = insts;
  j["aggregates"] = {
      {"s_percent", report.s_percent},
      {"b_percent", report.b_percent},
      {"instances_total", report.instances.size()},
      {"instances_error",
       std::count_if(report.instances.begin(), report.instances.end(),
                     [](const InstanceResult& r) { return !r.ok(); })},
  };
  j["curve"] = curve_json(report.curve);
  j["total_epochs_run"] = report.total_epochs_run;
  j["wall_time_sec"] = report.wall_time_sec;
  j["steps_per_sec"] = report.steps_per_sec;
  return j;
}

BenchReport bench_report_from_json(const nlohmann::json& j) {
  BenchReport report;
  for (const auto& ji : j.at("instances")) {
    InstanceResult inst;
    inst.path = ji.at("path").get<std::string>();
    if (ji.contains("error")) {
      inst.error = ji.at("error").get<std::string>();
    } else {
      inst.num_vars = ji.at("num_vars").get<int32_t>();
      inst.num_clauses = ji.at("num_clauses").get<int32_t>();
      for (const auto& s : ji.at("solved_at")) {
        if (s.is_null()) inst.solved_at.push_back(std::nullopt);
        else inst.solved_at.push_back(s.get<int64_t>());
      }
    }
    report.instances.push_back(std::move(inst));
  }
  report.s_percent = j.at("aggregates").at("s_percent").get<double>();
  report.b_percent = j.at("aggregates").at("b_percent").get<double>();
  for (const auto& c : j.at("curve"))
    report.curve.emplace_back(c.at("epoch").get<int64_t>(), c.at("ratio").get<double>());
  report.total_epochs_run = j.at("total_epochs_run").get<int64_t>();
  report.wall_time_sec = j.at("wall_time_sec").get<double>();
  report.steps_per_sec = j.at("steps_per_sec").get<double>();
  return report;
}

}  // namespace gtsat
