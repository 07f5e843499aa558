#include "gtsat/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gtsat/bench.hpp"
#include "gtsat/oracle.hpp"
#include "gtsat/solver.hpp"
#include "gtsat/verify.hpp"

namespace gtsat {

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitExhausted = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;

struct CommonOpts {
  std::string semantics = "gt";
  std::string noise = "uniform";
  double noise_a = -1.0;
  double noise_b = 1.0;
  double noise_scale = 1.0;
  int32_t samples = 100;
  int64_t epochs = 50000;
  double lr = 0.1;
  double init_range = 1.0;
  uint64_t seed = 0;
  int64_t granularity = 100;
  int threads = 1;
  std::string out_path;
  std::string curve_path;
};

void add_common_options(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--semantics", o.semantics, "gt | godel | product | lukasiewicz")
      ->check(CLI::IsMember({"gt", "godel", "product", "lukasiewicz"}));
  cmd->add_option("--noise", o.noise, "uniform | logistic | gumbel | none")
      ->check(CLI::IsMember({"uniform", "logistic", "gumbel", "none"}));
  cmd->add_option("--noise-a", o.noise_a, "uniform noise lower bound");
  cmd->add_option("--noise-b", o.noise_b, "uniform noise upper bound");
  cmd->add_option("--noise-scale", o.noise_scale, "logistic/gumbel noise scale");
  cmd->add_option("--samples", o.samples, "independent runs per instance");
  cmd->add_option("--epochs", o.epochs, "maximum epochs per sample");
  cmd->add_option("--lr", o.lr, "learning rate");
  cmd->add_option("--init-range", o.init_range, "logits start uniform in (-r, r)");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--granularity", o.granularity, "epochs between progress snapshots");
  cmd->add_option("--threads", o.threads, "worker threads (results are thread-count independent)");
  cmd->add_option("--out", o.out_path, "write the JSON report here instead of stdout");
  cmd->add_option("--curve", o.curve_path, "write the progress curve as CSV");
}

NoiseModel make_noise(const CommonOpts& o) {
  if (o.noise == "none") return NoiseModel::none();
  if (o.noise == "logistic") return NoiseModel::logistic(o.noise_scale);
  if (o.noise == "gumbel") return NoiseModel::gumbel(o.noise_scale);
  return NoiseModel::uniform(o.noise_a, o.noise_b);
}

SolveConfig make_config(const CommonOpts& o) {
  SolveConfig config;
  if (o.semantics == "gt") config.semantics = Semantics::GT;
  else if (o.semantics == "godel") config.semantics = Semantics::Godel;
  else if (o.semantics == "product") config.semantics = Semantics::Product;
  else config.semantics = Semantics::Lukasiewicz;
  // Noise flags only apply to gt; the noiseless semantics ignore them.
  config.noise = config.semantics == Semantics::GT ? make_noise(o) : NoiseModel::none();
  config.samples = o.samples;
  config.max_epochs = o.epochs;
  config.learning_rate = o.lr;
  config.init_range = o.init_range;
  config.master_seed = o.seed;
  config.progress_granularity = o.granularity;
  validate_config(config);
  return config;
}

void emit(const nlohmann::json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::invalid_argument("cannot write '" + out_path + "'");
    f << j.dump(2) << '\n';
  }
}

void emit_curve(const std::vector<std::pair<int64_t, double>>& curve, const std::string& path) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot write '" + path + "'");
  f << export_curve_csv(curve);
}

int run_solve(const std::string& file, const CommonOpts& opts) {
  const SolveConfig config = make_config(opts);
  const auto parsed = parse_dimacs_file(file);
  for (const auto& w : parsed.warnings) std::cerr << file << ": " << w << '\n';
  const auto t0 = std::chrono::steady_clock::now();
  const SolveReport report = solve(parsed.cnf, config, opts.threads);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(solve_report_to_json(report, config, file, wall), opts.out_path);
  emit_curve(report.curve, opts.curve_path);
  return report.witness ? kExitSolved : kExitExhausted;
}

int run_bench(const std::string& dir, const CommonOpts& opts, const BenchFilter& filter) {
  const SolveConfig config = make_config(opts);
  const BenchReport report = run_benchmark(dir, config, filter, opts.threads);
  emit(bench_report_to_json(report), opts.out_path);
  emit_curve(report.curve, opts.curve_path);
  for (const auto& inst : report.instances)
    if (!inst.ok()) std::cerr << "error: " << inst.path << ": " << inst.error << '\n';
  const bool any_ok =
      std::any_of(report.instances.begin(), report.instances.end(),
                  [](const InstanceResult& r) { return r.ok(); });
  if (!any_ok) return kExitInput;
  return report.b_percent >= 100.0 ? kExitSolved : kExitExhausted;
}

int run_verify(uint64_t seed) {
  bool all = true;
  for (const auto& suite : run_verification(seed)) {
    std::cout << suite.name << ": " << (suite.pass ? "PASS" : "FAIL") << " (" << suite.detail
              << ")\n";
    all &= suite.pass;
  }
  return all ? kExitSolved : kExitExhausted;
}

int run_prob(const std::string& file, const CommonOpts& opts, const std::string& pi_list,
             uint64_t draws) {
  std::ifstream f(file);
  if (!f) throw ParseError("cannot open '" + file + "'", 0);
  std::stringstream buffer;
  buffer << f.rdbuf();
  const auto parsed = parse_formula_text(buffer.str());
  const int32_t n = parsed.formula.num_vars();

  std::vector<double> probs(n, 0.5);
  if (!pi_list.empty()) {
    probs.clear();
    std::stringstream ss(pi_list);
    std::string item;
    while (std::getline(ss, item, ',')) probs.push_back(std::stod(item));
    if (static_cast<int32_t>(probs.size()) != n)
      throw std::invalid_argument("--pi needs exactly " + std::to_string(n) + " values");
  }

  const auto exact = prob_logic_exact(parsed.formula, probs);
  nlohmann::json j;
  j["schema_version"] = 1;
  j["type"] = "prob";
  j["instance"] = file;
  j["num_vars"] = n;
  j["var_names"] = parsed.var_names;
  j["pi"] = probs;
  j["exact_probability"] = exact.probability;
  j["satisfying_count"] = exact.satisfying_count;

  const NoiseModel model = make_noise(opts);
  if (model.kind != NoiseKind::None) {
    LogitVector logits(n);
    for (int32_t i = 0; i < n; i++) logits[i] = theta_inv(model, probs[i]);
    Rng rng(opts.seed);
    const auto est = mc_implicit_prob(parsed.formula, logits, model, draws, rng);
    j["mc"] = {{"noise", model.describe()},
               {"draws", est.draws},
               {"p_hat", est.p_hat},
               {"sigma", est.sigma},
               {"abs_error", std::abs(est.p_hat - exact.probability)}};
  }
  emit(j, opts.out_path);
  return kExitSolved;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Differentiable SAT solving over min/max semantics with noise perturbation"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string solve_file, bench_dir, prob_file;
  BenchFilter filter;
  uint64_t prob_draws = 100000;
  std::string pi_list;

  auto* solve_cmd = app.add_subcommand("solve", "solve one DIMACS CNF instance");
  solve_cmd->add_option("file", solve_file, "DIMACS CNF file")->required();
  add_common_options(solve_cmd, opts);

  auto* bench_cmd = app.add_subcommand("bench", "run a directory of DIMACS instances");
  bench_cmd->add_option("dir", bench_dir, "instance directory")->required();
  add_common_options(bench_cmd, opts);
  bench_cmd->add_option("--limit", filter.limit, "take only the first N instances (sorted)");
  bench_cmd->add_option("--glob", filter.glob, "file name filter (default *.cnf)");

  auto* verify_cmd = app.add_subcommand("verify", "run the property suites");
  verify_cmd->add_option("--seed", opts.seed, "suite seed");

  auto* prob_cmd = app.add_subcommand("prob", "exact vs Monte-Carlo probability of a formula");
  prob_cmd->add_option("file", prob_file, "prefix-notation formula file")->required();
  add_common_options(prob_cmd, opts);
  prob_cmd->add_option("--pi", pi_list, "comma-separated per-variable probabilities");
  prob_cmd->add_option("--draws", prob_draws, "Monte-Carlo draws");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve_file, opts);
    if (bench_cmd->parsed()) return run_bench(bench_dir, opts, filter);
    if (verify_cmd->parsed()) return run_verify(opts.seed);
    return run_prob(prob_file, opts, pi_list, prob_draws);
  } catch (const ParseError& e) {
    std::cerr << "input error";
    if (e.line() > 0) std::cerr << " (line " << e.line() << ")";
    std::cerr << ": " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace gtsat
