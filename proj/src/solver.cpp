#include "gtsat/solver.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace gtsat {

const char* semantics_name(Semantics s) {
  switch (s) {
    case Semantics::GT: return "gt";
    case Semantics::Godel: return "godel";
    case Semantics::Product: return "product";
    case Semantics::Lukasiewicz: return "lukasiewicz";
  }
  return "?";
}

void validate_config(const SolveConfig& config) {
  if (config.semantics == Semantics::GT && config.noise.kind == NoiseKind::None)
    throw std::invalid_argument("gt semantics requires a noise model");
  if (config.semantics != Semantics::GT && config.noise.kind != NoiseKind::None)
    throw std::invalid_argument("noiseless semantics must use noise=none");
  if (config.samples <= 0) throw std::invalid_argument("samples must be positive");
  if (config.max_epochs < 0) throw std::invalid_argument("max_epochs must be >= 0");
  if (!(config.learning_rate > 0)) throw std::invalid_argument("learning_rate must be positive");
  if (!(config.init_range > 0)) throw std::invalid_argument("init_range must be positive");
  if (config.progress_granularity <= 0)
    throw std::invalid_argument("progress_granularity must be positive");
}

namespace {

// Flattened CNF plus the bookkeeping of clause satisfaction under the sign
// assignment. Supports the O(occurrences) incremental update the sparse step
// needs; the dense baselines just rebuild it after every epoch.
class Engine {
 public:
  explicit Engine(const CnfFormula& cnf) : cnf_(cnf), num_vars_(cnf.num_vars) {
    clause_offset_.reserve(cnf.clauses.size() + 1);
    clause_offset_.push_back(0);
    for (const auto& clause : cnf.clauses) {
      for (const auto& lit : clause)
        lits_.push_back((lit.var << 1) | (lit.polarity < 0 ? 1 : 0));
      clause_offset_.push_back(static_cast<int32_t>(lits_.size()));
    }
    // Occurrence lists in CSR form, entries (clause << 1) | negated.
    std::vector<int32_t> counts(num_vars_ + 1, 0);
    for (const auto& clause : cnf.clauses)
      for (const auto& lit : clause) counts[lit.var + 1]++;
    occ_offset_.resize(num_vars_ + 1);
    occ_offset_[0] = 0;
    for (int32_t v = 0; v < num_vars_; v++) occ_offset_[v + 1] = occ_offset_[v] + counts[v + 1];
    occ_.resize(lits_.size());
    std::vector<int32_t> cursor(occ_offset_.begin(), occ_offset_.end() - 1);
    for (int32_t ci = 0; ci < static_cast<int32_t>(cnf.clauses.size()); ci++)
      for (const auto& lit : cnf.clauses[ci])
        occ_[cursor[lit.var]++] = (ci << 1) | (lit.polarity < 0 ? 1 : 0);
    signs_.resize(num_vars_);
    sat_count_.resize(cnf.clauses.size());
    perturbed_.resize(num_vars_);
  }

  int32_t num_clauses() const { return static_cast<int32_t>(cnf_.clauses.size()); }

  // Rebuilds the sign assignment and clause counters from the logits.
  void attach(const LogitVector& logits) {
    for (int32_t v = 0; v < num_vars_; v++) signs_[v] = logits[v] > 0.0 ? +1 : -1;
    num_unsat_ = 0;
    for (int32_t ci = 0; ci < num_clauses(); ci++) {
      int32_t sat = 0;
      for (int32_t k = clause_offset_[ci]; k < clause_offset_[ci + 1]; k++) {
        const int32_t lit = lits_[k];
        if (signs_[lit >> 1] == ((lit & 1) ? -1 : +1)) sat++;
      }
      sat_count_[ci] = sat;
      if (sat == 0) num_unsat_++;
    }
  }

  bool signs_satisfy() const { return num_unsat_ == 0; }
  const std::vector<int8_t>& signs() const { return signs_; }

  // One perturbed sparse epoch; assumes attach() reflects state.logits.
  void epoch_gt(SampleState& state, const NoiseModel& noise, double lr) {
    const bool noiseless = noise.kind == NoiseKind::None;
    if (!state.solved_at && signs_satisfy()) record_solve(state, signs_);

    double* values = perturbed_.data();
    if (noiseless) {
      values = state.logits.data();
    } else {
      for (int32_t v = 0; v < num_vars_; v++)
        perturbed_[v] = state.logits[v] + sample(noise, state.rng);
    }

    // Flat min-over-clauses of max-over-literals, tracking the active literal.
    double root = std::numeric_limits<double>::infinity();
    int32_t active_lit = -1;
    for (int32_t ci = 0; ci < num_clauses(); ci++) {
      double best = -std::numeric_limits<double>::infinity();
      int32_t arg = -1;
      for (int32_t k = clause_offset_[ci]; k < clause_offset_[ci + 1]; k++) {
        const int32_t lit = lits_[k];
        const double x = values[lit >> 1];
        const double v = (lit & 1) ? -x : x;
        if (v > best) {
          best = v;
          arg = k;
        }
      }
      if (best < root) {
        root = best;
        active_lit = arg;
      }
    }

    if (!state.solved_at && !noiseless && root > 0.0) {
      // The perturbed signs satisfy the formula (sign of the min/max value
      // equals the classical value of the sign assignment).
      BoolAssignment witness(num_vars_);
      for (int32_t v = 0; v < num_vars_; v++) witness[v] = perturbed_[v] > 0.0 ? +1 : -1;
      record_solve(state, witness);
    }

    const int32_t lit = lits_[active_lit];
    const int32_t var = lit >> 1;
    const int direction = (lit & 1) ? -1 : +1;
    state.logits[var] += lr * direction;
    if (!std::isfinite(state.logits[var]))
      throw std::runtime_error("non-finite logit after update (learning rate misconfigured?)");
    flip_if_sign_changed(var, state.logits[var]);
    state.epoch++;
  }

  // One dense epoch for Product/Lukasiewicz. Returns false when the state is
  // a fixed point (zero gradient): no future epoch can change anything.
  bool epoch_dense(SampleState& state, Semantics semantics, double lr) {
    if (!state.solved_at && signs_satisfy()) record_solve(state, signs_);
    const DenseGrad grad = semantics == Semantics::Product
                               ? backward_cnf_product(cnf_, state.logits)
                               : backward_cnf_lukasiewicz(cnf_, state.logits);
    bool moved = false;
    for (int32_t v = 0; v < num_vars_; v++) {
      if (grad[v] == 0.0) continue;
      state.logits[v] += lr * grad[v];
      if (!std::isfinite(state.logits[v]))
        throw std::runtime_error("non-finite logit after update (learning rate misconfigured?)");
      moved = true;
    }
    state.epoch++;
    if (moved) attach(state.logits);
    return moved;
  }

 private:
  void record_solve(SampleState& state, const BoolAssignment& witness) {
    state.solved_at = state.epoch;
    state.witness = witness;
  }

  void flip_if_sign_changed(int32_t var, double new_logit) {
    const int8_t s = new_logit > 0.0 ? +1 : -1;
    if (s == signs_[var]) return;
    signs_[var] = s;
    for (int32_t k = occ_offset_[var]; k < occ_offset_[var + 1]; k++) {
      const int32_t entry = occ_[k];
      const int32_t ci = entry >> 1;
      const int8_t lit_sign = (entry & 1) ? -1 : +1;
      if (lit_sign == s) {
        if (sat_count_[ci]++ == 0) num_unsat_--;
      } else {
        if (--sat_count_[ci] == 0) num_unsat_++;
      }
    }
  }

  const CnfFormula& cnf_;
  int32_t num_vars_;
  std::vector<int32_t> lits_;           // (var << 1) | negated
  std::vector<int32_t> clause_offset_;  // size m+1
  std::vector<int32_t> occ_offset_;     // size n+1
  std::vector<int32_t> occ_;            // (clause << 1) | negated
  std::vector<int8_t> signs_;
  std::vector<int32_t> sat_count_;
  int32_t num_unsat_ = 0;
  std::vector<double> perturbed_;
};

struct SampleOutcome {
  std::optional<int64_t> solved_at;
  std::optional<BoolAssignment> witness;
  int64_t epochs_run = 0;
};

SampleOutcome run_sample(Engine& engine, const CnfFormula& cnf, const SolveConfig& config,
                         int32_t index) {
  SampleState state = init_sample(cnf, config, index);
  engine.attach(state.logits);
  const bool sparse = config.semantics == Semantics::GT || config.semantics == Semantics::Godel;
  while (state.epoch < config.max_epochs) {
    if (sparse) {
      engine.epoch_gt(state, config.semantics == Semantics::GT ? config.noise : NoiseModel::none(),
                      config.learning_rate);
    } else {
      if (!engine.epoch_dense(state, config.semantics, config.learning_rate)) {
        // Fixed point: the remaining epochs are no-ops.
        break;
      }
    }
    if (state.solved_at && config.stop_on_solve) break;
  }
  return {state.solved_at, std::move(state.witness), state.epoch};
}

}  // namespace

SampleState init_sample(const CnfFormula& cnf, const SolveConfig& config, int32_t sample_index) {
  SampleState state;
  state.rng = Rng::stream(config.master_seed, static_cast<uint64_t>(sample_index));
  state.logits.resize(cnf.num_vars);
  for (auto& x : state.logits) x = state.rng.uniform(-config.init_range, config.init_range);
  return state;
}

void step_gt(const CnfFormula& cnf, SampleState& state, const NoiseModel& noise, double lr) {
  if (noise.kind == NoiseKind::None)
    throw std::invalid_argument("gt semantics requires a noise model");
  Engine engine(cnf);
  engine.attach(state.logits);
  engine.epoch_gt(state, noise, lr);
}

void step_baseline(const CnfFormula& cnf, SampleState& state, Semantics semantics, double lr) {
  Engine engine(cnf);
  engine.attach(state.logits);
  if (semantics == Semantics::Godel)
    engine.epoch_gt(state, NoiseModel::none(), lr);
  else if (semantics == Semantics::Product || semantics == Semantics::Lukasiewicz)
    engine.epoch_dense(state, semantics, lr);
  else
    throw std::invalid_argument("step_baseline expects a baseline semantics");
}

SolveReport solve(const CnfFormula& cnf, const SolveConfig& config, int threads) {
  validate_config(config);
  if (cnf.num_vars <= 0 || cnf.clauses.empty())
    throw std::invalid_argument("solve needs a non-empty CNF");

  std::vector<SampleOutcome> outcomes(config.samples);
  auto worker = [&](int32_t begin, int32_t end) {
    Engine engine(cnf);
    for (int32_t i = begin; i < end; i++) outcomes[i] = run_sample(engine, cnf, config, i);
  };

  if (threads <= 1 || config.samples == 1) {
    worker(0, config.samples);
  } else {
    const int n = std::min<int>(threads, config.samples);
    std::vector<std::thread> pool;
    pool.reserve(n);
    std::atomic<int32_t> next{0};
    const int32_t chunk = std::max<int32_t>(1, config.samples / (4 * n));
    for (int t = 0; t < n; t++) {
      pool.emplace_back([&] {
        for (;;) {
          const int32_t begin = next.fetch_add(chunk);
          if (begin >= config.samples) return;
          worker(begin, std::min(config.samples, begin + chunk));
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  SolveReport report;
  report.num_vars = cnf.num_vars;
  report.num_clauses = static_cast<int32_t>(cnf.clauses.size());
  report.solved_at.reserve(config.samples);
  for (const auto& o : outcomes) {
    report.solved_at.push_back(o.solved_at);
    report.total_epochs_run += o.epochs_run;
  }
  // Witness of the earliest solve; ties resolved by the lower sample index so
  // the pick does not depend on scheduling.
  for (int32_t i = 0; i < config.samples; i++) {
    if (!outcomes[i].solved_at) continue;
    if (report.witness_sample < 0 || *outcomes[i].solved_at < report.witness_epoch) {
      report.witness_sample = i;
      report.witness_epoch = *outcomes[i].solved_at;
      report.witness = outcomes[i].witness;
    }
  }
  if (report.witness && eval_bool(cnf, *report.witness) <= 0)
    throw std::logic_error("reported witness failed the classical re-check");
  report.curve = progress_curve(report.solved_at, config.max_epochs, config.progress_granularity);
  return report;
}

std::vector<std::pair<int64_t, double>> progress_curve(
    const std::vector<std::optional<int64_t>>& solved_at, int64_t max_epochs,
    int64_t granularity) {
  std::vector<std::pair<int64_t, double>> curve;
  if (solved_at.empty() || max_epochs <= 0) return curve;
  for (int64_t e = granularity; e <= max_epochs || e - granularity < max_epochs; e += granularity) {
    const int64_t snapshot = std::min(e, max_epochs);
    int32_t solved = 0;
    for (const auto& s : solved_at) solved += s.has_value() && *s <= snapshot;
    curve.emplace_back(snapshot, static_cast<double>(solved) / static_cast<double>(solved_at.size()));
    if (snapshot == max_epochs) break;
  }
  return curve;
}

}  // namespace gtsat
