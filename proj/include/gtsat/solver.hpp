#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gtsat/formula.hpp"
#include "gtsat/gradient.hpp"
#include "gtsat/noise.hpp"
#include "gtsat/semantics.hpp"

namespace gtsat {

enum class Semantics { GT, Godel, Product, Lukasiewicz };

const char* semantics_name(Semantics s);

struct SolveConfig {
  Semantics semantics = Semantics::GT;
  NoiseModel noise = NoiseModel::uniform(-1.0, 1.0);
  int32_t samples = 100;
  int64_t max_epochs = 50000;
  double learning_rate = 0.1;
  double init_range = 1.0;  // logits start uniform in (-init_range, init_range)
  uint64_t master_seed = 0;
  bool stop_on_solve = true;
  int64_t progress_granularity = 100;
};

// Throws std::invalid_argument on violated invariants (GT needs noise, the
// noiseless semantics must not carry one, positive rates/counts).
void validate_config(const SolveConfig& config);

// One independent optimization run. The rng stream drives initialization
// first (num_vars uniform draws), then per-step noise and tie-breaks, so a
// state is a pure function of (cnf, config, sample_index).
struct SampleState {
  LogitVector logits;
  std::optional<int64_t> solved_at;
  std::optional<BoolAssignment> witness;
  int64_t epoch = 0;
  Rng rng;
};

SampleState init_sample(const CnfFormula& cnf, const SolveConfig& config, int32_t sample_index);

// One epoch of the noise-perturbed sparse update: check the sign assignment,
// perturb every logit, check the perturbed signs, then move the single
// active variable by +-lr. Records solved_at/witness on the first success of
// either check.
void step_gt(const CnfFormula& cnf, SampleState& state, const NoiseModel& noise, double lr);

// One epoch of a noiseless baseline. Godel applies the same sparse update
// without perturbation; Product and Lukasiewicz take a dense gradient step.
void step_baseline(const CnfFormula& cnf, SampleState& state, Semantics semantics, double lr);

struct SolveReport {
  int32_t num_vars = 0;
  int32_t num_clauses = 0;
  std::vector<std::optional<int64_t>> solved_at;       // per sample
  std::vector<std::pair<int64_t, double>> curve;       // (epoch, cumulative solved ratio)
  std::optional<BoolAssignment> witness;               // re-checked classically
  int32_t witness_sample = -1;
  int64_t witness_epoch = -1;
  int64_t total_epochs_run = 0;

  int32_t solved_samples() const {
    int32_t n = 0;
    for (const auto& s : solved_at) n += s.has_value();
    return n;
  }
};

// Runs `config.samples` independent states for up to max_epochs epochs each.
// Deterministic given (cnf, config), independent of `threads`.
SolveReport solve(const CnfFormula& cnf, const SolveConfig& config, int threads = 1);

// Cumulative solved ratio at epochs g, 2g, ..., max_epochs.
std::vector<std::pair<int64_t, double>> progress_curve(
    const std::vector<std::optional<int64_t>>& solved_at, int64_t max_epochs, int64_t granularity);

}  // namespace gtsat
