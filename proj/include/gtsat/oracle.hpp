#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "gtsat/formula.hpp"
#include "gtsat/noise.hpp"
#include "gtsat/semantics.hpp"

namespace gtsat {

// First satisfying assignment in lexicographic order (-1 before +1, variable
// 0 most significant), or nullopt. Capped at 26 variables.
std::optional<BoolAssignment> brute_force_sat(const CnfFormula& cnf);
std::optional<BoolAssignment> brute_force_sat(const Formula& f);

struct ExactProbResult {
  double probability = 0.0;
  uint64_t satisfying_count = 0;
};

// Exact probability that the formula is true when variable i is true
// independently with probability probs[i]. Enumerates all assignments;
// capped at 20 variables.
ExactProbResult prob_logic_exact(const Formula& f, std::span<const double> probs);

struct McEstimate {
  double p_hat = 0.0;
  double sigma = 0.0;
  uint64_t draws = 0;
};

// Monte-Carlo estimate of P(root of the perturbed evaluation > 0) with
// binomial standard error.
McEstimate mc_implicit_prob(const Formula& f, std::span<const double> logits,
                            const NoiseModel& model, uint64_t n_draws, Rng& rng);

}  // namespace gtsat
