#include "gtsat/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace gtsat {

namespace {

constexpr int32_t kBruteForceCap = 26;
constexpr int32_t kExactProbCap = 20;

BoolAssignment assignment_from_mask(uint64_t mask, int32_t n) {
  BoolAssignment b(n);
  for (int32_t i = 0; i < n; i++)
    b[i] = ((mask >> (n - 1 - i)) & 1) ? +1 : -1;
  return b;
}

template <typename Eval>
std::optional<BoolAssignment> brute_force_impl(int32_t n, Eval&& satisfied) {
  if (n > kBruteForceCap) throw std::invalid_argument("too many variables for brute force");
  const uint64_t total = uint64_t(1) << n;
  for (uint64_t mask = 0; mask < total; mask++) {
    auto b = assignment_from_mask(mask, n);
    if (satisfied(b)) return b;
  }
  return std::nullopt;
}

}  // namespace

std::optional<BoolAssignment> brute_force_sat(const CnfFormula& cnf) {
  return brute_force_impl(cnf.num_vars,
                          [&](const BoolAssignment& b) { return eval_bool(cnf, b) > 0; });
}

std::optional<BoolAssignment> brute_force_sat(const Formula& f) {
  return brute_force_impl(f.num_vars(),
                          [&](const BoolAssignment& b) { return eval_bool(f, b) > 0; });
}

ExactProbResult prob_logic_exact(const Formula& f, std::span<const double> probs) {
  const int32_t n = f.num_vars();
  if (n > kExactProbCap) throw std::invalid_argument("too many variables for exact enumeration");
  if (static_cast<int32_t>(probs.size()) < n)
    throw std::invalid_argument("probability vector does not cover all variables");
  for (int32_t i = 0; i < n; i++)
    if (!(probs[i] >= 0.0 && probs[i] <= 1.0))
      throw std::invalid_argument("probabilities must lie in [0,1]");

  ExactProbResult result;
  const uint64_t total = uint64_t(1) << n;
  for (uint64_t mask = 0; mask < total; mask++) {
    const auto b = assignment_from_mask(mask, n);
    if (eval_bool(f, b) <= 0) continue;
    result.satisfying_count++;
    double p = 1.0;
    for (int32_t i = 0; i < n; i++) p *= b[i] > 0 ? probs[i] : 1.0 - probs[i];
    result.probability += p;
  }
  // The summation can overshoot [0,1] by rounding; keep the invariant exact.
  result.probability = std::min(1.0, std::max(0.0, result.probability));
  return result;
}

McEstimate mc_implicit_prob(const Formula& f, std::span<const double> logits,
                            const NoiseModel& model, uint64_t n_draws, Rng& rng) {
  if (model.kind == NoiseKind::None)
    throw std::invalid_argument("Monte-Carlo estimation needs a noise model");
  if (static_cast<int32_t>(logits.size()) < f.num_vars())
    throw std::invalid_argument("logit vector does not cover all variables");

  const int32_t n = f.num_vars();
  std::vector<double> perturbed(n);
  std::vector<double> scratch;
  uint64_t positive = 0;
  for (uint64_t d = 0; d < n_draws; d++) {
    for (int32_t i = 0; i < n; i++) perturbed[i] = logits[i] + sample(model, rng);
    if (eval_godel_value(f, perturbed, scratch) > 0.0) positive++;
  }
  McEstimate est;
  est.draws = n_draws;
  est.p_hat = n_draws ? static_cast<double>(positive) / static_cast<double>(n_draws) : 0.0;
  est.sigma = n_draws ? std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(n_draws)) : 0.0;
  return est;
}

}  // namespace gtsat
