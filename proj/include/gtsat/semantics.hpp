#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "gtsat/formula.hpp"
#include "gtsat/rng.hpp"

namespace gtsat {

// Per-variable real truth values (min/max logic over logits).
using LogitVector = std::vector<double>;

// Per-variable classical truth values, entries exactly -1 or +1.
using BoolAssignment = std::vector<int8_t>;

// sign(0) is -1 by convention; under continuous noise an exact zero has
// probability zero, so the choice only matters in hand-built fixtures.
inline int sign(double x) { return x > 0.0 ? +1 : -1; }

// Classical evaluation via min/max/negation over {-1,+1}.
int eval_bool(const Formula& f, const BoolAssignment& b);
int eval_bool(const CnfFormula& cnf, const BoolAssignment& b);

// Per-node classical values, indexed by node id.
std::vector<int8_t> eval_bool_nodes(const Formula& f, const BoolAssignment& b);

// Forward evaluation annotated for the backward pass: per-node truth values
// plus, for every And/Or node, which child attained the min/max.
struct AnnotatedEval {
  double root_value = 0.0;
  std::vector<double> values;    // node id -> value
  std::vector<int32_t> winner;   // node id -> child slot (And/Or), else -1
};

// Min/max evaluation over logits. Exact ties between children are broken
// uniformly at random from `rng`, so the recorded winner is the one the
// backward pass must follow. Throws on non-finite logits.
AnnotatedEval eval_godel(const Formula& f, std::span<const double> logits, Rng& rng);

// Value-only evaluation, no winner tracking, no allocation beyond `scratch`
// (resized to f.num_nodes()). Hot path for Monte-Carlo estimation.
double eval_godel_value(const Formula& f, std::span<const double> logits,
                        std::vector<double>& scratch);

// Flat min/max pass over a CNF: value of the conjunction, the index of the
// minimal clause and, per clause, the index of its maximal literal. Ties are
// broken towards the lower index (the arena evaluator breaks them randomly;
// both agree whenever values are distinct).
struct CnfGodelEval {
  double root = 0.0;
  int32_t min_clause = -1;
  std::vector<int32_t> max_literal;  // per clause, index within the clause
};
CnfGodelEval eval_cnf_godel(const CnfFormula& cnf, std::span<const double> logits);

// Product-logic value of a CNF in log space: variable truth sigmoid(logit),
// clause value 1 - prod(1 - v_lit), objective sum of clause logs. Clause
// values are clamped to >= 1e-300 before the log.
struct CnfProductEval {
  double log_value = 0.0;
  std::vector<double> clause_values;
};
CnfProductEval eval_cnf_product(const CnfFormula& cnf, std::span<const double> logits);

// Lukasiewicz value: clause min(1, sum v_lit), formula max(0, sum - (m-1)).
struct CnfLukasiewiczEval {
  double value = 0.0;
  std::vector<double> clause_values;
};
CnfLukasiewiczEval eval_cnf_lukasiewicz(const CnfFormula& cnf, std::span<const double> logits);

// Signs of every node value: the Boolean interpretation implicitly carried by
// a continuous one. Indexed by node id.
std::vector<int8_t> implicit_interpretation(const Formula& f, std::span<const double> logits);

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace gtsat
