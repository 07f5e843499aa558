#pragma once

#include <span>
#include <vector>

#include "gtsat/formula.hpp"
#include "gtsat/semantics.hpp"

namespace gtsat {

// Root-to-variable path through a formula arena. `prefix_negations[i]` counts
// the Not nodes strictly before position i, so the partial derivative of the
// root with respect to nodes[i] along the path is (-1)^prefix_negations[i].
struct Path {
  std::vector<int32_t> nodes;
  std::vector<int32_t> prefix_negations;
};

// The single nonzero entry of the gradient of a min/max formula: which
// variable, which direction (+1/-1), and the path that carries it.
struct SparseGrad {
  int32_t var = -1;
  int direction = +1;
  Path path;
};

// Same information for the flat CNF pass: the unique active literal.
struct CnfSparseGrad {
  int32_t var = -1;
  int direction = +1;
  int32_t clause = -1;
  int32_t literal = -1;  // index within the clause
};

using DenseGrad = std::vector<double>;

// Follows the winners recorded during evaluation from the root down to a
// variable, flipping direction at each negation. Exactly one variable has a
// nonzero derivative and it is +-1.
SparseGrad backward_godel(const Formula& f, const AnnotatedEval& eval);

// CNF version over eval_cnf_godel output: derivative +1 for a positive
// literal, -1 for a negated one.
CnfSparseGrad backward_cnf_godel(const CnfFormula& cnf, const CnfGodelEval& eval);

// Verifies that along the returned path the derivative of the root w.r.t.
// every node equals the product of the two nodes' implicit truth values.
bool check_sign_product_law(const Formula& f, std::span<const double> logits,
                            const SparseGrad& grad);

// Necessary condition for a path to be active under *some* continuous
// representation of `b`: every prefix must satisfy
//   sign(root) * sign(node_i) == (-1)^prefix_negations[i].
// Returns false when some prefix violates it. Throws if the path is not
// structurally valid in `f`.
bool candidate_path_necessary(const Formula& f, const BoolAssignment& b, const Path& path);

// Constants for construct_representation; any values with
// beta < alpha < gamma < 0 < delta are accepted.
struct RepresentationConstants {
  double alpha = -2.0;
  double beta = -3.0;
  double gamma = -1.0;
  double delta = 4.0;
};

// Builds a logit vector that (a) is a representation of `b` (per-variable
// signs match) and (b) routes the active path through the requested literal
// of the requested clause. Preconditions: the clause is unsatisfied under `b`
// and relevant; violations throw std::invalid_argument naming the failed one.
LogitVector construct_representation(const CnfFormula& cnf, const BoolAssignment& b,
                                     int32_t clause, int32_t literal,
                                     const RepresentationConstants& k = {});

// Analytic gradient of the log-product objective w.r.t. logits.
DenseGrad backward_cnf_product(const CnfFormula& cnf, std::span<const double> logits);

// Subgradient of the Lukasiewicz objective; 0 inside any clamped region
// (boundary values take subgradient 0).
DenseGrad backward_cnf_lukasiewicz(const CnfFormula& cnf, std::span<const double> logits);

}  // namespace gtsat
