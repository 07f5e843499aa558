#pragma once

#include "gtsat/formula.hpp"
#include "gtsat/rng.hpp"

namespace gtsat {

// Uniform random k-SAT: clauses of `k` distinct variables with random
// polarities; tautologies are impossible, duplicate clauses are resampled.
CnfFormula random_ksat(int32_t num_vars, int32_t num_clauses, int32_t k, Rng& rng);

// random_ksat filtered to satisfiable instances through the brute-force
// oracle. num_vars must stay within the oracle cap (26).
CnfFormula random_ksat_satisfiable(int32_t num_vars, int32_t num_clauses, int32_t k, Rng& rng);

// 3-colouring CNF of a random graph with a hidden 3-partition: edges only
// cross colour classes, so the instance is satisfiable by construction.
// Variables: vertex v, colour c -> 3v + c. Clauses: one at-least-one per
// vertex, three at-most-one pairs per vertex, three per edge.
CnfFormula random_coloring_cnf(int32_t vertices, int32_t edges, Rng& rng);

// Random formula tree for property tests: every variable in [0, num_vars)
// occurs at least once, connectives are n-ary (2..3 children), depth bounded.
Formula random_formula(int32_t num_vars, int32_t max_depth, Rng& rng);

}  // namespace gtsat
