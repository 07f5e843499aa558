#include "gtsat/gradient.hpp"

#include <cmath>
#include <stdexcept>

namespace gtsat {

SparseGrad backward_godel(const Formula& f, const AnnotatedEval& eval) {
  if (static_cast<int32_t>(eval.values.size()) != f.num_nodes() ||
      static_cast<int32_t>(eval.winner.size()) != f.num_nodes())
    throw std::invalid_argument("evaluation does not match formula");
  SparseGrad grad;
  int32_t id = f.root();
  int32_t negations = 0;
  for (;;) {
    grad.path.nodes.push_back(id);
    grad.path.prefix_negations.push_back(negations);
    const auto& n = f.node(id);
    if (n.kind == Formula::Kind::Var) {
      grad.var = n.var;
      grad.direction = (negations % 2 == 0) ? +1 : -1;
      return grad;
    }
    if (n.kind == Formula::Kind::Not) {
      negations++;
      id = n.children[0];
    } else {
      id = n.children[eval.winner[id]];
    }
  }
}

CnfSparseGrad backward_cnf_godel(const CnfFormula& cnf, const CnfGodelEval& eval) {
  if (eval.min_clause < 0 || eval.min_clause >= static_cast<int32_t>(cnf.clauses.size()) ||
      eval.max_literal.size() != cnf.clauses.size())
    throw std::invalid_argument("evaluation does not match CNF");
  CnfSparseGrad grad;
  grad.clause = eval.min_clause;
  grad.literal = eval.max_literal[eval.min_clause];
  const Literal& lit = cnf.clauses[grad.clause][grad.literal];
  grad.var = lit.var;
  grad.direction = lit.polarity;
  return grad;
}

bool check_sign_product_law(const Formula& f, std::span<const double> logits,
                            const SparseGrad& grad) {
  const auto interp = implicit_interpretation(f, logits);
  const int root_sign = interp[f.root()];
  for (size_t i = 0; i < grad.path.nodes.size(); i++) {
    const int derivative = (grad.path.prefix_negations[i] % 2 == 0) ? +1 : -1;
    if (root_sign * interp[grad.path.nodes[i]] != derivative) return false;
  }
  return true;
}

bool candidate_path_necessary(const Formula& f, const BoolAssignment& b, const Path& path) {
  if (path.nodes.empty() || path.nodes[0] != f.root())
    throw std::invalid_argument("path does not start at the root");
  if (path.prefix_negations.size() != path.nodes.size())
    throw std::invalid_argument("path negation counts out of sync");
  for (size_t i = 0; i + 1 < path.nodes.size(); i++) {
    const auto& n = f.node(path.nodes[i]);
    bool is_child = false;
    for (int32_t c : n.children)
      if (c == path.nodes[i + 1]) is_child = true;
    if (!is_child) throw std::invalid_argument("path nodes are not parent/child");
  }
  const auto interp = eval_bool_nodes(f, b);
  const int root_sign = interp[f.root()];
  for (size_t i = 1; i < path.nodes.size(); i++) {
    const int expected = (path.prefix_negations[i] % 2 == 0) ? +1 : -1;
    if (root_sign * interp[path.nodes[i]] != expected) return false;
  }
  return true;
}

LogitVector construct_representation(const CnfFormula& cnf, const BoolAssignment& b,
                                     int32_t clause, int32_t literal,
                                     const RepresentationConstants& k) {
  if (!(k.beta < k.alpha && k.alpha < k.gamma && k.gamma < 0.0 && 0.0 < k.delta))
    throw std::invalid_argument("constants must satisfy beta < alpha < gamma < 0 < delta");
  if (clause < 0 || clause >= static_cast<int32_t>(cnf.clauses.size()))
    throw std::out_of_range("clause index out of range");
  const auto& target = cnf.clauses[clause];
  if (literal < 0 || literal >= static_cast<int32_t>(target.size()))
    throw std::out_of_range("literal index out of range");
  if (static_cast<int32_t>(b.size()) < cnf.num_vars)
    throw std::invalid_argument("assignment does not cover all variables");

  auto clause_satisfied = [&](const Clause& c) {
    for (const auto& lit : c)
      if (b[lit.var] == lit.polarity) return true;
    return false;
  };
  if (clause_satisfied(target)) throw std::invalid_argument("clause not unsatisfied");
  if (!is_relevant_clause(cnf, clause)) throw std::invalid_argument("clause not relevant");

  // A literal value v translates to the variable logit polarity * v.
  LogitVector logits(cnf.num_vars, 0.0);
  std::vector<bool> assigned(cnf.num_vars, false);
  auto set_literal = [&](const Literal& lit, double value) {
    logits[lit.var] = lit.polarity > 0 ? value : -value;
    assigned[lit.var] = true;
  };

  // Target literal gets alpha, the rest of its clause beta.
  set_literal(target[literal], k.alpha);
  for (int32_t li = 0; li < static_cast<int32_t>(target.size()); li++)
    if (li != literal) set_literal(target[li], k.beta);

  // Literals of the other unsatisfied clauses get gamma. They are all false
  // under b, so each variable's polarity is consistent across occurrences.
  for (int32_t ci = 0; ci < static_cast<int32_t>(cnf.clauses.size()); ci++) {
    if (ci == clause || clause_satisfied(cnf.clauses[ci])) continue;
    for (const auto& lit : cnf.clauses[ci])
      if (!assigned[lit.var]) set_literal(lit, k.gamma);
  }

  // Remaining variables follow b at magnitude delta.
  for (int32_t v = 0; v < cnf.num_vars; v++)
    if (!assigned[v]) logits[v] = b[v] > 0 ? k.delta : -k.delta;

  return logits;
}

DenseGrad backward_cnf_product(const CnfFormula& cnf, std::span<const double> logits) {
  if (static_cast<int32_t>(logits.size()) < cnf.num_vars)
    throw std::invalid_argument("logit vector does not cover all variables");
  DenseGrad grad(cnf.num_vars, 0.0);
  std::vector<double> one_minus_v;
  for (const auto& clause : cnf.clauses) {
    one_minus_v.clear();
    double prod = 1.0;
    for (const auto& lit : clause) {
      const double v = sigmoid(lit.polarity > 0 ? logits[lit.var] : -logits[lit.var]);
      one_minus_v.push_back(1.0 - v);
      prod *= 1.0 - v;
    }
    double cv = 1.0 - prod;
    if (cv < 1e-300) cv = 1e-300;
    // d log(cv) / d logit = (1/cv) * prod_{other lits}(1-v) * pol * v * (1-v)
    for (size_t li = 0; li < clause.size(); li++) {
      double others = 1.0;
      for (size_t lj = 0; lj < clause.size(); lj++)
        if (lj != li) others *= one_minus_v[lj];
      const double v = 1.0 - one_minus_v[li];
      grad[clause[li].var] += clause[li].polarity * others * v * one_minus_v[li] / cv;
    }
  }
  return grad;
}

DenseGrad backward_cnf_lukasiewicz(const CnfFormula& cnf, std::span<const double> logits) {
  if (static_cast<int32_t>(logits.size()) < cnf.num_vars)
    throw std::invalid_argument("logit vector does not cover all variables");
  DenseGrad grad(cnf.num_vars, 0.0);
  const auto ev = eval_cnf_lukasiewicz(cnf, logits);
  double sum = 0.0;
  for (double cv : ev.clause_values) sum += cv;
  // Formula clamped at 0: flat region, zero subgradient everywhere.
  if (sum - (static_cast<double>(cnf.clauses.size()) - 1.0) <= 0.0) return grad;
  for (size_t ci = 0; ci < cnf.clauses.size(); ci++) {
    if (ev.clause_values[ci] >= 1.0) continue;  // clause clamped at 1
    for (const auto& lit : cnf.clauses[ci]) {
      const double v = sigmoid(lit.polarity > 0 ? logits[lit.var] : -logits[lit.var]);
      grad[lit.var] += lit.polarity * v * (1.0 - v);
    }
  }
  return grad;
}

}  // namespace gtsat
