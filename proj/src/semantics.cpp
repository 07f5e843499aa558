#include "gtsat/semantics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gtsat {

namespace {

void check_coverage(const Formula& f, size_t provided, const char* what) {
  if (static_cast<int32_t>(provided) < f.num_vars())
    throw std::invalid_argument(std::string(what) + " does not cover all variables");
}

}  // namespace

int eval_bool(const Formula& f, const BoolAssignment& b) {
  return eval_bool_nodes(f, b)[f.root()];
}

std::vector<int8_t> eval_bool_nodes(const Formula& f, const BoolAssignment& b) {
  check_coverage(f, b.size(), "assignment");
  std::vector<int8_t> out(f.num_nodes());
  for (int32_t id = 0; id < f.num_nodes(); id++) {
    const auto& n = f.node(id);
    switch (n.kind) {
      case Formula::Kind::Var:
        out[id] = b[n.var];
        break;
      case Formula::Kind::Not:
        out[id] = static_cast<int8_t>(-out[n.children[0]]);
        break;
      case Formula::Kind::And: {
        int8_t v = +1;
        for (int32_t c : n.children) v = std::min(v, out[c]);
        out[id] = v;
        break;
      }
      case Formula::Kind::Or: {
        int8_t v = -1;
        for (int32_t c : n.children) v = std::max(v, out[c]);
        out[id] = v;
        break;
      }
    }
  }
  return out;
}

int eval_bool(const CnfFormula& cnf, const BoolAssignment& b) {
  if (static_cast<int32_t>(b.size()) < cnf.num_vars)
    throw std::invalid_argument("assignment does not cover all variables");
  for (const auto& clause : cnf.clauses) {
    bool sat = false;
    for (const auto& lit : clause) {
      if (b[lit.var] == lit.polarity) {
        sat = true;
        break;
      }
    }
    if (!sat) return -1;
  }
  return +1;
}

AnnotatedEval eval_godel(const Formula& f, std::span<const double> logits, Rng& rng) {
  check_coverage(f, logits.size(), "logit vector");
  AnnotatedEval ev;
  ev.values.resize(f.num_nodes());
  ev.winner.assign(f.num_nodes(), -1);
  for (int32_t id = 0; id < f.num_nodes(); id++) {
    const auto& n = f.node(id);
    switch (n.kind) {
      case Formula::Kind::Var: {
        const double x = logits[n.var];
        if (!std::isfinite(x)) throw std::invalid_argument("non-finite logit");
        ev.values[id] = x;
        break;
      }
      case Formula::Kind::Not:
        ev.values[id] = -ev.values[n.children[0]];
        break;
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        const bool is_and = n.kind == Formula::Kind::And;
        double best = ev.values[n.children[0]];
        int32_t win = 0;
        uint32_t ties = 1;
        for (int32_t i = 1; i < static_cast<int32_t>(n.children.size()); i++) {
          const double v = ev.values[n.children[i]];
          if (v == best) {
            // Reservoir pick among tied children keeps the choice uniform.
            ties++;
            if (rng.below(ties) == 0) win = i;
          } else if (is_and ? (v < best) : (v > best)) {
            best = v;
            win = i;
            ties = 1;
          }
        }
        ev.values[id] = best;
        ev.winner[id] = win;
        break;
      }
    }
  }
  ev.root_value = ev.values[f.root()];
  return ev;
}

double eval_godel_value(const Formula& f, std::span<const double> logits,
                        std::vector<double>& scratch) {
  scratch.resize(f.num_nodes());
  for (int32_t id = 0; id < f.num_nodes(); id++) {
    const auto& n = f.node(id);
    switch (n.kind) {
      case Formula::Kind::Var:
        scratch[id] = logits[n.var];
        break;
      case Formula::Kind::Not:
        scratch[id] = -scratch[n.children[0]];
        break;
      case Formula::Kind::And: {
        double v = scratch[n.children[0]];
        for (size_t i = 1; i < n.children.size(); i++) v = std::min(v, scratch[n.children[i]]);
        scratch[id] = v;
        break;
      }
      case Formula::Kind::Or: {
        double v = scratch[n.children[0]];
        for (size_t i = 1; i < n.children.size(); i++) v = std::max(v, scratch[n.children[i]]);
        scratch[id] = v;
        break;
      }
    }
  }
  return scratch[f.root()];
}

CnfGodelEval eval_cnf_godel(const CnfFormula& cnf, std::span<const double> logits) {
  if (static_cast<int32_t>(logits.size()) < cnf.num_vars)
    throw std::invalid_argument("logit vector does not cover all variables");
  CnfGodelEval ev;
  ev.max_literal.resize(cnf.clauses.size());
  double root = 0.0;
  for (int32_t ci = 0; ci < static_cast<int32_t>(cnf.clauses.size()); ci++) {
    const auto& clause = cnf.clauses[ci];
    double best = -std::numeric_limits<double>::infinity();
    int32_t arg = 0;
    for (int32_t li = 0; li < static_cast<int32_t>(clause.size()); li++) {
      const auto& lit = clause[li];
      const double x = logits[lit.var];
      if (!std::isfinite(x)) throw std::invalid_argument("non-finite logit");
      const double v = lit.polarity > 0 ? x : -x;
      if (v > best) {
        best = v;
        arg = li;
      }
    }
    ev.max_literal[ci] = arg;
    if (ci == 0 || best < root) {
      root = best;
      ev.min_clause = ci;
    }
  }
  ev.root = root;
  return ev;
}

CnfProductEval eval_cnf_product(const CnfFormula& cnf, std::span<const double> logits) {
  if (static_cast<int32_t>(logits.size()) < cnf.num_vars)
    throw std::invalid_argument("logit vector does not cover all variables");
  CnfProductEval ev;
  ev.clause_values.reserve(cnf.clauses.size());
  double log_sum = 0.0;
  for (const auto& clause : cnf.clauses) {
    double prod = 1.0;  // prod over literals of (1 - v_lit)
    for (const auto& lit : clause) {
      const double v = sigmoid(lit.polarity > 0 ? logits[lit.var] : -logits[lit.var]);
      prod *= 1.0 - v;
    }
    double cv = 1.0 - prod;
    if (cv < 1e-300) cv = 1e-300;
    ev.clause_values.push_back(cv);
    log_sum += std::log(cv);
  }
  ev.log_value = log_sum;
  return ev;
}

CnfLukasiewiczEval eval_cnf_lukasiewicz(const CnfFormula& cnf, std::span<const double> logits) {
  if (static_cast<int32_t>(logits.size()) < cnf.num_vars)
    throw std::invalid_argument("logit vector does not cover all variables");
  CnfLukasiewiczEval ev;
  ev.clause_values.reserve(cnf.clauses.size());
  double sum = 0.0;
  for (const auto& clause : cnf.clauses) {
    double s = 0.0;
    for (const auto& lit : clause)
      s += sigmoid(lit.polarity > 0 ? logits[lit.var] : -logits[lit.var]);
    const double cv = std::min(1.0, s);
    ev.clause_values.push_back(cv);
    sum += cv;
  }
  ev.value = std::max(0.0, sum - (static_cast<double>(cnf.clauses.size()) - 1.0));
  return ev;
}

std::vector<int8_t> implicit_interpretation(const Formula& f, std::span<const double> logits) {
  // Node values do not depend on tie-breaks, only winners do, so a scratch
  // evaluation suffices.
  std::vector<double> values;
  eval_godel_value(f, logits, values);
  std::vector<int8_t> out(f.num_nodes());
  for (int32_t id = 0; id < f.num_nodes(); id++)
    out[id] = static_cast<int8_t>(sign(values[id]));
  return out;
}

}  // namespace gtsat
