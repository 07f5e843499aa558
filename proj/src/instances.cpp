#include "gtsat/instances.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>

#include "gtsat/oracle.hpp"

namespace gtsat {

namespace {

std::string clause_key(Clause clause) {
  std::sort(clause.begin(), clause.end(), [](const Literal& x, const Literal& y) {
    return x.var != y.var ? x.var < y.var : x.polarity < y.polarity;
  });
  std::string key;
  for (const auto& lit : clause) {
    key += std::to_string(lit.polarity < 0 ? -(lit.var + 1) : (lit.var + 1));
    key += ' ';
  }
  return key;
}

}  // namespace

CnfFormula random_ksat(int32_t num_vars, int32_t num_clauses, int32_t k, Rng& rng) {
  if (k < 1 || k > num_vars) throw std::invalid_argument("need 1 <= k <= num_vars");
  // Duplicate clauses are resampled, so the request must stay under the
  // number of distinct clauses.
  double capacity = 1.0;
  for (int32_t i = 0; i < k; i++) capacity *= 2.0 * (num_vars - i) / (i + 1);
  if (static_cast<double>(num_clauses) > capacity)
    throw std::invalid_argument("more clauses requested than distinct clauses exist");
  CnfFormula cnf;
  cnf.num_vars = num_vars;
  std::set<std::string> seen;
  while (static_cast<int32_t>(cnf.clauses.size()) < num_clauses) {
    Clause clause;
    while (static_cast<int32_t>(clause.size()) < k) {
      const int32_t v = static_cast<int32_t>(rng.below(static_cast<uint32_t>(num_vars)));
      bool dup = false;
      for (const auto& lit : clause) dup |= lit.var == v;
      if (!dup) clause.push_back({v, static_cast<int8_t>(rng.next_bool() ? +1 : -1)});
    }
    if (seen.insert(clause_key(clause)).second) cnf.clauses.push_back(std::move(clause));
  }
  return cnf;
}

CnfFormula random_ksat_satisfiable(int32_t num_vars, int32_t num_clauses, int32_t k, Rng& rng) {
  for (;;) {
    CnfFormula cnf = random_ksat(num_vars, num_clauses, k, rng);
    if (brute_force_sat(cnf)) return cnf;
  }
}

CnfFormula random_coloring_cnf(int32_t vertices, int32_t edges, Rng& rng) {
  if (vertices < 3) throw std::invalid_argument("need at least 3 vertices");
  // Hidden balanced 3-partition.
  std::vector<int32_t> color(vertices);
  for (int32_t v = 0; v < vertices; v++) color[v] = v % 3;
  for (int32_t v = vertices - 1; v > 0; v--)
    std::swap(color[v], color[rng.below(static_cast<uint32_t>(v + 1))]);

  std::set<std::pair<int32_t, int32_t>> chosen;
  while (static_cast<int32_t>(chosen.size()) < edges) {
    int32_t u = static_cast<int32_t>(rng.below(static_cast<uint32_t>(vertices)));
    int32_t v = static_cast<int32_t>(rng.below(static_cast<uint32_t>(vertices)));
    if (u == v || color[u] == color[v]) continue;
    chosen.insert({std::min(u, v), std::max(u, v)});
  }

  CnfFormula cnf;
  cnf.num_vars = 3 * vertices;
  auto var = [](int32_t vertex, int32_t c) { return 3 * vertex + c; };
  for (int32_t v = 0; v < vertices; v++) {
    cnf.clauses.push_back({{var(v, 0), +1}, {var(v, 1), +1}, {var(v, 2), +1}});
    for (int32_t c1 = 0; c1 < 3; c1++)
      for (int32_t c2 = c1 + 1; c2 < 3; c2++)
        cnf.clauses.push_back({{var(v, c1), -1}, {var(v, c2), -1}});
  }
  for (const auto& [u, v] : chosen)
    for (int32_t c = 0; c < 3; c++)
      cnf.clauses.push_back({{var(u, c), -1}, {var(v, c), -1}});
  return cnf;
}

namespace {

struct Shape {
  Formula::Kind kind;
  std::vector<Shape> kids;
};

void gen_shape(Shape& out, int32_t budget, Rng& rng, int32_t& leaves) {
  const uint32_t roll = budget <= 0 ? 0 : rng.below(10);
  if (roll < 2) {  // leaf
    out.kind = Formula::Kind::Var;
    leaves++;
    return;
  }
  if (roll < 4) {
    out.kind = Formula::Kind::Not;
    out.kids.resize(1);
    gen_shape(out.kids[0], budget - 1, rng, leaves);
    return;
  }
  out.kind = roll < 7 ? Formula::Kind::And : Formula::Kind::Or;
  out.kids.resize(2 + rng.below(2));
  for (auto& k : out.kids) gen_shape(k, budget - 1, rng, leaves);
}

int32_t emit(const Shape& s, FormulaBuilder& b, const std::vector<int32_t>& leaf_vars,
             int32_t& next_leaf) {
  switch (s.kind) {
    case Formula::Kind::Var:
      return b.var(leaf_vars[next_leaf++]);
    case Formula::Kind::Not:
      return b.negation(emit(s.kids[0], b, leaf_vars, next_leaf));
    default: {
      std::vector<int32_t> children;
      children.reserve(s.kids.size());
      for (const auto& k : s.kids) children.push_back(emit(k, b, leaf_vars, next_leaf));
      return s.kind == Formula::Kind::And ? b.conj(std::move(children))
                                          : b.disj(std::move(children));
    }
  }
}

}  // namespace

Formula random_formula(int32_t num_vars, int32_t max_depth, Rng& rng) {
  if (num_vars < 1) throw std::invalid_argument("need at least one variable");
  Shape shape;
  int32_t leaves = 0;
  gen_shape(shape, max_depth, rng, leaves);
  // Assign variables so that ids are dense: each of the k vars appears at
  // least once, surplus leaves draw uniformly.
  const int32_t k = std::min(num_vars, leaves);
  std::vector<int32_t> leaf_vars(leaves);
  for (int32_t i = 0; i < leaves; i++)
    leaf_vars[i] = i < k ? i : static_cast<int32_t>(rng.below(static_cast<uint32_t>(k)));
  for (int32_t i = leaves - 1; i > 0; i--)
    std::swap(leaf_vars[i], leaf_vars[rng.below(static_cast<uint32_t>(i + 1))]);
  FormulaBuilder b;
  int32_t next_leaf = 0;
  return b.build(emit(shape, b, leaf_vars, next_leaf));
}

}  // namespace gtsat
