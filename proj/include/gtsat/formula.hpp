#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace gtsat {

// A parse failure with the 1-based input line it was detected on.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line)
      : std::runtime_error(std::move(message)), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Immutable propositional formula over 0-based variable ids. Nodes live in a
// flat arena in topological order (children strictly before parents), so
// evaluation is a single forward sweep and per-node annotations are plain
// vectors indexed by node id.
class Formula {
 public:
  enum class Kind : uint8_t { Var, Not, And, Or };

  struct Node {
    Kind kind;
    int32_t var = -1;                 // Kind::Var only
    std::vector<int32_t> children;    // Not: 1 child; And/Or: >= 2
  };

  int32_t root() const { return root_; }
  int32_t num_nodes() const { return static_cast<int32_t>(nodes_.size()); }
  int32_t num_vars() const { return num_vars_; }
  const Node& node(int32_t id) const { return nodes_[id]; }

 private:
  friend class FormulaBuilder;
  std::vector<Node> nodes_;
  int32_t root_ = -1;
  int32_t num_vars_ = 0;
};

// Assembles a Formula arena bottom-up. And/Or with a single child collapse to
// the child; zero children are rejected.
class FormulaBuilder {
 public:
  int32_t var(int32_t v);
  int32_t negation(int32_t child);
  int32_t conj(std::vector<int32_t> children);
  int32_t disj(std::vector<int32_t> children);

  // `num_vars_hint` widens the variable count beyond the ids actually used
  // (a CNF may declare variables that occur in no clause).
  Formula build(int32_t root, int32_t num_vars_hint = 0);

 private:
  int32_t nary(Formula::Kind kind, std::vector<int32_t> children);
  std::vector<Formula::Node> nodes_;
  int32_t max_var_ = -1;
};

struct Literal {
  int32_t var = 0;
  int8_t polarity = +1;  // +1 or -1

  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

struct CnfFormula {
  int32_t num_vars = 0;
  std::vector<Clause> clauses;

  int64_t num_literals() const {
    int64_t n = 0;
    for (const auto& c : clauses) n += static_cast<int64_t>(c.size());
    return n;
  }
};

struct DimacsResult {
  CnfFormula cnf;
  // One entry per dropped clause (tautology or duplicate), with line numbers.
  std::vector<std::string> warnings;
};

// DIMACS CNF reader. Duplicate literals inside a clause are removed;
// tautological clauses (p and ~p) and textually repeated clauses are dropped
// with a warning. 1-based DIMACS ids shift to 0-based.
DimacsResult parse_dimacs(std::istream& in);
DimacsResult parse_dimacs(const std::string& text);
DimacsResult parse_dimacs_file(const std::string& path);

std::string write_dimacs(const CnfFormula& cnf);

// Prefix s-expression reader for general formulas, e.g.
//   (and (or A B) (not C))
// Variable ids are assigned by first appearance; names are returned alongside.
struct TextFormulaResult {
  Formula formula;
  std::vector<std::string> var_names;
};
TextFormulaResult parse_formula_text(const std::string& text);

// And over Or-of-literals; single-literal clauses become the literal itself.
Formula cnf_to_formula(const CnfFormula& cnf);

// A clause is relevant when no other clause's literal set is a subset of its
// own (a superset clause is implied by the smaller one and can never carry
// the active path).
bool is_relevant_clause(const CnfFormula& cnf, int32_t idx);

}  // namespace gtsat
