#include "gtsat/formula.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace gtsat {

int32_t FormulaBuilder::var(int32_t v) {
  if (v < 0) throw std::invalid_argument("variable id must be >= 0");
  max_var_ = std::max(max_var_, v);
  nodes_.push_back({Formula::Kind::Var, v, {}});
  return static_cast<int32_t>(nodes_.size()) - 1;
}

int32_t FormulaBuilder::negation(int32_t child) {
  if (child < 0 || child >= static_cast<int32_t>(nodes_.size()))
    throw std::invalid_argument("negation child out of range");
  nodes_.push_back({Formula::Kind::Not, -1, {child}});
  return static_cast<int32_t>(nodes_.size()) - 1;
}

int32_t FormulaBuilder::nary(Formula::Kind kind, std::vector<int32_t> children) {
  if (children.empty()) throw std::invalid_argument("connective needs at least one child");
  for (int32_t c : children)
    if (c < 0 || c >= static_cast<int32_t>(nodes_.size()))
      throw std::invalid_argument("connective child out of range");
  if (children.size() == 1) return children[0];  // unary connectives collapse
  nodes_.push_back({kind, -1, std::move(children)});
  return static_cast<int32_t>(nodes_.size()) - 1;
}

int32_t FormulaBuilder::conj(std::vector<int32_t> children) {
  return nary(Formula::Kind::And, std::move(children));
}

int32_t FormulaBuilder::disj(std::vector<int32_t> children) {
  return nary(Formula::Kind::Or, std::move(children));
}

Formula FormulaBuilder::build(int32_t root, int32_t num_vars_hint) {
  if (root < 0 || root >= static_cast<int32_t>(nodes_.size()))
    throw std::invalid_argument("build root out of range");
  Formula f;
  f.nodes_ = std::move(nodes_);
  f.root_ = root;
  f.num_vars_ = std::max(max_var_ + 1, num_vars_hint);
  nodes_.clear();
  max_var_ = -1;
  return f;
}

namespace {

// Token reader over DIMACS input keeping track of line numbers.
struct TokenStream {
  std::istream& in;
  int line = 1;

  bool next(std::string& tok) {
    tok.clear();
    int ch;
    while ((ch = in.get()) != EOF) {
      if (ch == '\n') {
        line++;
        if (!tok.empty()) return true;
      } else if (ch == ' ' || ch == '\t' || ch == '\r') {
        if (!tok.empty()) return true;
      } else {
        tok.push_back(static_cast<char>(ch));
      }
    }
    return !tok.empty();
  }

  // Skips the rest of the current line (comments).
  void skip_line() {
    int ch;
    while ((ch = in.get()) != EOF)
      if (ch == '\n') {
        line++;
        break;
      }
  }
};

bool parse_int(const std::string& tok, int64_t& out) {
  if (tok.empty()) return false;
  size_t i = 0;
  bool neg = false;
  if (tok[0] == '-') {
    neg = true;
    i = 1;
    if (tok.size() == 1) return false;
  }
  int64_t v = 0;
  for (; i < tok.size(); i++) {
    if (tok[i] < '0' || tok[i] > '9') return false;
    v = v * 10 + (tok[i] - '0');
    if (v > (int64_t(1) << 40)) return false;
  }
  out = neg ? -v : v;
  return true;
}

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

DimacsResult parse_dimacs(std::istream& in) {
  TokenStream ts{in};
  std::string tok;

  // Header: comments then "p cnf <nvars> <nclauses>".
  int64_t num_vars = -1, num_clauses = -1;
  for (;;) {
    if (!ts.next(tok)) throw ParseError("missing 'p cnf' header", ts.line);
    if (tok == "c" || tok[0] == 'c') {
      ts.skip_line();
      continue;
    }
    if (tok != "p") throw ParseError("malformed header: expected 'p cnf'", ts.line);
    const int header_line = ts.line;
    if (!ts.next(tok) || tok != "cnf")
      throw ParseError("malformed header: expected 'p cnf'", header_line);
    if (!ts.next(tok) || !parse_int(tok, num_vars) || num_vars < 0)
      throw ParseError("malformed header: bad variable count", header_line);
    if (!ts.next(tok) || !parse_int(tok, num_clauses) || num_clauses < 0)
      throw ParseError("malformed header: bad clause count", header_line);
    break;
  }

  DimacsResult result;
  result.cnf.num_vars = static_cast<int32_t>(num_vars);

  std::set<std::string> seen;
  Clause current;
  int clause_start_line = ts.line;
  int64_t clauses_read = 0;

  while (ts.next(tok)) {
    if (tok[0] == 'c') {
      ts.skip_line();
      continue;
    }
    if (tok == "%") break;  // SATLIB end-of-file marker ("%" then a stray 0)
    int64_t lit = 0;
    if (!parse_int(tok, lit)) throw ParseError("unexpected token '" + tok + "'", ts.line);
    if (current.empty()) clause_start_line = ts.line;
    if (lit == 0) {
      clauses_read++;
      if (clauses_read > num_clauses)
        throw ParseError("clause count mismatch: more clauses than header declares", ts.line);
      // Deduplicate literals; detect tautology.
      Clause cleaned;
      bool tautology = false;
      for (const auto& l : current) {
        bool dup = false;
        for (const auto& k : cleaned) {
          if (k.var == l.var) {
            if (k.polarity == l.polarity) dup = true;
            else tautology = true;
          }
        }
        if (!dup) cleaned.push_back(l);
      }
      if (cleaned.empty())
        throw ParseError("empty clause", clause_start_line);
      if (tautology) {
        result.warnings.push_back("line " + std::to_string(clause_start_line) +
                                  ": tautological clause dropped");
      } else {
        auto key = clause_key(cleaned);
        if (!seen.insert(key).second) {
          result.warnings.push_back("line " + std::to_string(clause_start_line) +
                                    ": duplicate clause dropped");
        } else {
          result.cnf.clauses.push_back(std::move(cleaned));
        }
      }
      current.clear();
    } else {
      const int64_t v = lit > 0 ? lit : -lit;
      if (v > num_vars)
        throw ParseError("variable id exceeds header (" + std::to_string(v) + " > " +
                             std::to_string(num_vars) + ")",
                         ts.line);
      current.push_back({static_cast<int32_t>(v - 1), static_cast<int8_t>(lit > 0 ? +1 : -1)});
    }
  }

  if (!current.empty())
    throw ParseError("trailing non-terminated clause (missing 0)", clause_start_line);
  if (clauses_read != num_clauses)
    throw ParseError("clause count mismatch: header declares " + std::to_string(num_clauses) +
                         ", found " + std::to_string(clauses_read),
                     ts.line);
  return result;
}

DimacsResult parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

DimacsResult parse_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return parse_dimacs(in);
}

std::string write_dimacs(const CnfFormula& cnf) {
  std::ostringstream os;
  os << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& clause : cnf.clauses) {
    for (const auto& lit : clause)
      os << (lit.polarity < 0 ? -(lit.var + 1) : (lit.var + 1)) << ' ';
    os << "0\n";
  }
  return os.str();
}

namespace {

struct SexprParser {
  const std::string& text;
  size_t pos = 0;
  int line = 1;
  FormulaBuilder builder;
  std::vector<std::string> names;
  std::unordered_map<std::string, int32_t> name_to_var;

  void skip_ws() {
    while (pos < text.size() &&
           (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r')) {
      if (text[pos] == '\n') line++;
      pos++;
    }
  }

  std::string token() {
    std::string t;
    while (pos < text.size() && text[pos] != '(' && text[pos] != ')' &&
           !std::isspace(static_cast<unsigned char>(text[pos])))
      t.push_back(text[pos++]);
    return t;
  }

  int32_t expr() {
    skip_ws();
    if (pos >= text.size()) throw ParseError("unexpected end of formula", line);
    if (text[pos] == '(') {
      pos++;
      skip_ws();
      std::string op = token();
      if (op != "and" && op != "or" && op != "not")
        throw ParseError("unknown connective '" + op + "'", line);
      std::vector<int32_t> children;
      for (;;) {
        skip_ws();
        if (pos >= text.size()) throw ParseError("missing ')'", line);
        if (text[pos] == ')') {
          pos++;
          break;
        }
        children.push_back(expr());
      }
      if (op == "not") {
        if (children.size() != 1) throw ParseError("'not' takes exactly one argument", line);
        return builder.negation(children[0]);
      }
      if (children.empty()) throw ParseError("'" + op + "' needs arguments", line);
      return op == "and" ? builder.conj(std::move(children)) : builder.disj(std::move(children));
    }
    if (text[pos] == ')') throw ParseError("unexpected ')'", line);
    std::string name = token();
    auto it = name_to_var.find(name);
    int32_t v;
    if (it == name_to_var.end()) {
      v = static_cast<int32_t>(names.size());
      names.push_back(name);
      name_to_var.emplace(name, v);
    } else {
      v = it->second;
    }
    return builder.var(v);
  }
};

}  // namespace

TextFormulaResult parse_formula_text(const std::string& text) {
  SexprParser p{text, 0, 1, {}, {}, {}};
  int32_t root = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) throw ParseError("trailing input after formula", p.line);
  return {p.builder.build(root), std::move(p.names)};
}

Formula cnf_to_formula(const CnfFormula& cnf) {
  if (cnf.clauses.empty()) throw std::invalid_argument("cannot expand an empty CNF");
  FormulaBuilder b;
  // Var and Not(Var) nodes are shared between clauses.
  std::vector<int32_t> pos_node(cnf.num_vars, -1), neg_node(cnf.num_vars, -1);
  auto literal_node = [&](const Literal& lit) {
    auto& cache = lit.polarity > 0 ? pos_node : neg_node;
    if (cache[lit.var] < 0) {
      if (pos_node[lit.var] < 0) pos_node[lit.var] = b.var(lit.var);
      if (lit.polarity < 0) neg_node[lit.var] = b.negation(pos_node[lit.var]);
    }
    return cache[lit.var];
  };
  std::vector<int32_t> clause_nodes;
  clause_nodes.reserve(cnf.clauses.size());
  for (const auto& clause : cnf.clauses) {
    std::vector<int32_t> lits;
    lits.reserve(clause.size());
    for (const auto& lit : clause) lits.push_back(literal_node(lit));
    clause_nodes.push_back(b.disj(std::move(lits)));
  }
  return b.build(b.conj(std::move(clause_nodes)), cnf.num_vars);
}

bool is_relevant_clause(const CnfFormula& cnf, int32_t idx) {
  if (idx < 0 || idx >= static_cast<int32_t>(cnf.clauses.size()))
    throw std::out_of_range("clause index out of range");
  const auto& target = cnf.clauses[idx];
  auto contains = [&](const Literal& lit) {
    for (const auto& l : target)
      if (l == lit) return true;
    return false;
  };
  for (int32_t j = 0; j < static_cast<int32_t>(cnf.clauses.size()); j++) {
    if (j == idx) continue;
    const auto& other = cnf.clauses[j];
    if (other.size() > target.size()) continue;
    bool subset = true;
    for (const auto& lit : other) {
      if (!contains(lit)) {
        subset = false;
        break;
      }
    }
    if (subset) return false;
  }
  return true;
}

}  // namespace gtsat
