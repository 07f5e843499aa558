#include <doctest.h>

#include "gtsat/formula.hpp"
#include "gtsat/instances.hpp"
#include "gtsat/oracle.hpp"
#include "gtsat/semantics.hpp"

using namespace gtsat;

TEST_CASE("dimacs basic parse") {
  const auto r = parse_dimacs("p cnf 3 2\n1 -2 0\n2 3 0");
  CHECK(r.cnf.num_vars == 3);
  REQUIRE(r.cnf.clauses.size() == 2);
  CHECK(r.cnf.clauses[0] == Clause{{0, +1}, {1, -1}});
  CHECK(r.cnf.clauses[1] == Clause{{1, +1}, {2, +1}});
  CHECK(r.warnings.empty());
}

TEST_CASE("dimacs comments and single literal") {
  const auto r = parse_dimacs("c comment\np cnf 1 1\n1 0");
  CHECK(r.cnf.num_vars == 1);
  REQUIRE(r.cnf.clauses.size() == 1);
  CHECK(r.cnf.clauses[0] == Clause{{0, +1}});
}

TEST_CASE("dimacs satlib trailer") {
  const auto r = parse_dimacs("p cnf 2 1\n1 2 0\n%\n0\n");
  CHECK(r.cnf.clauses.size() == 1);
}

TEST_CASE("dimacs error diagnostics") {
  SUBCASE("variable id exceeds header") {
    try {
      parse_dimacs("p cnf 2 1\n3 0");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("exceeds header") != std::string::npos);
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("malformed header") {
    CHECK_THROWS_WITH_AS(parse_dimacs("p dnf 2 1\n1 0"), doctest::Contains("malformed header"),
                         ParseError);
  }
  SUBCASE("clause count mismatch, too few") {
    CHECK_THROWS_WITH_AS(parse_dimacs("p cnf 2 2\n1 0"), doctest::Contains("clause count mismatch"),
                         ParseError);
  }
  SUBCASE("clause count mismatch, too many") {
    CHECK_THROWS_WITH_AS(parse_dimacs("p cnf 2 1\n1 0\n2 0"),
                         doctest::Contains("clause count mismatch"), ParseError);
  }
  SUBCASE("trailing non-terminated clause") {
    CHECK_THROWS_WITH_AS(parse_dimacs("p cnf 2 1\n1 2"),
                         doctest::Contains("non-terminated clause"), ParseError);
  }
}

TEST_CASE("dimacs clause cleanup") {
  SUBCASE("duplicate literal inside a clause") {
    const auto r = parse_dimacs("p cnf 2 1\n1 1 2 0");
    CHECK(r.cnf.clauses[0] == Clause{{0, +1}, {1, +1}});
  }
  SUBCASE("tautological clause dropped with warning") {
    const auto r = parse_dimacs("p cnf 2 2\n1 -1 0\n2 0");
    CHECK(r.cnf.clauses.size() == 1);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("tautological") != std::string::npos);
  }
  SUBCASE("duplicate clause dropped, first kept") {
    const auto r = parse_dimacs("p cnf 2 3\n1 2 0\n2 1 0\n-1 0");
    CHECK(r.cnf.clauses.size() == 2);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("duplicate") != std::string::npos);
  }
}

TEST_CASE("dimacs round trip") {
  Rng rng(7);
  for (int t = 0; t < 30; t++) {
    const CnfFormula cnf = random_ksat(5 + rng.below(8), 6 + rng.below(20), 3, rng);
    const auto back = parse_dimacs(write_dimacs(cnf));
    REQUIRE(back.cnf.num_vars == cnf.num_vars);
    REQUIRE(back.cnf.clauses.size() == cnf.clauses.size());
    for (size_t i = 0; i < cnf.clauses.size(); i++) CHECK(back.cnf.clauses[i] == cnf.clauses[i]);
  }
}

TEST_CASE("cnf_to_formula structure") {
  SUBCASE("or clause and negated unit") {
    CnfFormula cnf{3, {{{0, +1}, {1, +1}}, {{2, -1}}}};
    const Formula f = cnf_to_formula(cnf);
    const auto& root = f.node(f.root());
    REQUIRE(root.kind == Formula::Kind::And);
    REQUIRE(root.children.size() == 2);
    CHECK(f.node(root.children[0]).kind == Formula::Kind::Or);
    CHECK(f.node(root.children[1]).kind == Formula::Kind::Not);
  }
  SUBCASE("single positive unit collapses to the variable") {
    CnfFormula cnf{1, {{{0, +1}}}};
    const Formula f = cnf_to_formula(cnf);
    CHECK(f.node(f.root()).kind == Formula::Kind::Var);
    CHECK(f.node(f.root()).var == 0);
  }
  SUBCASE("two binary clauses") {
    CnfFormula cnf{3, {{{0, +1}, {1, -1}}, {{1, +1}, {2, +1}}}};
    const Formula f = cnf_to_formula(cnf);
    REQUIRE(f.node(f.root()).kind == Formula::Kind::And);
    CHECK(f.num_vars() == 3);
  }
}

TEST_CASE("cnf_to_formula preserves models") {
  Rng rng(11);
  for (int t = 0; t < 40; t++) {
    const int32_t n = 4 + rng.below(5);
    const CnfFormula cnf = random_ksat(n, 3 + rng.below(12), 3, rng);
    const Formula f = cnf_to_formula(cnf);
    for (uint64_t mask = 0; mask < (uint64_t(1) << n); mask++) {
      BoolAssignment b(n);
      for (int32_t i = 0; i < n; i++) b[i] = (mask >> i) & 1 ? +1 : -1;
      CHECK(eval_bool(cnf, b) == eval_bool(f, b));
    }
  }
}

TEST_CASE("is_relevant_clause") {
  // (A or B or C) and (A or B): the wider clause is subsumed.
  CnfFormula cnf{3, {{{0, +1}, {1, +1}, {2, +1}}, {{0, +1}, {1, +1}}}};
  CHECK_FALSE(is_relevant_clause(cnf, 0));
  CHECK(is_relevant_clause(cnf, 1));

  CnfFormula single{1, {{{0, +1}}}};
  CHECK(is_relevant_clause(single, 0));

  CHECK_THROWS_AS(is_relevant_clause(single, 1), std::out_of_range);
}

TEST_CASE("is_relevant_clause agrees with the double-loop subset test") {
  Rng rng(13);
  for (int t = 0; t < 50; t++) {
    const int32_t n = 3 + rng.below(4);
    CnfFormula cnf;
    cnf.num_vars = n;
    const int32_t m = 2 + rng.below(6);
    for (int32_t ci = 0; ci < m; ci++) {
      Clause clause;
      const int32_t size = 1 + rng.below(3);
      while (static_cast<int32_t>(clause.size()) < size) {
        Literal lit{static_cast<int32_t>(rng.below(n)),
                    static_cast<int8_t>(rng.next_bool() ? +1 : -1)};
        bool clash = false;
        for (const auto& l : clause) clash |= l.var == lit.var;
        if (!clash) clause.push_back(lit);
      }
      cnf.clauses.push_back(clause);
    }
    for (int32_t ci = 0; ci < m; ci++) {
      bool subsumed = false;
      for (int32_t cj = 0; cj < m && !subsumed; cj++) {
        if (ci == cj) continue;
        bool subset = true;
        for (const auto& lx : cnf.clauses[cj]) {
          bool found = false;
          for (const auto& ly : cnf.clauses[ci]) found |= lx == ly;
          subset &= found;
        }
        subsumed = subset;
      }
      CHECK(is_relevant_clause(cnf, ci) == !subsumed);
    }
  }
}

TEST_CASE("prefix formula text") {
  const auto r = parse_formula_text("(and (or A B) (not C))");
  REQUIRE(r.var_names == std::vector<std::string>{"A", "B", "C"});
  const auto& root = r.formula.node(r.formula.root());
  REQUIRE(root.kind == Formula::Kind::And);
  CHECK(r.formula.node(root.children[0]).kind == Formula::Kind::Or);
  CHECK(r.formula.node(root.children[1]).kind == Formula::Kind::Not);

  CHECK_THROWS_AS(parse_formula_text("(xor A B)"), ParseError);
  CHECK_THROWS_AS(parse_formula_text("(not A B)"), ParseError);
  CHECK_THROWS_AS(parse_formula_text("(and A"), ParseError);
  CHECK_THROWS_AS(parse_formula_text("(and A B) junk"), ParseError);
}

TEST_CASE("builder collapses unary connectives") {
  FormulaBuilder b;
  const int32_t v = b.var(0);
  CHECK(b.conj({v}) == v);
  CHECK(b.disj({v}) == v);
  CHECK_THROWS_AS(b.conj({}), std::invalid_argument);
}
