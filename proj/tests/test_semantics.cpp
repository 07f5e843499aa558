#include <doctest.h>

#include <cmath>

#include "gtsat/instances.hpp"
#include "gtsat/semantics.hpp"
#include "helpers.hpp"

using namespace gtsat;
using gtsat::testutil::make_or_and_not;
using gtsat::testutil::make_or_and_not_cnf;

TEST_CASE("sign convention") {
  CHECK(sign(-1.5) == -1);
  CHECK(sign(3.1) == +1);
  CHECK(sign(0.0) == -1);
}

TEST_CASE("eval_bool fixtures") {
  const auto fx = make_or_and_not();
  CHECK(eval_bool(fx.formula, {-1, +1, +1}) == -1);

  FormulaBuilder b;
  const int32_t a = b.var(0);
  const Formula contradiction = [&] {
    FormulaBuilder bb;
    const int32_t v = bb.var(0);
    return bb.build(bb.conj({v, bb.negation(v)}));
  }();
  const Formula tautology = b.build(b.disj({a, b.negation(a)}));
  for (int8_t val : {int8_t(-1), int8_t(+1)}) {
    CHECK(eval_bool(contradiction, {val}) == -1);
    CHECK(eval_bool(tautology, {val}) == +1);
  }
}

TEST_CASE("min/max evaluation fixtures") {
  Rng rng(1);
  SUBCASE("worked example") {
    const auto fx = make_or_and_not();
    const auto ev = eval_godel(fx.formula, std::vector<double>{-2.3, 3.1, 1.5}, rng);
    CHECK(ev.root_value == doctest::Approx(-1.5));
    CHECK(ev.values[fx.a_or_b] == doctest::Approx(3.1));
    CHECK(ev.values[fx.not_c] == doctest::Approx(-1.5));
    CHECK(ev.winner[fx.a_or_b] == 1);  // B wins the max
    CHECK(ev.winner[fx.root] == 1);    // not C wins the min
  }
  SUBCASE("identity on a bare variable") {
    FormulaBuilder b;
    const Formula f = b.build(b.var(0));
    CHECK(eval_godel(f, std::vector<double>{0.7}, rng).root_value == doctest::Approx(0.7));
  }
  SUBCASE("idempotence") {
    FormulaBuilder b;
    const int32_t v = b.var(0);
    const Formula f = b.build(b.conj({v, v}));
    CHECK(eval_godel(f, std::vector<double>{0.7}, rng).root_value == doctest::Approx(0.7));
  }
  SUBCASE("non-finite logit rejected") {
    FormulaBuilder b;
    const Formula f = b.build(b.var(0));
    CHECK_THROWS_AS(eval_godel(f, std::vector<double>{NAN}, rng), std::invalid_argument);
  }
}

TEST_CASE("cnf evaluation fixtures") {
  SUBCASE("worked example on the CNF form") {
    const auto ev = eval_cnf_godel(make_or_and_not_cnf(), std::vector<double>{-2.3, 3.1, 1.5});
    CHECK(ev.root == doctest::Approx(-1.5));
    CHECK(ev.min_clause == 1);
    REQUIRE(ev.max_literal == std::vector<int32_t>{1, 0});
  }
  SUBCASE("single unit clause") {
    CnfFormula cnf{1, {{{0, +1}}}};
    const auto ev = eval_cnf_godel(cnf, std::vector<double>{2.0});
    CHECK(ev.root == doctest::Approx(2.0));
    CHECK(ev.min_clause == 0);
    CHECK(ev.max_literal == std::vector<int32_t>{0});
  }
  SUBCASE("contradiction values at minus the magnitude") {
    CnfFormula cnf{1, {{{0, +1}}, {{0, -1}}}};
    const auto ev = eval_cnf_godel(cnf, std::vector<double>{0.5});
    CHECK(ev.root == doctest::Approx(-0.5));
    CHECK(ev.min_clause == 1);
    CHECK(ev.max_literal == std::vector<int32_t>{0, 0});
  }
}

TEST_CASE("cnf evaluation equals the expanded formula") {
  Rng rng(3);
  for (int t = 0; t < 200; t++) {
    const int32_t n = 4 + rng.below(7);
    const CnfFormula cnf = random_ksat(n, 3 + rng.below(15), 3, rng);
    LogitVector logits(n);
    for (auto& x : logits) x = rng.uniform(-4.0, 4.0);
    const auto flat = eval_cnf_godel(cnf, logits);
    const auto tree = eval_godel(cnf_to_formula(cnf), logits, rng);
    CHECK(flat.root == tree.root_value);
  }
}

TEST_CASE("product semantics") {
  SUBCASE("two-literal clause at zero logits") {
    CnfFormula cnf{2, {{{0, +1}, {1, +1}}}};
    const auto ev = eval_cnf_product(cnf, std::vector<double>{0.0, 0.0});
    CHECK(ev.clause_values[0] == doctest::Approx(0.75));
  }
  SUBCASE("unit clause at zero") {
    CnfFormula cnf{1, {{{0, +1}}}};
    const auto ev = eval_cnf_product(cnf, std::vector<double>{0.0});
    CHECK(ev.clause_values[0] == doctest::Approx(0.5));
  }
  SUBCASE("log value is the sum of clause logs") {
    CnfFormula cnf{4, {{{0, +1}, {1, +1}}, {{2, +1}, {3, +1}}}};
    const auto ev = eval_cnf_product(cnf, std::vector<double>{0.0, 0.0, 0.0, 0.0});
    CHECK(ev.log_value == doctest::Approx(2.0 * std::log(0.75)));
  }
}

TEST_CASE("lukasiewicz semantics") {
  SUBCASE("clause clamps at one") {
    CnfFormula cnf{2, {{{0, +1}, {1, +1}}}};
    const auto ev = eval_cnf_lukasiewicz(cnf, std::vector<double>{0.0, 0.0});
    CHECK(ev.clause_values[0] == doctest::Approx(1.0));
  }
  SUBCASE("formula combines clause values") {
    // Clause values 1.0 and 0.4: formula max(0, 1.4 - 1) = 0.4.
    // sigmoid(x) = 0.2 at x = ln(0.25).
    const double x = std::log(0.25);
    CnfFormula cnf{4, {{{0, +1}, {1, +1}}, {{2, +1}, {3, +1}}}};
    const auto ev = eval_cnf_lukasiewicz(cnf, std::vector<double>{0.0, 0.0, x, x});
    CHECK(ev.clause_values[1] == doctest::Approx(0.4));
    CHECK(ev.value == doctest::Approx(0.4));
  }
  SUBCASE("formula clamps at zero") {
    const double x = std::log(0.25);
    CnfFormula cnf{4, {{{0, +1}, {1, +1}}, {{2, +1}, {3, +1}}}};
    const auto ev = eval_cnf_lukasiewicz(cnf, std::vector<double>{x, x, x, x});
    CHECK(ev.clause_values[0] == doctest::Approx(0.4));
    CHECK(ev.value == doctest::Approx(0.0));
  }
}

TEST_CASE("implicit interpretation") {
  SUBCASE("worked example, every node") {
    const auto fx = make_or_and_not();
    const auto interp =
        implicit_interpretation(fx.formula, std::vector<double>{-2.3, 3.1, 1.5});
    CHECK(interp[fx.a] == -1);
    CHECK(interp[fx.b] == +1);
    CHECK(interp[fx.c] == +1);
    CHECK(interp[fx.a_or_b] == +1);
    CHECK(interp[fx.not_c] == -1);
    CHECK(interp[fx.root] == -1);
  }
  SUBCASE("monotone formula with positive logits is all true") {
    Rng rng(5);
    for (int t = 0; t < 20; t++) {
      // Negation-free random CNF expansion.
      CnfFormula cnf = random_ksat(4, 6, 3, rng);
      for (auto& clause : cnf.clauses)
        for (auto& lit : clause) lit.polarity = +1;
      const Formula f = cnf_to_formula(cnf);
      LogitVector logits(4);
      for (auto& x : logits) x = rng.uniform(0.1, 3.0);
      for (int8_t s : implicit_interpretation(f, logits)) CHECK(s == +1);
    }
  }
  SUBCASE("single negative variable") {
    FormulaBuilder b;
    const Formula f = b.build(b.var(0));
    CHECK(implicit_interpretation(f, std::vector<double>{-0.1})[0] == -1);
  }
}

TEST_CASE("sign homomorphism and sigmoid commutation") {
  Rng rng(17);
  std::vector<double> scratch;
  for (int t = 0; t < 300; t++) {
    const Formula f = random_formula(2 + rng.below(11), 8, rng);
    LogitVector logits(f.num_vars());
    for (auto& x : logits) {
      do {
        x = rng.uniform(-4.0, 4.0);
      } while (x == 0.0);
    }
    const double value = eval_godel_value(f, logits, scratch);

    BoolAssignment signs(logits.size());
    for (size_t i = 0; i < logits.size(); i++) signs[i] = logits[i] > 0 ? +1 : -1;
    CHECK(sign(value) == eval_bool(f, signs));

    // Evaluating sigmoided inputs in [0,1] semantics (1-x negation) commutes
    // with the sigmoid of the logit-space value.
    std::vector<double> unit(f.num_nodes());
    for (int32_t id = 0; id < f.num_nodes(); id++) {
      const auto& n = f.node(id);
      switch (n.kind) {
        case Formula::Kind::Var: unit[id] = sigmoid(logits[n.var]); break;
        case Formula::Kind::Not: unit[id] = 1.0 - unit[n.children[0]]; break;
        case Formula::Kind::And: {
          double v = 1.0;
          for (int32_t c : n.children) v = std::min(v, unit[c]);
          unit[id] = v;
          break;
        }
        case Formula::Kind::Or: {
          double v = 0.0;
          for (int32_t c : n.children) v = std::max(v, unit[c]);
          unit[id] = v;
          break;
        }
      }
    }
    CHECK(unit[f.root()] == doctest::Approx(sigmoid(value)).epsilon(1e-12));
  }
}

TEST_CASE("evaluation-level idempotence and distributivity") {
  Rng rng(19);
  for (int t = 0; t < 100; t++) {
    const double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3), c = rng.uniform(-3, 3);
    const std::vector<double> logits{a, b, c};

    FormulaBuilder fb1;
    const Formula f1 = [&] {
      const int32_t x = fb1.var(0), y = fb1.var(1), z = fb1.var(2);
      return fb1.build(fb1.conj({x, fb1.disj({y, z})}));
    }();
    FormulaBuilder fb2;
    const Formula f2 = [&] {
      const int32_t x = fb2.var(0), y = fb2.var(1), z = fb2.var(2);
      const int32_t x2 = fb2.var(0);
      return fb2.build(fb2.disj({fb2.conj({x, y}), fb2.conj({x2, z})}));
    }();
    const auto e1 = eval_godel(f1, logits, rng);
    const auto e2 = eval_godel(f2, logits, rng);
    CHECK(e1.root_value == e2.root_value);

    FormulaBuilder fb3;
    const Formula phi = [&] {
      const int32_t x = fb3.var(0), y = fb3.var(1);
      return fb3.build(fb3.disj({x, fb3.negation(y)}));
    }();
    FormulaBuilder fb4;
    const Formula phi_and_phi = [&] {
      const int32_t x = fb4.var(0), y = fb4.var(1);
      const int32_t p1 = fb4.disj({x, fb4.negation(y)});
      const int32_t x2 = fb4.var(0), y2 = fb4.var(1);
      const int32_t p2 = fb4.disj({x2, fb4.negation(y2)});
      return fb4.build(fb4.conj({p1, p2}));
    }();
    CHECK(eval_godel(phi, logits, rng).root_value ==
          eval_godel(phi_and_phi, logits, rng).root_value);
  }
}

TEST_CASE("tie-break is uniform and reproducible") {
  FormulaBuilder b;
  const Formula f = b.build(b.disj({b.var(0), b.var(1)}));
  const std::vector<double> logits{1.0, 1.0};
  int wins0 = 0;
  Rng rng(23);
  for (int t = 0; t < 2000; t++) {
    const auto ev = eval_godel(f, logits, rng);
    wins0 += ev.winner[f.root()] == 0;
  }
  CHECK(wins0 > 800);
  CHECK(wins0 < 1200);

  Rng r1(99), r2(99);
  for (int t = 0; t < 100; t++)
    CHECK(eval_godel(f, logits, r1).winner[f.root()] ==
          eval_godel(f, logits, r2).winner[f.root()]);
}
