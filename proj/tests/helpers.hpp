#pragma once

#include "gtsat/formula.hpp"

namespace gtsat::testutil {

// (A or B) and (not C), with node ids exposed for per-node assertions.
struct OrAndNot {
  Formula formula;
  int32_t a, b, c, a_or_b, not_c, root;
};

inline OrAndNot make_or_and_not() {
  FormulaBuilder builder;
  OrAndNot out{{}, 0, 0, 0, 0, 0, 0};
  out.a = builder.var(0);
  out.b = builder.var(1);
  out.a_or_b = builder.disj({out.a, out.b});
  out.c = builder.var(2);
  out.not_c = builder.negation(out.c);
  out.root = builder.conj({out.a_or_b, out.not_c});
  out.formula = builder.build(out.root);
  return out;
}

// The same formula as a CNF: (A or B) and (not C).
inline CnfFormula make_or_and_not_cnf() {
  return CnfFormula{3, {{{0, +1}, {1, +1}}, {{2, -1}}}};
}

}  // namespace gtsat::testutil
