#pragma once

// Random derivations whose lines are mostly valid, for differential tests of
// the arithmetized checker against the kernel.

#include <random>
#include <vector>

#include "gen_syntax.hpp"
#include "selk/kernel/derivation.hpp"

namespace gen {

using namespace selk::kernel;

inline Term small_numeral_term(std::mt19937_64& rng) {
  switch (rng() % 4) {
    case 0: return zero();
    case 1: return numeral(selk::Natural(1 + rng() % 300));
    case 2: return b0(rng() % 2 ? zero() : var(static_cast<Var>(rng() % 3)));
    default: return b1(var(static_cast<Var>(rng() % 3)));
  }
}

/// One axiom line: a random instance of a propositional, quantifier,
/// equality or numeral schema. Quantifier and equality instances may capture,
/// which makes them invalid.
inline Line axiom_line(std::mt19937_64& rng) {
  const Formula a = formula(rng, 2, 3);
  const Formula b = formula(rng, 2, 3);
  const Formula c = formula(rng, 1, 3);
  const auto x = static_cast<Var>(rng() % 3);
  const Term t = rng() % 2 ? small_numeral_term(rng) : term(rng, 2, 3);
  bool cap = false;
  switch (rng() % 22) {
    case 0: return {imp(a, imp(b, a)), just::logic(1)};
    case 1: return {imp(imp(a, imp(b, c)), imp(imp(a, b), imp(a, c))), just::logic(2)};
    case 2: return {imp(imp(neg(a), neg(b)), imp(b, a)), just::logic(3)};
    case 3: return {imp(neg(a), imp(a, b)), just::logic(4)};
    case 4: return {imp(imp(a, b), imp(neg(b), neg(a))), just::logic(5)};
    case 5: return {imp(conj(a, b), a), just::logic(6)};
    case 6: return {imp(conj(a, b), b), just::logic(7)};
    case 7: return {imp(a, imp(b, conj(a, b))), just::logic(8)};
    case 8: return {imp(neg(neg(a)), a), just::logic(9)};
    case 9: return {imp(a, neg(neg(a))), just::logic(10)};
    case 10: return {imp(all(x, a), replace(a, x, t, cap)), just::q1(t)};
    case 11: return {imp(replace(a, x, t, cap), ex(x, a)), just::q2(t)};
    case 12: return {imp(all(x, imp(a, b)), imp(a, all(x, b))), just::logic(0x13)};
    case 13: return {imp(all(x, imp(a, b)), imp(ex(x, a), b)), just::logic(0x14)};
    case 14: return {eq(t, t), just::e1()};
    case 15:
    case 16: {
      const Term s = rng() % 2 ? small_numeral_term(rng) : term(rng, 1, 3);
      const bool e2 = rng() % 2 == 0;
      const Formula fs = replace(a, x, s, cap);
      const Formula ft = replace(a, x, t, cap);
      return e2 ? Line{imp(eq(s, t), imp(fs, ft)), just::e2(x, a)} : Line{imp(eq(s, t), imp(ft, fs)), just::e3(x, a)};
    }
    case 17: return {neg(eq(b1(rng() % 2 ? t : small_numeral_term(rng)), zero())), just::numeral_axiom(1)};
    case 18: return {eq(b0(zero()), zero()), just::numeral_axiom(2)};
    case 19:
    case 20: {
      const bool one = rng() % 2 == 0;
      const Term s = small_numeral_term(rng);
      const Term u = rng() % 2 ? small_numeral_term(rng) : t;
      const Term ls = one ? b1(s) : b0(s);
      const Term lu = one ? b1(u) : b0(u);
      return {imp(eq(ls, lu), eq(s, u)), just::numeral_axiom(one ? 4 : 3)};
    }
    default: return {neg(eq(b0(small_numeral_term(rng)), b1(t))), just::numeral_axiom(5)};
  }
}

/// A derivation built from axiom lines, extra axioms of `t`, modus ponens and
/// generalization. Almost every line is valid unless an axiom captured.
inline Derivation valid_ish(std::mt19937_64& rng, const TheorySpec& t, std::size_t target) {
  Derivation d;
  while (d.lines.size() < target) {
    const std::size_t k = d.lines.size();
    const unsigned pick = static_cast<unsigned>(rng() % 10);
    if (pick < 4 || k == 0) {
      d.lines.push_back(axiom_line(rng));
    } else if (pick < 5 && !t.extras.empty()) {
      const auto i = static_cast<std::uint32_t>(rng() % t.extras.size());
      d.lines.push_back({t.extras[i], just::extra(i)});
    } else if (pick < 8) {
      // a, a -> (b -> a)  |-  b -> a
      const auto i = static_cast<std::uint32_t>(rng() % k);
      const Formula a = d.lines[i].formula;
      const Formula b = formula(rng, 1, 3);
      d.lines.push_back({imp(a, imp(b, a)), just::logic(1)});
      d.lines.push_back({imp(b, a), just::mp(i, static_cast<std::uint32_t>(k))});
    } else {
      const auto i = static_cast<std::uint32_t>(rng() % k);
      d.lines.push_back({all(static_cast<Var>(rng() % 4), d.lines[i].formula), just::gen(i)});
    }
  }
  return d;
}

/// Small structural damage: a wrong index, schema, formula or variable.
inline void damage(std::mt19937_64& rng, Derivation& d) {
  Line& l = d.lines[rng() % d.lines.size()];
  switch (rng() % 6) {
    case 0: l.formula = formula(rng, 2, 3); break;
    case 1: l.just.i = static_cast<std::uint32_t>(rng() % (d.lines.size() + 1)); break;
    case 2: l.just.j = static_cast<std::uint32_t>(rng() % (d.lines.size() + 1)); break;
    case 3: l.just.schema = static_cast<std::uint8_t>(1 + rng() % 10); break;
    case 4: l.just.var = static_cast<Var>(rng() % 4); break;
    default: {
      const Formula f = l.formula;
      l.formula = rng() % 2 ? neg(f) : all(static_cast<Var>(rng() % 3), f);
      break;
    }
  }
}

}  // namespace gen
