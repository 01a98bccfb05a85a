#include "selk/arith/arith.hpp"

#include <set>

#include "selk/kernel/codec.hpp"
#include "selk/loop/codec.hpp"
#include "selk/loop/stdlib.hpp"

namespace selk::arith {

namespace {

using kernel::Bytes;

template <typename Node>
Natural code_of(const Node& x) {
  Bytes b{0x01};
  kernel::encode(x, b);
  return Natural::from_bytes_be(b);
}

Bytes payload(const Natural& g, const char* category) {
  Bytes b = g.to_bytes_be();
  if (b.empty() || b[0] != 0x01) throw CodeError(std::string("not a valid code for category ") + category);
  b.erase(b.begin());
  return b;
}

template <typename Fn>
auto decode_as(const Natural& g, const char* category, Fn fn) {
  const Bytes b = payload(g, category);
  try {
    return fn(b);
  } catch (const kernel::DecodeError& e) {
    throw CodeError(std::string("not a valid code for category ") + category + ": " + e.what());
  }
}

void require(const TheorySpec& t, const char* program) {
  if (t.find(program) == nullptr) {
    throw TheoryError(std::string("program ") + program + " is not registered in theory " + t.name);
  }
}

Term e_of(const TheorySpec& t) {
  require(t, kCheckerName);
  return kernel::numeral(theory_code(t));
}

}  // namespace

Natural godel(const Term& t) { return code_of(t); }
Natural godel(const Formula& f) { return code_of(f); }
Natural godel(const Derivation& d) { return code_of(d); }
Natural godel(const TheorySpec& t) { return code_of(t); }
Natural godel(const loop::Program& p) { return loop::program_code(p); }

Term ungodel_term(const Natural& g) {
  return decode_as(g, "term", [](const Bytes& b) { return kernel::term_from_bytes(b); });
}
Formula ungodel_formula(const Natural& g) {
  return decode_as(g, "formula", [](const Bytes& b) { return kernel::formula_from_bytes(b); });
}
Derivation ungodel_derivation(const Natural& g) {
  return decode_as(g, "derivation", [](const Bytes& b) { return kernel::derivation_from_bytes(b); });
}
TheorySpec ungodel_theory(const Natural& g) {
  return decode_as(g, "theory", [](const Bytes& b) { return kernel::theory_from_bytes(b); });
}
loop::Program ungodel_program(const Natural& g) {
  try {
    return loop::from_code(g);
  } catch (const loop::CodeError& e) {
    throw CodeError(std::string("not a valid code for category program: ") + e.what());
  }
}

Natural theory_code(const TheorySpec& t) { return godel(t); }

Formula contradiction() { return kernel::eq(kernel::zero(), kernel::b1(kernel::zero())); }

Natural contradiction_code() {
  static const Natural c = godel(contradiction());
  return c;
}

const TheorySpec& t0() {
  static const TheorySpec t = [] {
    TheorySpec s;
    s.name = "T0";
    const auto& lib = loop::builtin_library();
    s.whitelist.push_back({lib.program(kCheckerName), 64, 3});
    s.whitelist.push_back({lib.program(kLeqName), 64, 3});
    return s;
  }();
  return t;
}

TheorySpec t_bad() {
  TheorySpec t = extend_theory(t0(), {contradiction()}, "T_bad");
  return t;
}

TheorySpec extend_theory(const TheorySpec& t, const std::vector<Formula>& axioms, std::string name) {
  TheorySpec out = t;
  out.name = name.empty() ? t.name + "+" : std::move(name);
  for (const Formula& f : axioms) {
    if (!kernel::is_closed(f)) throw TheoryError("extra axioms must be closed formulas");
    out.extras.push_back(f);
  }
  return out;
}

Formula sentence_proof(const TheorySpec& t, const Term& p, const Term& x) {
  return kernel::eq(kernel::ap(kCheckerName, {e_of(t), p, x}), kernel::numeral(Natural(1)));
}

Formula sentence_prov(const TheorySpec& t, const Term& x) {
  const std::set<kernel::Var> used = kernel::free_vars(x);
  kernel::Var q = kProvVar;
  if (used.count(q) != 0) {
    q = 0;
    while (used.count(q) != 0) ++q;
  }
  return kernel::ex(q, sentence_proof(t, kernel::var(q), x));
}

Formula sentence_con_n(const TheorySpec& t, const Natural& n) {
  return kernel::neg(sentence_proof(t, kernel::numeral(n), kernel::numeral(contradiction_code())));
}

Formula sentence_con(const TheorySpec& t) {
  return kernel::all(kProofVar,
                     kernel::neg(sentence_proof(t, kernel::var(kProofVar), kernel::numeral(contradiction_code()))));
}

Formula sentence_con_bd(const TheorySpec& t, const Natural& m) {
  require(t, kLeqName);
  const Term p = kernel::var(kProofVar);
  const Formula guard = kernel::eq(kernel::ap(kLeqName, {p, kernel::numeral(m)}), kernel::numeral(Natural(1)));
  return kernel::all(kProofVar,
                     kernel::imp(guard, kernel::neg(sentence_proof(t, p, kernel::numeral(contradiction_code())))));
}

Formula sentence_prov_star(const TheorySpec& t, const Term& x) {
  return kernel::conj(sentence_prov(t, x), kernel::neg(kernel::eq(x, kernel::numeral(contradiction_code()))));
}

kernel::TextContext text_context(const TheorySpec& t) {
  kernel::TextContext ctx;
  ctx.constants.emplace("e", kernel::numeral(theory_code(t)));
  ctx.constants.emplace("c", kernel::numeral(contradiction_code()));
  ctx.theory = &t;
  return ctx;
}

}  // namespace selk::arith
