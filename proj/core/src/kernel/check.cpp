#include "selk/kernel/check.hpp"

#include <vector>

#include "selk/kernel/codec.hpp"
#include "selk/loop/eval.hpp"

namespace selk::kernel {

const char* reason_name(Reason r) {
  switch (r) {
    case Reason::None: return "none";
    case Reason::MalformedEncoding: return "malformed-encoding";
    case Reason::BadSchemaInstance: return "bad-schema-instance";
    case Reason::ForwardReference: return "forward-reference";
    case Reason::BadModusPonens: return "bad-modus-ponens";
    case Reason::BadGeneralization: return "bad-generalization";
    case Reason::ExtraAxiomOutOfRange: return "extra-axiom-out-of-range";
    case Reason::ExtraAxiomMismatch: return "extra-axiom-mismatch";
    case Reason::NonWhitelistedProgram: return "non-whitelisted-program";
    case Reason::ArityMismatch: return "arity-mismatch";
    case Reason::MalformedCertificate: return "malformed-certificate";
    case Reason::BudgetExceeded: return "budget-exceeded";
    case Reason::ClaimedOutputMismatch: return "claimed-output-mismatch";
  }
  return "unknown";
}

namespace {

using K = FormulaKind;

bool is(const Formula& f, K k) { return f.kind() == k; }

bool imp2(const Formula& f, Formula& a, Formula& b) {
  if (!is(f, K::Imp)) return false;
  a = f.left();
  b = f.right();
  return true;
}

bool neg1(const Formula& f, Formula& a) {
  if (!is(f, K::Not)) return false;
  a = f.left();
  return true;
}

bool propositional(const Formula& f, std::uint8_t n) {
  Formula l, r, a, b, c, d, e, g;
  if (!imp2(f, l, r)) return false;
  switch (n) {
    case 1:  // A -> (B -> A)
      return imp2(r, a, b) && b == l;
    case 2: {  // (A -> (B -> C)) -> ((A -> B) -> (A -> C))
      Formula ab, ac;
      if (!imp2(l, a, d) || !imp2(d, b, c)) return false;
      if (!imp2(r, ab, ac)) return false;
      return is(ab, K::Imp) && ab.left() == a && ab.right() == b && is(ac, K::Imp) && ac.left() == a &&
             ac.right() == c;
    }
    case 3:  // (not A -> not B) -> (B -> A)
      return imp2(l, d, e) && neg1(d, a) && neg1(e, b) && imp2(r, d, e) && d == b && e == a;
    case 4:  // not A -> (A -> B)
      return neg1(l, a) && imp2(r, d, b) && d == a;
    case 5:  // (A -> B) -> (not B -> not A)
      return imp2(l, a, b) && imp2(r, d, e) && neg1(d, c) && c == b && neg1(e, g) && g == a;
    case 6:  // A and B -> A
      return is(l, K::And) && r == l.left();
    case 7:  // A and B -> B
      return is(l, K::And) && r == l.right();
    case 8:  // A -> (B -> A and B)
      return imp2(r, b, c) && is(c, K::And) && c.left() == l && c.right() == b;
    case 9:  // not not A -> A
      return neg1(l, a) && neg1(a, b) && b == r;
    case 10:  // A -> not not A
      return neg1(r, a) && neg1(a, b) && b == l;
    default: return false;
  }
}

bool instance_of(const Formula& body, Var x, const Term& t, const Formula& target) {
  bool captured = false;
  const Formula inst = replace(body, x, t, captured);
  return !captured && inst == target;
}

bool quantifier(const Formula& f, const Justification& j) {
  Formula l, r;
  if (!imp2(f, l, r)) return false;
  switch (j.schema) {
    case schema::kQ1:  // all x F -> F[t/x]
      return is(l, K::All) && instance_of(l.left(), l.var(), j.term, r);
    case schema::kQ2:  // F[t/x] -> ex x F
      return is(r, K::Ex) && instance_of(r.left(), r.var(), j.term, l);
    case schema::kQ3: {  // all x (G -> F) -> (G -> all x F)
      if (!is(l, K::All) || !is(l.left(), K::Imp) || !is(r, K::Imp)) return false;
      const Formula& g = l.left().left();
      const Formula& body = l.left().right();
      const Formula& q = r.right();
      return r.left() == g && is(q, K::All) && q.var() == l.var() && q.left() == body && !occurs_free(l.var(), g);
    }
    case schema::kQ4: {  // all x (F -> G) -> (ex x F -> G)
      if (!is(l, K::All) || !is(l.left(), K::Imp) || !is(r, K::Imp)) return false;
      const Formula& body = l.left().left();
      const Formula& g = l.left().right();
      const Formula& q = r.left();
      return r.right() == g && is(q, K::Ex) && q.var() == l.var() && q.left() == body && !occurs_free(l.var(), g);
    }
    default: return false;
  }
}

bool equality(const Formula& f, const Justification& j) {
  if (j.schema == 1) return is(f, K::Eq) && f.lhs() == f.rhs();
  // E2: s = t -> (F[s/x] -> F[t/x]);  E3: s = t -> (F[t/x] -> F[s/x])
  Formula l, r, a, b;
  if (!imp2(f, l, r) || !is(l, K::Eq) || !imp2(r, a, b)) return false;
  const Term& s = j.schema == 2 ? l.lhs() : l.rhs();
  const Term& t = j.schema == 2 ? l.rhs() : l.lhs();
  return instance_of(j.phi, j.var, s, a) && instance_of(j.phi, j.var, t, b);
}

bool bit_of(const Term& t, bool want, Term& rest) {
  bool bit = false;
  return split_bit(t, bit, rest) && bit == want;
}

bool numeral_axiom(const Formula& f, std::uint8_t n) {
  Term s, t;
  switch (n) {
    case 1:  // not (b1 t = 0)
      return is(f, K::Not) && is(f.left(), K::Eq) && bit_of(f.left().lhs(), true, s) &&
             f.left().rhs().kind() == TermKind::Zero;
    case 2:  // b0 0 = 0
      return is(f, K::Eq) && f.lhs().kind() == TermKind::B0 && f.lhs().child().kind() == TermKind::Zero &&
             f.rhs().kind() == TermKind::Zero;
    case 3:    // b0 s = b0 t -> s = t
    case 4: {  // b1 s = b1 t -> s = t
      const bool bit = n == 4;
      return is(f, K::Imp) && is(f.left(), K::Eq) && is(f.right(), K::Eq) && bit_of(f.left().lhs(), bit, s) &&
             bit_of(f.left().rhs(), bit, t) && s == f.right().lhs() && t == f.right().rhs();
    }
    case 5:  // not (b0 s = b1 t)
      return is(f, K::Not) && is(f.left(), K::Eq) && bit_of(f.left().lhs(), false, s) &&
             bit_of(f.left().rhs(), true, t);
    default: return false;
  }
}

struct Failure {
  Reason reason;
  std::string detail;
};

bool check_applications(const TheorySpec& t, const Term& term, Failure& fail) {
  if (term.kind() == TermKind::Ap) {
    const WhitelistEntry* w = t.find(term.name());
    if (w == nullptr) {
      fail = {Reason::NonWhitelistedProgram, "program " + term.name() + " is not whitelisted"};
      return false;
    }
    if (w->program.arity != term.args().size()) {
      fail = {Reason::ArityMismatch, "program " + term.name() + " applied to wrong number of arguments"};
      return false;
    }
  }
  if (term.kind() == TermKind::Ap || term.kind() == TermKind::B0 || term.kind() == TermKind::B1) {
    for (const Term& a : term.args()) {
      if (!check_applications(t, a, fail)) return false;
    }
  }
  return true;
}

bool check_applications(const TheorySpec& t, const Formula& f, Failure& fail) {
  switch (f.kind()) {
    case K::Eq: return check_applications(t, f.lhs(), fail) && check_applications(t, f.rhs(), fail);
    case K::Not:
    case K::All:
    case K::Ex: return check_applications(t, f.left(), fail);
    case K::Imp:
    case K::And: return check_applications(t, f.left(), fail) && check_applications(t, f.right(), fail);
  }
  return true;
}

bool check_compute(const TheorySpec& t, const Formula& f, std::uint64_t& steps, Failure& fail) {
  if (!is(f, K::Eq) || f.lhs().kind() != TermKind::Ap || !f.rhs().is_numeral()) {
    fail = {Reason::MalformedCertificate, "compute line must read ap(P, numerals) = numeral"};
    return false;
  }
  const Term& app = f.lhs();
  std::vector<Natural> inputs;
  std::uint64_t bits = 0;
  for (const Term& a : app.args()) {
    if (!a.is_numeral()) {
      fail = {Reason::MalformedCertificate, "certificate input is not a numeral"};
      return false;
    }
    inputs.push_back(a.value());
    bits += a.value().bit_length();
  }
  // Whitelist membership and arity were established by check_applications.
  const WhitelistEntry& w = *t.find(app.name());
  const std::uint64_t budget = budget_for(w, bits);
  auto result = loop::try_run(w.program, inputs, budget);
  if (!result) {
    fail = {Reason::BudgetExceeded, "replay of " + app.name() + " exceeded " + std::to_string(budget) + " steps"};
    return false;
  }
  steps += result->steps;
  if (result->output != f.rhs().value()) {
    fail = {Reason::ClaimedOutputMismatch, "replay of " + app.name() + " returned " + result->output.to_decimal()};
    return false;
  }
  return true;
}

}  // namespace

bool is_schema_instance(const Formula& f, const Justification& j) {
  switch (j.rule) {
    case Rule::Logic:
      if (j.schema >= 1 && j.schema <= 10) return propositional(f, j.schema);
      return quantifier(f, j);
    case Rule::Equality: return j.schema >= 1 && j.schema <= 3 && equality(f, j);
    case Rule::Numeral: return numeral_axiom(f, j.schema);
    default: return false;
  }
}

Verdict check(const TheorySpec& t, const Derivation& d) {
  Verdict v;
  if (d.lines.empty()) {
    v.reason = Reason::MalformedEncoding;
    v.detail = "empty derivation";
    return v;
  }
  for (std::size_t k = 0; k < d.lines.size(); ++k) {
    const Line& line = d.lines[k];
    const Justification& j = line.just;
    Failure fail{Reason::None, ""};
    bool ok = check_applications(t, line.formula, fail);
    if (ok) {
      switch (j.rule) {
        case Rule::Logic:
        case Rule::Equality:
        case Rule::Numeral:
          ok = is_schema_instance(line.formula, j);
          if (!ok) fail = {Reason::BadSchemaInstance, "formula is not an instance of the cited schema"};
          break;
        case Rule::Extra:
          if (j.i >= t.extras.size()) {
            ok = false;
            fail = {Reason::ExtraAxiomOutOfRange, "extra axiom " + std::to_string(j.i) + " does not exist"};
          } else if (!(t.extras[j.i] == line.formula)) {
            ok = false;
            fail = {Reason::ExtraAxiomMismatch, "formula differs from extra axiom " + std::to_string(j.i)};
          }
          break;
        case Rule::MP:
          if (j.i >= k || j.j >= k) {
            ok = false;
            fail = {Reason::ForwardReference, "premise must precede the line"};
          } else {
            const Formula& major = d.lines[j.j].formula;
            ok = is(major, K::Imp) && major.left() == d.lines[j.i].formula && major.right() == line.formula;
            if (!ok) fail = {Reason::BadModusPonens, "premises do not yield the line"};
          }
          break;
        case Rule::Gen:
          if (j.i >= k) {
            ok = false;
            fail = {Reason::ForwardReference, "premise must precede the line"};
          } else {
            ok = is(line.formula, K::All) && line.formula.left() == d.lines[j.i].formula;
            if (!ok) fail = {Reason::BadGeneralization, "line is not a generalization of the premise"};
          }
          break;
        case Rule::Compute:
          ok = check_compute(t, line.formula, v.replay_steps, fail);
          break;
      }
    }
    if (!ok) {
      v.line = k;
      v.reason = fail.reason;
      v.detail = std::move(fail.detail);
      return v;
    }
  }
  v.valid = true;
  v.conclusion = d.lines.back().formula;
  return v;
}

Verdict check_bytes(const TheorySpec& t, std::span<const std::uint8_t> bytes) {
  Derivation d;
  try {
    d = derivation_from_bytes(bytes);
  } catch (const DecodeError& e) {
    Verdict v;
    v.reason = Reason::MalformedEncoding;
    v.detail = e.what();
    return v;
  }
  return check(t, d);
}

}  // namespace selk::kernel
