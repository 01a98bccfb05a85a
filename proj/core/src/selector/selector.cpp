#include "selk/selector/selector.hpp"

#include <atomic>
#include <chrono>
#include <set>

#include "selk/arith/arith.hpp"
#include "selk/kernel/check.hpp"
#include "selk/kernel/codec.hpp"
#include "selk/loop/eval.hpp"
#include "selk/prf/prfcheck.hpp"

namespace selk::selector {

namespace {

using kernel::FormulaKind;
using kernel::TermKind;
namespace just = kernel::just;

std::atomic<std::uint64_t> g_guard_trips{0};

Var fresh_var(std::initializer_list<Formula> fs) {
  std::set<Var> used;
  for (const Formula& f : fs) kernel::all_vars(f, used);
  Var v = 0;
  while (used.count(v) != 0) ++v;
  return v;
}

Term one() { return kernel::numeral(Natural(1)); }

const loop::Program& checker_of(const TheorySpec& t) {
  const loop::Program* p = prf::registered_checker(t);
  if (p == nullptr) {
    throw SelectorError(ErrorKind::CheckerNotRegistered, "theory " + t.name + " has no registered proof checker");
  }
  return *p;
}

// Guards, kernel-checks and budget-checks an assembled derivation.
Derivation finish(const TheorySpec& t, ProofBuilder& b, const Formula& target, Audit* audit) {
  Derivation d = b.take();
  if (d.lines.empty() || !(d.lines.back().formula == target)) {
    throw SelectorError(ErrorKind::Internal, "assembled derivation does not end in its target");
  }
  bool universal = false;
  try {
    universal = target == arith::sentence_con(t);
  } catch (const arith::TheoryError&) {
  }
  if (universal) {
    ++g_guard_trips;
    throw SelectorError(ErrorKind::Internal, "refusing to emit a derivation of the universal consistency sentence");
  }
  const kernel::Verdict v = kernel::check(t, d);
  if (!v.valid) {
    const ErrorKind k = v.reason == kernel::Reason::BudgetExceeded ? ErrorKind::BudgetInfeasible : ErrorKind::Internal;
    throw SelectorError(k, std::string("emitted derivation fails the kernel at line ") + std::to_string(v.line) +
                               ": " + kernel::reason_name(v.reason) + " " + v.detail);
  }
  const std::uint64_t fuel =
      prf::global_budget(arith::godel(d).bit_length(), arith::godel(target).bit_length());
  if (v.replay_steps > fuel) {
    throw SelectorError(ErrorKind::BudgetInfeasible, "Compute replays need " + std::to_string(v.replay_steps) +
                                                         " steps, the checker's fuel is " + std::to_string(fuel));
  }
  if (audit != nullptr) audit->lines_emitted = d.lines.size();
  return d;
}

// The single extra axiom of the form sentence_con_bd(T, m): its index, m, e.
bool find_con_bd(const TheorySpec& t, std::uint32_t& index, Natural& m, Term& e) {
  for (std::size_t i = t.extras.size(); i-- > 0;) {
    const Formula& f = t.extras[i];
    if (f.kind() != FormulaKind::All || f.left().kind() != FormulaKind::Imp) continue;
    const Term p = kernel::var(f.var());
    const Formula& guard = f.left().left();
    const Formula& body = f.left().right();
    if (guard.kind() != FormulaKind::Eq || !(guard.rhs() == one())) continue;
    const Term& leq = guard.lhs();
    if (leq.kind() != TermKind::Ap || leq.name() != arith::kLeqName || leq.args().size() != 2) continue;
    if (!(leq.args()[0] == p) || !leq.args()[1].is_numeral()) continue;
    if (body.kind() != FormulaKind::Not || body.left().kind() != FormulaKind::Eq) continue;
    const Formula& proof = body.left();
    if (!(proof.rhs() == one()) || proof.lhs().kind() != TermKind::Ap) continue;
    const Term& prf = proof.lhs();
    if (prf.name() != arith::kCheckerName || prf.args().size() != 3) continue;
    if (!prf.args()[0].is_numeral() || !(prf.args()[1] == p)) continue;
    if (!(prf.args()[2] == kernel::numeral(arith::contradiction_code()))) continue;
    index = static_cast<std::uint32_t>(i);
    m = leq.args()[1].kind() == TermKind::Zero ? Natural(0) : leq.args()[1].value();
    e = prf.args()[0];
    return true;
  }
  return false;
}

}  // namespace

const char* error_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::CheckerNotRegistered: return "checker-not-registered";
    case ErrorKind::BudgetInfeasible: return "budget-infeasible";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::GuardFailed: return "guard-failed";
    case ErrorKind::AxiomAbsent: return "axiom-absent";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

std::uint32_t ProofBuilder::add(const Formula& f, const Justification& j) {
  d_.lines.push_back({f, j});
  return static_cast<std::uint32_t>(d_.lines.size() - 1);
}

std::uint32_t ProofBuilder::mp(std::uint32_t i, std::uint32_t j) {
  const Formula& major = at(j);
  if (major.kind() != FormulaKind::Imp || !(major.left() == at(i))) {
    throw SelectorError(ErrorKind::Internal, "modus ponens premises do not fit");
  }
  return add(major.right(), just::mp(i, j));
}

std::uint32_t ProofBuilder::eq_symmetry(std::uint32_t i) {
  const Formula st = at(i);
  const Term& s = st.lhs();
  const Term& t = st.rhs();
  const Var x = fresh_var({st});
  const Formula phi = kernel::eq(kernel::var(x), s);
  const std::uint32_t ax = add(kernel::imp(st, kernel::imp(kernel::eq(s, s), kernel::eq(t, s))), just::e2(x, phi));
  const std::uint32_t refl = add(kernel::eq(s, s), just::e1());
  return mp(refl, mp(i, ax));
}

std::uint32_t ProofBuilder::eq_transitivity(std::uint32_t i, std::uint32_t j) {
  const Formula ab = at(i);
  const Formula bc = at(j);
  const Var x = fresh_var({ab, bc});
  const Formula phi = kernel::eq(ab.lhs(), kernel::var(x));
  const std::uint32_t ax =
      add(kernel::imp(bc, kernel::imp(ab, kernel::eq(ab.lhs(), bc.rhs()))), just::e2(x, phi));
  return mp(i, mp(j, ax));
}

std::uint32_t ProofBuilder::neq_from_eq(std::uint32_t i, std::uint32_t j) {
  const Formula ab = at(i);
  const Formula nbc = at(j);
  const Term& c = nbc.left().rhs();
  const Var x = fresh_var({ab, nbc});
  const Formula phi = kernel::neg(kernel::eq(kernel::var(x), c));
  const Formula nac = kernel::neg(kernel::eq(ab.lhs(), c));
  const std::uint32_t e3 = add(kernel::imp(ab, kernel::imp(nbc, nac)), just::e3(x, phi));
  return mp(j, mp(i, e3));
}

std::uint32_t ProofBuilder::neq_symmetry(std::uint32_t i) {
  const Formula nst = at(i);
  const Term& s = nst.left().lhs();
  const Term& t = nst.left().rhs();
  const Formula ts = kernel::eq(t, s);
  const Formula tt = kernel::eq(t, t);
  const Var x = fresh_var({nst});
  using kernel::imp;
  // t = s -> (t = t -> s = t), then discharge t = t and contrapose.
  const std::uint32_t e2 = add(imp(ts, imp(tt, nst.left())), just::e2(x, kernel::eq(kernel::var(x), t)));
  const std::uint32_t l2 =
      add(imp(imp(ts, imp(tt, nst.left())), imp(imp(ts, tt), imp(ts, nst.left()))), just::logic(2));
  const std::uint32_t dist = mp(e2, l2);
  const std::uint32_t refl = add(tt, just::e1());
  const std::uint32_t l1 = add(imp(tt, imp(ts, tt)), just::logic(1));
  const std::uint32_t forward = mp(mp(refl, l1), dist);
  const std::uint32_t l5 = add(imp(imp(ts, nst.left()), imp(nst, kernel::neg(ts))), just::logic(5));
  return mp(i, mp(forward, l5));
}

std::uint32_t ProofBuilder::ex_falso(std::uint32_t i, std::uint32_t j, const Formula& goal) {
  const Formula p = at(i);
  const std::uint32_t l4 = add(kernel::imp(kernel::neg(p), kernel::imp(p, goal)), just::logic(4));
  return mp(i, mp(j, l4));
}

std::uint32_t ProofBuilder::and_intro(std::uint32_t i, std::uint32_t j) {
  const Formula a = at(i);
  const Formula b = at(j);
  const std::uint32_t l8 = add(kernel::imp(a, kernel::imp(b, kernel::conj(a, b))), just::logic(8));
  return mp(j, mp(i, l8));
}

std::uint32_t ProofBuilder::and_elim(std::uint32_t i, bool right) {
  const Formula ab = at(i);
  const std::uint32_t l = add(kernel::imp(ab, right ? ab.right() : ab.left()), just::logic(right ? 7 : 6));
  return mp(i, l);
}

std::uint32_t ProofBuilder::exists_intro(std::uint32_t i, Var x, const Formula& body, const Term& t) {
  const std::uint32_t q2 = add(kernel::imp(at(i), kernel::ex(x, body)), just::q2(t));
  return mp(i, q2);
}

std::uint32_t ProofBuilder::forall_elim(std::uint32_t i, const Term& t) {
  const Formula f = at(i);
  bool captured = false;
  const Formula inst = kernel::replace(f.left(), f.var(), t, captured);
  if (captured) throw SelectorError(ErrorKind::InvalidInput, "instantiation would capture a variable");
  const std::uint32_t q1 = add(kernel::imp(f, inst), just::q1(t));
  return mp(i, q1);
}

const std::vector<std::string>& macro_names() {
  static const std::vector<std::string> names{"eq-symmetry", "eq-transitivity", "neq-from-eq", "neq-symmetry", "ex-falso",
                                              "and-intro",   "and-elim",        "exists-intro", "forall-elim"};
  return names;
}

Derivation select_con_instance(const TheorySpec& t, const Natural& n, Audit* audit) {
  const loop::Program& prf = checker_of(t);
  Audit local;
  Audit& a = audit != nullptr ? *audit : local;
  a = Audit{};
  const Natural in[] = {arith::theory_code(t), n, arith::contradiction_code()};
  const loop::RunResult r = loop::run(prf, in);
  a.prf_replays = 1;
  a.replay_steps = r.steps;

  const Formula target = arith::sentence_con_n(t, n);
  const Formula& proof = target.left();
  const Natural zero(0);
  const Natural unit(1);
  if (r.output == zero) {
    // Case 1: the replay itself certifies PRF(e, n, c) = 0. The theory code
    // inside the application dominates proof size, so it is kept to 5 lines.
    a.case_taken = 1;
    a.line_bound = 15;
    ProofBuilder b;
    const std::uint32_t cert = b.add(kernel::eq(proof.lhs(), kernel::zero()), just::compute());
    const std::uint32_t n1 = b.add(kernel::neg(kernel::eq(one(), kernel::zero())), just::numeral_axiom(1));
    b.neq_from_eq(cert, b.neq_symmetry(n1));
    return finish(t, b, target, &a);
  }
  if (r.output != unit) throw SelectorError(ErrorKind::Internal, "proof checker returned a non-boolean");
  // Case 2: n codes a derivation of 0 = 1; append to it.
  a.case_taken = 2;
  Derivation bot;
  try {
    bot = arith::ungodel_derivation(n);
  } catch (const arith::CodeError& e) {
    throw SelectorError(ErrorKind::Internal, std::string("checker accepted an undecodable proof: ") + e.what());
  }
  a.line_bound = bot.lines.size() + 9;
  ProofBuilder b(std::move(bot));
  const auto last = static_cast<std::uint32_t>(b.size() - 1);
  const std::uint32_t flipped = b.eq_symmetry(last);
  const std::uint32_t n1 = b.add(kernel::neg(kernel::eq(one(), kernel::zero())), just::numeral_axiom(1));
  b.ex_falso(flipped, n1, target);
  return finish(t, b, target, &a);
}

Derivation internalize_d1(const TheorySpec& t, const Derivation& d) {
  const loop::Program& prf = checker_of(t);
  const kernel::Verdict v = kernel::check(t, d);
  if (!v.valid) {
    throw SelectorError(ErrorKind::InvalidInput, std::string("input derivation is invalid: ") +
                                                     kernel::reason_name(v.reason) + " " + v.detail);
  }
  const Term qd = arith::quote(d);
  const Term qphi = arith::quote(v.conclusion);
  const Natural in[] = {arith::theory_code(t), qd.value(), qphi.value()};
  if (loop::run(prf, in).output != Natural(1)) {
    throw SelectorError(ErrorKind::BudgetInfeasible, "the proof checker rejects the derivation within its fuel");
  }
  const Formula target = arith::sentence_prov(t, qphi);
  ProofBuilder b;
  const std::uint32_t cert = b.add(arith::sentence_proof(t, qd, qphi), just::compute());
  b.exists_intro(cert, target.var(), target.left(), qd);
  return finish(t, b, target, nullptr);
}

Derivation refute_prov_star(const TheorySpec& t) {
  checker_of(t);
  const Term c = arith::quote(arith::contradiction());
  const Formula star = arith::sentence_prov_star(t, c);
  const Formula refl = kernel::eq(c, c);
  const Formula nrefl = star.right();
  using kernel::imp;
  using kernel::neg;
  ProofBuilder b;
  const std::uint32_t r = b.add(refl, just::e1());
  const std::uint32_t l7 = b.add(imp(star, nrefl), just::logic(7));
  const std::uint32_t l5 = b.add(imp(imp(star, nrefl), imp(neg(nrefl), neg(star))), just::logic(5));
  const std::uint32_t contra = b.mp(l7, l5);
  const std::uint32_t l10 = b.add(imp(refl, neg(nrefl)), just::logic(10));
  b.mp(b.mp(r, l10), contra);
  return finish(t, b, neg(star), nullptr);
}

TheorySpec with_con_bd(const TheorySpec& t, const Natural& m) {
  return arith::extend_theory(t, {arith::sentence_con_bd(t, m)}, t.name + "+ConBd(" + m.to_decimal() + ")");
}

Derivation reduce_bounded(const TheorySpec& t_plus, const Natural& n) {
  checker_of(t_plus);
  std::uint32_t index = 0;
  Natural m;
  Term e;
  if (!find_con_bd(t_plus, index, m, e)) {
    throw SelectorError(ErrorKind::AxiomAbsent, "theory " + t_plus.name + " has no bounded consistency axiom");
  }
  if (m < n) {
    throw SelectorError(ErrorKind::GuardFailed, n.to_decimal() + " exceeds the bound " + m.to_decimal());
  }
  const Term nn = kernel::numeral(n);
  const Term c = kernel::numeral(arith::contradiction_code());
  const Formula target = kernel::neg(kernel::eq(kernel::ap(arith::kCheckerName, {e, nn, c}), one()));
  ProofBuilder b;
  const std::uint32_t ax = b.add(t_plus.extras[index], just::extra(index));
  const std::uint32_t inst = b.forall_elim(ax, nn);
  const std::uint32_t cert =
      b.add(kernel::eq(kernel::ap(arith::kLeqName, {nn, kernel::numeral(m)}), one()), just::compute());
  b.mp(cert, inst);
  return finish(t_plus, b, target, nullptr);
}

std::vector<TheorySpec> build_tower(const TheorySpec& t0, unsigned height) {
  std::vector<TheorySpec> out{t0};
  for (unsigned i = 1; i <= height; ++i) {
    const TheorySpec& prev = out.back();
    out.push_back(arith::extend_theory(prev, {arith::sentence_con(prev)}, t0.name + "^" + std::to_string(i)));
  }
  return out;
}

std::vector<BenchRow> bench_sizes(const TheorySpec& t, std::span<const Natural> ns) {
  std::vector<BenchRow> rows;
  rows.reserve(ns.size());
  for (const Natural& n : ns) {
    Audit a;
    const Derivation d = select_con_instance(t, n, &a);
    kernel::Bytes bytes;
    kernel::encode(d, bytes);
    const auto start = std::chrono::steady_clock::now();
    const kernel::Verdict v = kernel::check(t, d);
    const auto us =
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
    if (!v.valid) throw SelectorError(ErrorKind::Internal, "bench derivation failed the kernel");
    rows.push_back({n, n.bit_length(), a.case_taken, bytes.size(), a.replay_steps, static_cast<std::uint64_t>(us)});
  }
  return rows;
}

std::string bench_csv_row(const BenchRow& r) {
  return r.n.to_decimal() + "," + std::to_string(r.bitlen_n) + "," + std::to_string(r.case_taken) + "," +
         std::to_string(r.proof_bytes) + "," + std::to_string(r.replay_steps) + "," + std::to_string(r.check_micros);
}

std::uint64_t universal_guard_trips() { return g_guard_trips.load(); }

}  // namespace selk::selector
