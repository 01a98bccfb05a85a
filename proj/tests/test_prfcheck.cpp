#include <gtest/gtest.h>

#include <random>

#include "gen_deriv.hpp"
#include "selk/arith/arith.hpp"
#include "selk/kernel/codec.hpp"
#include "selk/kernel/text.hpp"
#include "selk/loop/codec.hpp"
#include "selk/loop/eval.hpp"
#include "selk/loop/stdlib.hpp"
#include "selk/loop/text.hpp"
#include "selk/prf/prfcheck.hpp"

using namespace selk;
using namespace selk::prf;
using kernel::Line;
using kernel::parse_formula;
namespace just = kernel::just;

namespace {

Derivation one_line(const char* text, kernel::Justification j) { return {{Line{parse_formula(text), j}}}; }

// Kernel verdict and PRF verdict on (d, claim) must agree; returns the verdict.
bool agree(const TheorySpec& t, const Derivation& d, const kernel::Formula& claim) {
  const CorpusItem item = item_of(d, "", claim);
  const KernelRun k = kernel_accepts(t, item.p, item.x);
  const PrfRun r = run_prf(t, item.p, item.x);
  EXPECT_EQ(k.accepted, r.accepted) << kernel::to_text(d.lines.back().formula) << " "
                                    << kernel::reason_name(k.verdict.reason);
  return r.accepted;
}

bool agree(const TheorySpec& t, const Derivation& d) { return agree(t, d, d.lines.back().formula); }

// Uses registers past the checker's register bank, with each-bit, break and
// nested loops.
const char* kWide = R"(
program WIDE(x, y) -> out {
  var pad[70], a, b, c;
  a = x;
  for b in y { if odd b { push1 a; } else { pop a; } }
  c = y;
  loop x { push1 out; if odd a { break; } pop a; }
  pad[69] = a;
  loop a { loop c { push1 out; if odd out { pop out; } else { break; } } }
  push1 pad[69];
  out = pad[69];
}
)";

const char* kHalter = R"(
program HALTER(x) -> out { out = x; loop x { pop out; if odd out { halt; } } push1 out; }
)";

}  // namespace

TEST(Build, CheckerIsWellFormed) {
  const CheckerBuild& b = build_prfcheck();
  EXPECT_EQ(b.program.arity, 3);
  EXPECT_EQ(b.program.name, "PRF");
  EXPECT_LE(b.program.nregs, loop::kMaxRegisters);
  EXPECT_EQ(b.version_hash.size(), 64u);
  EXPECT_NE(b.source.find("program PRF"), std::string::npos);
  EXPECT_EQ(loop::from_code(b.code), b.program);
  EXPECT_EQ(*registered_checker(arith::t0()), b.program);
  EXPECT_EQ(&build_prfcheck(), &b);
}

TEST(Build, GlobalBudget) {
  EXPECT_EQ(global_budget(0, 0), 64u * 16 * 16 * 16);
  EXPECT_EQ(global_budget(4, 0), 64u * 20 * 20 * 20);
  EXPECT_EQ(global_budget(1u << 20, 1u << 20), ~std::uint64_t{0});
  EXPECT_EQ(global_budget(~std::uint64_t{0}, 0), ~std::uint64_t{0});
}

TEST(Prf, SpecExamples) {
  const TheorySpec& t = arith::t0();
  const Derivation refl = one_line("(= #3 #3)", just::e1());
  EXPECT_TRUE(agree(t, refl));
  EXPECT_FALSE(run_prf(t, Natural(5), arith::contradiction_code()).accepted);
  EXPECT_FALSE(agree(t, refl, parse_formula("(= #4 #4)")));
  for (std::uint64_t n : {0, 1, 2}) EXPECT_FALSE(run_prf(t, Natural(n), arith::contradiction_code()).accepted);
}

TEST(Prf, ComputeCertificates) {
  const TheorySpec& t = arith::t0();
  const auto ctx = arith::text_context(t);
  auto line = [&](const char* s) { return Derivation{{Line{parse_formula(s, ctx), just::compute()}}}; };
  EXPECT_TRUE(agree(t, line("(= (ap LEQ #3 #5) #1)")));
  EXPECT_TRUE(agree(t, line("(= (ap LEQ #9 #5) z)")));
  EXPECT_TRUE(agree(t, line("(= (ap LEQ z z) #1)")));
  EXPECT_FALSE(agree(t, line("(= (ap LEQ #3 #5) z)")));
  EXPECT_FALSE(agree(t, line("(= (ap LEQ #3 ?a) #1)")));
  EXPECT_FALSE(agree(t, line("(= (ap LEQ #3 #5) (b0 z))")));
  EXPECT_FALSE(agree(t, line("(= #1 (ap LEQ #3 #5))")));
  EXPECT_TRUE(agree(t, line("(= (ap PRF e #5 c) z)")));
  EXPECT_FALSE(agree(t, line("(= (ap PRF e #5 c) #1)")));
}

TEST(Prf, NestedReplayOfValidDerivation) {
  TheorySpec inner;
  inner.name = "inner";
  const Derivation d = one_line("(= z z)", just::e1());
  const kernel::Term args[] = {kernel::numeral(arith::theory_code(inner)), arith::quote(d),
                       arith::quote(d.lines[0].formula)};
  const TheorySpec& t = arith::t0();
  for (int claim = 0; claim < 2; ++claim) {
    const kernel::Formula f = kernel::eq(kernel::ap("PRF", {args[0], args[1], args[2]}), kernel::numeral(Natural(claim)));
    EXPECT_EQ(agree(t, Derivation{{Line{f, just::compute()}}}), claim == 1);
  }
}

TEST(Prf, BudgetBoundaryIsExact) {
  const loop::Program& leq = loop::builtin_library().program("LEQ");
  const Natural in[] = {Natural(300), Natural(77)};
  const std::uint64_t steps = loop::run(leq, in).steps;
  const kernel::Formula f = parse_formula("(= (ap LEQ #300 #77) z)");
  for (std::uint64_t k : {steps - 1, steps, steps + 1}) {
    TheorySpec t;
    t.name = "tight";
    t.whitelist.push_back({build_prfcheck().program, 64, 3});
    t.whitelist.push_back({leq, static_cast<std::uint16_t>(k), 0});
    EXPECT_EQ(agree(t, Derivation{{Line{f, just::compute()}}}), k >= steps) << k;
  }
}

TEST(Prf, WideProgramsAndHalt) {
  TheorySpec t;
  t.name = "wide";
  t.whitelist.push_back({build_prfcheck().program, 64, 3});
  t.whitelist.push_back({loop::parse_program(kWide), 64, 3});
  t.whitelist.push_back({loop::parse_program(kHalter), 64, 3});
  std::mt19937_64 rng(41);
  for (int it = 0; it < 12; ++it) {
    const auto& w = t.whitelist[1 + it % 2].program;
    std::vector<Natural> in;
    std::vector<kernel::Term> args;
    for (int a = 0; a < w.arity; ++a) {
      in.push_back(Natural(rng() % 5000));
      args.push_back(kernel::numeral(in.back()));
    }
    Natural out = loop::run(w, in).output;
    const bool right = it % 3 != 0;
    if (!right) out.push_low(true);
    const kernel::Formula f = kernel::eq(kernel::ap(w.name, args), kernel::numeral(out));
    EXPECT_EQ(agree(t, Derivation{{Line{f, just::compute()}}}), right) << w.name;
  }
}

TEST(Prf, NestingDepthLimit) {
  const TheorySpec& t = arith::t0();
  for (int k : {3998, 3999, 4000, 4001}) {
    kernel::Term x = kernel::var(0);
    for (int i = 0; i < k; ++i) x = kernel::b0(x);
    const bool ok = agree(t, Derivation{{Line{kernel::eq(x, x), just::e1()}}});
    EXPECT_EQ(ok, k < 4000) << k;
  }
}

TEST(Differential, GeneratedDerivations) {
  TheorySpec t = arith::extend_theory(arith::t0(), {parse_formula("(= z (b1 z))"), parse_formula("(all ?a (= ?a ?a))")});
  std::mt19937_64 rng(42);
  std::vector<CorpusItem> corpus;
  for (int i = 0; i < 300; ++i) {
    Derivation d = gen::valid_ish(rng, t, i % 40 == 0 ? 36 + rng() % 6 : 1 + rng() % 6);
    if (rng() % 2) gen::damage(rng, d);
    std::optional<kernel::Formula> claim;
    if (rng() % 5 == 0) claim = gen::formula(rng, 2);
    corpus.push_back(item_of(d, "gen" + std::to_string(i), claim));
  }
  const DiffReport r = differential_check(t, corpus);
  EXPECT_TRUE(r.ok()) << r.disagreements.size() << " disagreements, first " << r.disagreements.front().label;
  EXPECT_GT(r.accepted, 50u);
  EXPECT_LT(r.accepted, corpus.size());
}

TEST(Differential, MutantsAndRawNaturals) {
  const TheorySpec& t = arith::t0();
  const auto ctx = arith::text_context(t);
  const Derivation d{{Line{parse_formula("(= (ap LEQ #3 #5) #1)", ctx), just::compute()},
                      Line{parse_formula("(-> (= #3 #3) (-> (= z z) (= #3 #3)))"), just::logic(1)},
                      Line{parse_formula("(= #3 #3)"), just::e1()},
                      Line{parse_formula("(-> (= z z) (= #3 #3))"), just::mp(2, 1)}}};
  ASSERT_TRUE(kernel::check(t, d).valid);
  std::vector<CorpusItem> corpus = byte_mutants(d, 150, 7);
  std::mt19937_64 rng(43);
  for (int i = 0; i < 150; ++i) {
    Natural n(rng() >> (rng() % 64));
    if (i % 3 == 0) {
      // Looks like a derivation header but is junk after it.
      n = Natural(0x130);
      for (int b = 0; b < 40; ++b) n.push_low(rng() % 2);
    }
    corpus.push_back(raw_item(n, "raw" + std::to_string(i)));
  }
  corpus.push_back(item_of(d, "original"));
  const DiffReport r = differential_check(t, corpus, 4);
  EXPECT_TRUE(r.ok()) << r.disagreements.size() << " disagreements, first " << r.disagreements.front().label;
  EXPECT_GE(r.accepted, 1u);
  EXPECT_EQ(r.items, corpus.size());
}

TEST(Differential, ReportsInjectedDisagreement) {
  // A theory whose registered checker accepts everything.
  TheorySpec t;
  t.name = "liar";
  t.whitelist.push_back({loop::parse_program("program PRF(e, p, x) -> out { push1 out; }"), 64, 3});
  const CorpusItem items[] = {raw_item(Natural(9), "nine"), item_of(one_line("(= z z)", just::e1()), "refl")};
  const DiffReport r = differential_check(t, items, 1);
  ASSERT_EQ(r.disagreements.size(), 1u);
  EXPECT_EQ(r.disagreements[0].label, "nine");
  EXPECT_FALSE(r.disagreements[0].kernel);
  EXPECT_TRUE(r.disagreements[0].prf);
  EXPECT_FALSE(r.disagreements[0].budget_rejection);
}

TEST(Differential, RequiresRegisteredChecker) {
  TheorySpec bare;
  bare.name = "bare";
  EXPECT_THROW(differential_check(bare, {}), std::invalid_argument);
  EXPECT_THROW(run_prf(bare, Natural(1), Natural(1)), std::invalid_argument);
}
