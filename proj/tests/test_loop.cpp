#include <gtest/gtest.h>

#include <random>

#include "gen.hpp"
#include "oracle.hpp"
#include "selk/loop/codec.hpp"
#include "selk/loop/eval.hpp"
#include "selk/loop/stdlib.hpp"
#include "selk/loop/text.hpp"

using namespace selk;
using namespace selk::loop;
using oracle::Big;

namespace {

Natural run1(const Program& p, std::vector<Natural> in) { return run(p, in, 50'000'000).output; }

Big run_big(const std::string& name, std::vector<Big> in) {
  std::vector<Natural> args;
  for (const auto& b : in) args.push_back(oracle::from_big(b));
  return oracle::to_big(run1(stdlib().at(name), args));
}

Big cons(const Big& a, const Big& l) { return 2 * oracle::pair(a, l) + 1; }

}  // namespace

TEST(LoopParse, Identity) {
  const Program p = parse_program("program ID(x) -> y { y = x; }");
  EXPECT_EQ(p.arity, 1);
  EXPECT_EQ(run(p, std::vector{Natural(7)}, 100).output, Natural(7));
}

TEST(LoopParse, LeqSourceAgreesWithOracle) {
  const Program p = parse_program(std::string(R"(
    proc cmp(x, y, out) {
      local xs, ys, c, gt;
      xs = x; ys = y; c = 1;
      loop x { push0 c; }
      loop y { push0 c; }
      gt = 0;
      loop c {
        if odd xs { if even ys { gt = 1; } } else { if odd ys { gt = 0; } }
        pop xs; pop ys;
      }
      out = 1;
      if odd gt { out = 0; }
    }
    program MYLEQ(x, y) -> r { call cmp(x, y, r); }
  )"));
  EXPECT_EQ(p.arity, 2);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const Big x = oracle::random_big(rng, 150);
    const Big y = rng() % 8 == 0 ? x : oracle::random_big(rng, 150);
    const auto out = run(p, std::vector{oracle::from_big(x), oracle::from_big(y)}, 1'000'000).output;
    ASSERT_EQ(out, Natural(x <= y ? 1 : 0)) << x << " " << y;
  }
}

TEST(LoopParse, RejectsUnboundedConstructs) {
  try {
    parse_program("program W(x) -> y {\n  while x { pop x; }\n}");
    FAIL() << "accepted a while loop";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.col(), 3);
    EXPECT_NE(std::string(e.what()).find("unbounded construct"), std::string::npos);
  }
}

TEST(LoopParse, SyntaxErrorsCarryPosition) {
  try {
    parse_program("program P(x) -> y {\n  y = x\n}");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.col(), 1);
  }
  EXPECT_THROW(parse_program("program P(x) -> y { z = x; }"), SyntaxError);
  EXPECT_THROW(parse_program("program P(x) -> y { call nothing(x); }"), SyntaxError);
  EXPECT_THROW(parse_program("program P(x) -> y { y = x; } program Q(x) -> y { y = x; }"), SyntaxError);
  EXPECT_THROW(parse_program("program P(x) -> y { break; }"), ProgramError);
}

TEST(LoopParse, SugarLowersAsDocumented) {
  const Program p = parse_program(R"(
    proc setk(a) { local t; t = 5; a = t; }
    program S(b2, b1, b0) -> out {
      var slot[8];
      far hi;
      call setk(hi);
      slot[3] = 0b101;
      slot[6] = 0x10;
      switch (b2, b1, b0) {
        3 => { out = slot[3]; }
        k in 5..6 => { out = k; push0 out; }
        else => { out = hi; }
      }
      block { push1 out; break; push1 out; }
    }
  )");
  EXPECT_EQ(p.arity, 3);
  auto eval = [&](int v) {
    return run(p, std::vector{Natural((v >> 2) & 1), Natural((v >> 1) & 1), Natural(v & 1)}, 10'000).output;
  };
  EXPECT_EQ(eval(3), Natural(0b1011));
  EXPECT_EQ(eval(5), Natural(0b10101));
  EXPECT_EQ(eval(6), Natural(0b11001));
  EXPECT_EQ(eval(0), Natural(0b1011));
  EXPECT_EQ(eval(7), Natural(0b1011));
  // The far register is allocated last, after the procedure stack.
  EXPECT_EQ(p.nregs, 3 + 1 + 8 + 1 + 1);
}

TEST(LoopParse, LoopNestingLimit) {
  std::string src = "program D(x) -> y {";
  for (int i = 0; i < 17; ++i) src += " loop x {";
  src += " push1 y;";
  for (int i = 0; i < 17; ++i) src += " }";
  src += " }";
  EXPECT_THROW(parse_program(src), ProgramError);
}

TEST(LoopFormat, RoundTripsStdlibAndRandomPrograms) {
  for (const auto& [name, p] : stdlib()) EXPECT_EQ(parse_program(format(p)), p) << name;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const Program p = gen::program(rng);
    ASSERT_EQ(parse_program(format(p)), p) << format(p);
  }
}

TEST(LoopCodec, RoundTripAndDeterminism) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 2000; ++i) {
    const Program p = gen::program(rng);
    const Natural c = program_code(p);
    ASSERT_EQ(c, program_code(p));
    ASSERT_EQ(from_code(c), p);
    ASSERT_EQ(program_code(from_code(c)), c);
  }
}

TEST(LoopCodec, StdlibCodesAreDistinct) {
  const Natural a = program_code(stdlib().at("leq"));
  const Natural b = program_code(stdlib().at("bitlen"));
  EXPECT_NE(a, b);
  std::set<std::vector<std::uint8_t>> seen;
  for (const auto& [name, p] : stdlib()) EXPECT_TRUE(seen.insert(encode(p)).second) << name;
}

TEST(LoopCodec, ZeroIsNotACode) { EXPECT_THROW(from_code(Natural{}), CodeError); }

TEST(LoopCodec, FuzzNeverCrashes) {
  std::mt19937_64 rng(13);
  int decoded = 0;
  for (int i = 0; i < 100'000; ++i) {
    const Natural c(rng());
    try {
      const Program p = from_code(c);
      ASSERT_EQ(program_code(p), c);
      ++decoded;
    } catch (const CodeError&) {
    }
  }
  // Mutations of valid codes exercise deeper paths than uniform noise.
  const auto base = encode(stdlib().at("pair"));
  for (int i = 0; i < 20'000; ++i) {
    auto bytes = base;
    for (int k = 0; k < 3; ++k) bytes[rng() % bytes.size()] = static_cast<std::uint8_t>(rng());
    if (rng() % 2 == 0) bytes.resize(rng() % bytes.size());
    try {
      const Program p = decode(bytes);
      ASSERT_EQ(encode(p), bytes);
    } catch (const CodeError&) {
    }
  }
  SUCCEED() << decoded << " random values decoded";
}

TEST(LoopEval, StepAccounting) {
  auto prog = [](const std::string& body) { return parse_program("program P(x) -> y { " + body + " }"); };
  const std::vector<Natural> in{Natural(3)};
  EXPECT_EQ(run(prog(""), in).steps, 1U);
  EXPECT_EQ(run(prog("y = 0;"), in).steps, 1U);
  EXPECT_EQ(run(prog("push1 y; push1 y;"), in).steps, 3U);
  // loop entry + 2 iterations of (iteration + push)
  EXPECT_EQ(run(prog("loop x { push1 y; }"), in).steps, 5U);
  // if test + branch statement
  EXPECT_EQ(run(prog("if odd x { push1 y; } else { }"), in).steps, 2U);
  // for entry + 2 x (iteration + empty body)
  EXPECT_EQ(run(prog("for y in x { }"), in).steps, 5U);
  // halt stops everything after it
  EXPECT_EQ(run(prog("halt; push1 y;"), in).steps, 2U);
  // loop entry, iteration, break
  EXPECT_EQ(run(prog("loop x { break; }"), in).steps, 3U);
}

TEST(LoopEval, BudgetIsExactAndMonotone) {
  std::mt19937_64 rng(17);
  for (const auto& [name, p] : stdlib()) {
    std::vector<Natural> in;
    for (int i = 0; i < p.arity; ++i) in.push_back(oracle::from_big(oracle::random_big(rng, 40)));
    const RunResult r = run(p, in);
    EXPECT_EQ(run(p, in, r.steps).output, r.output) << name;
    EXPECT_THROW(run(p, in, r.steps - 1), BudgetExceeded) << name;
    const RunResult more = run(p, in, r.steps + rng() % 1000);
    EXPECT_EQ(more.steps, r.steps);
    EXPECT_EQ(more.output, r.output);
  }
}

TEST(LoopEval, RandomProgramsAreTotalAndDeterministic) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 3000; ++i) {
    const Program p = gen::program(rng);
    std::vector<Natural> in;
    for (int k = 0; k < p.arity; ++k) in.push_back(Natural(rng() % 64));
    const auto a = try_run(p, in, 20'000);
    const auto b = try_run(p, in, 20'000);
    ASSERT_EQ(a.has_value(), b.has_value());
    if (a) {
      ASSERT_LE(a->steps, 20'000U);
      ASSERT_EQ(a->output, b->output);
      ASSERT_EQ(a->steps, b->steps);
    }
  }
}

TEST(LoopEval, ArityMismatch) {
  EXPECT_THROW(run(stdlib().at("leq"), std::vector{Natural(1)}, 100), ArityMismatch);
}

TEST(Stdlib, LeqExamples) {
  EXPECT_EQ(run(stdlib().at("leq"), std::vector{Natural(3), Natural(5)}, 10'000).output, Natural(1));
  EXPECT_EQ(run(stdlib().at("leq"), std::vector{Natural(5), Natural(3)}, 10'000).output, Natural(0));
}

TEST(Stdlib, BitlenAgreesWithOracle) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 1000; ++i) {
    const Big n = oracle::random_big(rng, 300);
    ASSERT_EQ(run_big("bitlen", {n}), Big(oracle::bitlen(n))) << n;
  }
}

TEST(Stdlib, EqReflexiveAndOracle) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const Big n = oracle::random_big(rng, 200);
    ASSERT_EQ(run_big("eq", {n, n}), 1);
  }
  for (int i = 0; i < 300; ++i) {
    const Big x = oracle::random_big(rng, 20);
    const Big y = oracle::random_big(rng, 20);
    ASSERT_EQ(run_big("eq", {x, y}), x == y ? 1 : 0);
  }
}

TEST(Stdlib, PairUnpair) {
  EXPECT_EQ(run_big("unpair-left", {run_big("pair", {3, 4})}), 3);
  EXPECT_EQ(run_big("unpair-right", {run_big("pair", {3, 4})}), 4);
  std::mt19937_64 rng(37);
  for (int i = 0; i < 300; ++i) {
    const Big x = oracle::random_big(rng, 120);
    const Big y = oracle::random_big(rng, 120);
    const Big z = run_big("pair", {x, y});
    ASSERT_EQ(z, oracle::pair(x, y));
    ASSERT_EQ(run_big("unpair-left", {z}), x);
    ASSERT_EQ(run_big("unpair-right", {z}), y);
  }
}

TEST(Stdlib, ListOpsAgreeWithListOracle) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<Big> items(rng() % 6);
    for (auto& it : items) it = oracle::random_big(rng, 30);
    Big l = 0;
    for (auto it = items.rbegin(); it != items.rend(); ++it) l = cons(*it, l);
    ASSERT_EQ(run_big("list-length", {l}), Big(items.size()));
    for (std::size_t i = 0; i <= items.size() + 1; ++i) {
      const Big want = i < items.size() ? items[i] : Big(0);
      ASSERT_EQ(run_big("list-get", {l, Big(i)}), want) << "trial " << trial << " index " << i;
    }
  }
}

TEST(Stdlib, ByteSliceAgreesWithOracle) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 300; ++i) {
    const Big x = oracle::random_big(rng, 200);
    const unsigned off = static_cast<unsigned>(rng() % 30);
    const unsigned len = static_cast<unsigned>(rng() % 30);
    const Big want = (x >> (8 * off)) & ((Big(1) << (8 * len)) - 1);
    ASSERT_EQ(run_big("byte-slice", {x, off, len}), want);
  }
}
