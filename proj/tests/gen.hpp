#pragma once

// Random well-formed loop programs for property tests.

#include <random>

#include "selk/loop/program.hpp"

namespace gen {

inline selk::loop::Block block(std::mt19937_64& rng, int nregs, int depth, int loop_depth);

inline selk::loop::Stmt stmt(std::mt19937_64& rng, int nregs, int depth, int loop_depth) {
  using selk::loop::Op;
  selk::loop::Stmt s;
  auto reg = [&] { return static_cast<selk::loop::Reg>(rng() % static_cast<unsigned>(nregs)); };
  const unsigned pick = static_cast<unsigned>(rng() % (depth > 0 ? 10 : 6));
  switch (pick) {
    case 0: s.op = Op::Zero; s.a = reg(); break;
    case 1: s.op = Op::Copy; s.a = reg(); s.b = reg(); break;
    case 2: s.op = Op::Push0; s.a = reg(); break;
    case 3: s.op = Op::Push1; s.a = reg(); break;
    case 4: s.op = Op::Pop; s.a = reg(); break;
    case 5:
      s.op = loop_depth > 0 && rng() % 4 == 0 ? Op::Break : (rng() % 20 == 0 ? Op::Halt : Op::Push1);
      s.a = reg();
      if (s.op != Op::Push1) s.a = 0;
      break;
    case 6:
    case 7:
      s.op = Op::IfOdd;
      s.a = reg();
      s.body = block(rng, nregs, depth - 1, loop_depth);
      s.alt = block(rng, nregs, depth - 1, loop_depth);
      break;
    case 8:
      s.op = Op::Loop;
      s.a = reg();
      s.body = block(rng, nregs, depth - 1, loop_depth + 1);
      break;
    default:
      s.op = Op::EachBit;
      s.a = reg();
      s.b = reg();
      s.body = block(rng, nregs, depth - 1, loop_depth + 1);
      break;
  }
  return s;
}

inline selk::loop::Block block(std::mt19937_64& rng, int nregs, int depth, int loop_depth) {
  selk::loop::Block b;
  const int n = static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) b.push_back(stmt(rng, nregs, depth, loop_depth));
  return b;
}

inline selk::loop::Program program(std::mt19937_64& rng) {
  selk::loop::Program p;
  p.name = "G" + std::to_string(rng() % 1000);
  p.arity = static_cast<std::uint8_t>(rng() % 3);
  p.nregs = static_cast<std::uint16_t>(p.arity + 1 + rng() % 4);
  p.body = block(rng, p.nregs, 3, 0);
  return p;
}

}  // namespace gen
