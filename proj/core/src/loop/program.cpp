#include "selk/loop/program.hpp"

#include <string>

namespace selk::loop {

namespace {

void validate_block(const Program& p, const Block& block, int loop_depth) {
  for (const Stmt& s : block) {
    auto check_reg = [&](Reg r) {
      if (r >= p.nregs) {
        throw ProgramError("register r" + std::to_string(r) + " out of range in program " + p.name);
      }
    };
    switch (s.op) {
      case Op::Zero:
      case Op::Push0:
      case Op::Push1:
      case Op::Pop:
        check_reg(s.a);
        break;
      case Op::Copy:
        check_reg(s.a);
        check_reg(s.b);
        break;
      case Op::IfOdd:
        check_reg(s.a);
        validate_block(p, s.body, loop_depth);
        validate_block(p, s.alt, loop_depth);
        break;
      case Op::Loop:
      case Op::EachBit:
        check_reg(s.a);
        if (s.op == Op::EachBit) check_reg(s.b);
        if (loop_depth + 1 > kMaxLoopDepth) {
          throw ProgramError("loop nesting deeper than " + std::to_string(kMaxLoopDepth));
        }
        validate_block(p, s.body, loop_depth + 1);
        break;
      case Op::Break:
        if (loop_depth == 0) throw ProgramError("break outside of a loop");
        break;
      case Op::Halt:
        break;
    }
    if (s.op != Op::IfOdd && !s.alt.empty()) throw ProgramError("stray else-branch");
    if (s.op != Op::IfOdd && s.op != Op::Loop && s.op != Op::EachBit && !s.body.empty()) {
      throw ProgramError("stray body");
    }
  }
}

}  // namespace

void validate(const Program& p) {
  if (p.name.empty() || p.name.size() > 255) throw ProgramError("program name must be 1..255 bytes");
  if (p.nregs > kMaxRegisters) throw ProgramError("too many registers in " + p.name);
  if (p.nregs < p.arity + 1) throw ProgramError("program " + p.name + " lacks an output register");
  validate_block(p, p.body, 0);
}

std::size_t statement_count(const Block& b) {
  std::size_t n = 0;
  for (const Stmt& s : b) n += 1 + statement_count(s.body) + statement_count(s.alt);
  return n;
}

}  // namespace selk::loop
