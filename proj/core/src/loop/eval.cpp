#include "selk/loop/eval.hpp"

#include <string>
#include <vector>

namespace selk::loop {

namespace {

enum class Flow { Next, Break, Halt };

struct OutOfSteps {};

class Machine {
 public:
  Machine(std::size_t nregs, std::uint64_t budget) : regs_(nregs), budget_(budget) {}

  std::vector<Natural>& regs() { return regs_; }
  std::uint64_t steps() const { return steps_; }

  Flow block(const Block& b) {
    if (b.empty()) {
      charge();
      return Flow::Next;
    }
    const std::size_t last = b.size() - 1;
    for (std::size_t i = 0; i < last; ++i) {
      charge();
      const Flow f = stmt(b[i]);
      if (f != Flow::Next) return f;
    }
    return stmt(b[last]);
  }

 private:
  void charge() {
    if (steps_ == budget_) throw OutOfSteps{};
    ++steps_;
  }

  Flow stmt(const Stmt& s) {
    charge();
    switch (s.op) {
      case Op::Zero: regs_[s.a].clear(); return Flow::Next;
      case Op::Copy: if (s.a != s.b) regs_[s.a] = regs_[s.b]; return Flow::Next;
      case Op::Push0: regs_[s.a].push_low(false); return Flow::Next;
      case Op::Push1: regs_[s.a].push_low(true); return Flow::Next;
      case Op::Pop: regs_[s.a].pop_low(); return Flow::Next;
      case Op::IfOdd: return block(regs_[s.a].low_bit() ? s.body : s.alt);
      case Op::Loop: {
        const std::size_t n = regs_[s.a].bit_length();
        for (std::size_t i = 0; i < n; ++i) {
          charge();
          const Flow f = block(s.body);
          if (f == Flow::Break) break;
          if (f == Flow::Halt) return f;
        }
        return Flow::Next;
      }
      case Op::EachBit: {
        const Natural snapshot = regs_[s.a];
        const std::size_t n = snapshot.bit_length();
        for (std::size_t i = 0; i < n; ++i) {
          charge();
          Natural& b = regs_[s.b];
          b.clear();
          if (snapshot.bit(i)) b.push_low(true);
          const Flow f = block(s.body);
          if (f == Flow::Break) break;
          if (f == Flow::Halt) return f;
        }
        return Flow::Next;
      }
      case Op::Break: return Flow::Break;
      case Op::Halt: return Flow::Halt;
    }
    return Flow::Next;
  }

  std::vector<Natural> regs_;
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
};

}  // namespace

RunResult run(const Program& p, std::span<const Natural> inputs, std::uint64_t budget) {
  if (inputs.size() != p.arity) {
    throw ArityMismatch(p.name + " expects " + std::to_string(p.arity) + " inputs, got " +
                        std::to_string(inputs.size()));
  }
  Machine m(p.nregs, budget);
  for (std::size_t i = 0; i < inputs.size(); ++i) m.regs()[i] = inputs[i];
  try {
    m.block(p.body);
  } catch (const OutOfSteps&) {
    throw BudgetExceeded(budget);
  }
  return {std::move(m.regs()[p.output()]), m.steps()};
}

std::optional<RunResult> try_run(const Program& p, std::span<const Natural> inputs, std::uint64_t budget) {
  try {
    return run(p, inputs, budget);
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
}

}  // namespace selk::loop
