#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace selk::loop {

using Reg = std::uint8_t;

/// Statement forms of the bounded-loop language. There is no unbounded
/// iteration: `Loop` and `EachBit` run at most bit-length-of-register times,
/// with the count fixed on entry.
enum class Op : std::uint8_t {
  Zero,     // a := 0
  Copy,     // a := b
  Push0,    // a := 2a
  Push1,    // a := 2a + 1
  Pop,      // a := a / 2
  IfOdd,    // if a is odd then body else alt
  Loop,     // repeat bitlen(a) times: body
  EachBit,  // for each bit of a, low to high: b := bit; body
  Break,    // leave the innermost loop
  Halt,     // stop the program
};

struct Stmt;
using Block = std::vector<Stmt>;

struct Stmt {
  Op op = Op::Halt;
  Reg a = 0;
  Reg b = 0;
  Block body;
  Block alt;

  friend bool operator==(const Stmt&, const Stmt&) = default;
};

inline constexpr int kMaxLoopDepth = 16;
inline constexpr int kMaxRegisters = 255;

/// A bounded-loop program. Inputs occupy registers 0..arity-1 and the result
/// is read from register `arity` when the program stops.
struct Program {
  std::string name;
  std::uint8_t arity = 0;
  std::uint16_t nregs = 1;
  Block body;

  Reg output() const { return arity; }

  friend bool operator==(const Program&, const Program&) = default;
};

class ProgramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws ProgramError unless the program satisfies every well-formedness
/// rule: register bounds, nesting depth, break placement, name length.
void validate(const Program& p);

std::size_t statement_count(const Block& b);

}  // namespace selk::loop
