#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "selk/kernel/syntax.hpp"
#include "selk/loop/program.hpp"

namespace selk::kernel {

enum class Rule : std::uint8_t { Logic, Equality, Numeral, Extra, MP, Gen, Compute };

// Schema numbers for Rule::Logic. 1..10 are the propositional schemas.
namespace schema {
inline constexpr std::uint8_t kQ1 = 0x11;  // all x F -> F[t/x]
inline constexpr std::uint8_t kQ2 = 0x12;  // F[t/x] -> ex x F
inline constexpr std::uint8_t kQ3 = 0x13;  // all x (G -> F) -> (G -> all x F), x not free in G
inline constexpr std::uint8_t kQ4 = 0x14;  // all x (F -> G) -> (ex x F -> G), x not free in G
}  // namespace schema

struct Justification {
  Rule rule = Rule::Logic;
  /// Logic: 1..10 or Q1..Q4; Equality: 1..3; Numeral: 1..5.
  std::uint8_t schema = 0;
  /// Instantiating term of Q1/Q2.
  Term term;
  /// Substitution variable and context formula of E2/E3.
  Var var = 0;
  Formula phi;
  /// Extra: axiom index. MP: i is the minor premise A, j the major A -> B.
  /// Gen: i is the premise.
  std::uint32_t i = 0;
  std::uint32_t j = 0;

  friend bool operator==(const Justification&, const Justification&) = default;
};

namespace just {
inline Justification logic(std::uint8_t n) { return {Rule::Logic, n, {}, 0, {}, 0, 0}; }
inline Justification q1(const Term& t) { return {Rule::Logic, schema::kQ1, t, 0, {}, 0, 0}; }
inline Justification q2(const Term& t) { return {Rule::Logic, schema::kQ2, t, 0, {}, 0, 0}; }
inline Justification e1() { return {Rule::Equality, 1, {}, 0, {}, 0, 0}; }
inline Justification e2(Var x, const Formula& phi) { return {Rule::Equality, 2, {}, x, phi, 0, 0}; }
inline Justification e3(Var x, const Formula& phi) { return {Rule::Equality, 3, {}, x, phi, 0, 0}; }
inline Justification numeral_axiom(std::uint8_t n) { return {Rule::Numeral, n, {}, 0, {}, 0, 0}; }
inline Justification extra(std::uint32_t i) { return {Rule::Extra, 0, {}, 0, {}, i, 0}; }
inline Justification mp(std::uint32_t minor, std::uint32_t major) { return {Rule::MP, 0, {}, 0, {}, minor, major}; }
inline Justification gen(std::uint32_t i) { return {Rule::Gen, 0, {}, 0, {}, i, 0}; }
inline Justification compute() { return {Rule::Compute, 0, {}, 0, {}, 0, 0}; }
}  // namespace just

struct Line {
  Formula formula;
  Justification just;

  friend bool operator==(const Line&, const Line&) = default;
};

struct Derivation {
  std::vector<Line> lines;

  friend bool operator==(const Derivation&, const Derivation&) = default;
};

/// A program usable in Compute lines, with its step budget
/// K * (sum of input bit-lengths + 16)^k.
struct WhitelistEntry {
  loop::Program program;
  std::uint16_t coeff = 64;
  std::uint8_t exponent = 3;

  friend bool operator==(const WhitelistEntry&, const WhitelistEntry&) = default;
};

inline constexpr std::uint8_t kMaxBudgetExponent = 8;

struct TheorySpec {
  std::string name;
  std::vector<Formula> extras;
  std::vector<WhitelistEntry> whitelist;

  const WhitelistEntry* find(std::string_view program) const {
    for (const auto& w : whitelist) {
      if (w.program.name == program) return &w;
    }
    return nullptr;
  }
};

/// Saturating K * (bits + 16)^k.
std::uint64_t budget_for(const WhitelistEntry& w, std::uint64_t input_bits);

}  // namespace selk::kernel
