#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "selk/kernel/derivation.hpp"

namespace selk::kernel {

enum class Reason : std::uint8_t {
  None,
  MalformedEncoding,
  BadSchemaInstance,
  ForwardReference,
  BadModusPonens,
  BadGeneralization,
  ExtraAxiomOutOfRange,
  ExtraAxiomMismatch,
  NonWhitelistedProgram,
  ArityMismatch,
  MalformedCertificate,
  BudgetExceeded,
  ClaimedOutputMismatch,
};

/// Stable kebab-case name, e.g. "claimed-output-mismatch".
const char* reason_name(Reason r);

struct Verdict {
  bool valid = false;
  Formula conclusion;
  /// Index of the first bad line when invalid.
  std::size_t line = 0;
  Reason reason = Reason::None;
  std::string detail;
  /// Total evaluator steps spent replaying Compute lines.
  std::uint64_t replay_steps = 0;
};

/// Checks every line of `d` against the axioms, rules, whitelist and budgets
/// of `t`. Never throws on bad input; failures are invalid verdicts.
Verdict check(const TheorySpec& t, const Derivation& d);

/// Decodes and checks a serialized derivation; undecodable input is reported
/// as malformed-encoding at line 0.
Verdict check_bytes(const TheorySpec& t, std::span<const std::uint8_t> bytes);

/// The axiom-hood test used by check() for Logic, Equality and Numeral lines.
bool is_schema_instance(const Formula& f, const Justification& j);

}  // namespace selk::kernel
