#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "selk/kernel/derivation.hpp"
#include "selk/natural.hpp"

namespace selk::selector {

using kernel::Derivation;
using kernel::Formula;
using kernel::Justification;
using kernel::Term;
using kernel::TheorySpec;
using kernel::Var;

enum class ErrorKind : std::uint8_t {
  CheckerNotRegistered,
  BudgetInfeasible,
  InvalidInput,
  GuardFailed,
  AxiomAbsent,
  Internal,
};

const char* error_name(ErrorKind k);

class SelectorError : public std::runtime_error {
 public:
  SelectorError(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Appends lines to a derivation and expands the lemma macros. Each method
/// returns the index of the line holding its conclusion.
class ProofBuilder {
 public:
  ProofBuilder() = default;
  explicit ProofBuilder(Derivation prefix) : d_(std::move(prefix)) {}

  std::uint32_t add(const Formula& f, const Justification& j);
  /// From i: A and j: A -> B, B.
  std::uint32_t mp(std::uint32_t i, std::uint32_t j);
  const Formula& at(std::uint32_t i) const { return d_.lines.at(i).formula; }
  std::size_t size() const { return d_.lines.size(); }
  Derivation take() { return std::move(d_); }

  /// i: s = t  gives  t = s.
  std::uint32_t eq_symmetry(std::uint32_t i);
  /// i: a = b, j: b = c  gives  a = c.
  std::uint32_t eq_transitivity(std::uint32_t i, std::uint32_t j);
  /// i: a = b, j: not (b = c)  gives  not (a = c). Mentions a only three times.
  std::uint32_t neq_from_eq(std::uint32_t i, std::uint32_t j);
  /// i: not (s = t)  gives  not (t = s).
  std::uint32_t neq_symmetry(std::uint32_t i);
  /// i: P, j: not P  gives  goal.
  std::uint32_t ex_falso(std::uint32_t i, std::uint32_t j, const Formula& goal);
  /// i: A, j: B  gives  A and B.
  std::uint32_t and_intro(std::uint32_t i, std::uint32_t j);
  /// i: A and B  gives  A (right: B).
  std::uint32_t and_elim(std::uint32_t i, bool right);
  /// i: body[t/x]  gives  ex x body.
  std::uint32_t exists_intro(std::uint32_t i, Var x, const Formula& body, const Term& t);
  /// i: all x body  gives  body[t/x].
  std::uint32_t forall_elim(std::uint32_t i, const Term& t);

 private:
  Derivation d_;
};

/// Names of the lemma macros ProofBuilder expands.
const std::vector<std::string>& macro_names();

/// Instrumentation for one selector call: the selector does one meta-level
/// PRF replay and a structurally bounded assembly.
struct Audit {
  unsigned prf_replays = 0;
  std::uint64_t replay_steps = 0;
  int case_taken = 0;
  std::size_t lines_emitted = 0;
  /// Upper bound on lines_emitted fixed before assembly starts.
  std::size_t line_bound = 0;
};

/// Derivation of sentence_con_n(t, n). Case 1 when PRF(e, n, c) = 0, Case 2
/// (n codes a t-proof of 0 = 1) otherwise. Kernel-checked before return.
Derivation select_con_instance(const TheorySpec& t, const Natural& n, Audit* audit = nullptr);

/// From a kernel-valid derivation d of phi, a derivation of
/// sentence_prov(t, quote(phi)).
Derivation internalize_d1(const TheorySpec& t, const Derivation& d);

/// Derivation of not sentence_prov_star(t, quote(0 = 1)).
Derivation refute_prov_star(const TheorySpec& t);

/// t extended with sentence_con_bd(t, m) as its last extra axiom.
TheorySpec with_con_bd(const TheorySpec& t, const Natural& m);

/// In a theory holding some sentence_con_bd(T, m) as an extra axiom, a
/// derivation of sentence_con_n(T, n) for n <= m.
Derivation reduce_bounded(const TheorySpec& t_plus, const Natural& n);

/// [T0, T1, ..., Tk] with T(i+1) = T(i) + Con(T(i)).
std::vector<TheorySpec> build_tower(const TheorySpec& t0, unsigned height);

struct BenchRow {
  Natural n;
  std::uint64_t bitlen_n = 0;
  int case_taken = 0;
  std::uint64_t proof_bytes = 0;
  std::uint64_t replay_steps = 0;
  std::uint64_t check_micros = 0;
};

std::vector<BenchRow> bench_sizes(const TheorySpec& t, std::span<const Natural> ns);

inline constexpr const char* kBenchHeader = "n,bitlen_n,case,proof_bytes,replay_steps,check_micros";
std::string bench_csv_row(const BenchRow& r);

/// Number of times the never-universal guard has fired in this process.
std::uint64_t universal_guard_trips();

}  // namespace selk::selector
