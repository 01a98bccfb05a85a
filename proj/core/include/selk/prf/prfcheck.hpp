#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "selk/kernel/check.hpp"
#include "selk/loop/program.hpp"
#include "selk/natural.hpp"

namespace selk::prf {

using kernel::Derivation;
using kernel::Formula;
using kernel::TheorySpec;

/// The arithmetized proof checker PRF(e, p, x) as shipped: its source text,
/// compiled program, program code and a SHA-256 of the code bytes.
struct CheckerBuild {
  std::string source;
  loop::Program program;
  Natural code;
  std::string version_hash;
};

/// Built once from the embedded sources. Throws std::logic_error when a
/// library dependency of PRF is missing.
const CheckerBuild& build_prfcheck();

/// Fuel shared by all Compute replays inside one PRF run:
/// 64 * (bitlen(p) + bitlen(x) + 16)^3, saturated at 2^64 - 1.
std::uint64_t global_budget(std::uint64_t bitlen_p, std::uint64_t bitlen_x);

/// The PRF program registered in t, or nullptr.
const loop::Program* registered_checker(const TheorySpec& t);

struct PrfRun {
  bool accepted = false;
  std::uint64_t steps = 0;
};

/// run(PRF, [e, p, x]) with PRF taken from t's whitelist.
/// Throws std::invalid_argument when t has no registered checker.
PrfRun run_prf(const TheorySpec& t, const Natural& p, const Natural& x);
PrfRun run_prf(const TheorySpec& t, const Natural& e, const Natural& p, const Natural& x);

/// Kernel side of the comparison: p decodes to a derivation that is valid in
/// t and whose conclusion has code x.
struct KernelRun {
  bool accepted = false;
  bool decoded = false;
  kernel::Verdict verdict;
};
KernelRun kernel_accepts(const TheorySpec& t, const Natural& p, const Natural& x);

/// One corpus entry: a derivation code p and a claimed conclusion code x.
struct CorpusItem {
  Natural p;
  Natural x;
  std::string label;
};

/// p = godel(d), x = godel(conclusion of d) (or of `claim` when given).
CorpusItem item_of(const Derivation& d, std::string label = "", const std::optional<Formula>& claim = std::nullopt);
/// A raw natural with x = the code of 0 = 1.
CorpusItem raw_item(const Natural& n, std::string label = "");

struct Disagreement {
  std::size_t index = 0;
  std::string label;
  bool kernel = false;
  bool prf = false;
  /// The kernel accepts but the replay fuel of the arithmetized check would
  /// not cover the Compute lines, so PRF rejecting is a budget rejection.
  bool budget_rejection = false;
  std::string detail;
};

struct DiffReport {
  std::size_t items = 0;
  std::size_t accepted = 0;
  std::uint64_t max_prf_steps = 0;
  std::uint64_t total_prf_steps = 0;
  std::vector<Disagreement> disagreements;

  bool ok() const { return disagreements.empty(); }
};

/// Runs the kernel and PRF on every item and lists the items where they
/// differ. Items are spread over `threads` workers (0: hardware concurrency).
DiffReport differential_check(const TheorySpec& t, std::span<const CorpusItem> corpus, unsigned threads = 0);

/// Single-byte mutants of the serialization of d, as corpus items claiming
/// d's conclusion. Deterministic in `seed`.
std::vector<CorpusItem> byte_mutants(const Derivation& d, std::size_t count, std::uint64_t seed);

}  // namespace selk::prf
