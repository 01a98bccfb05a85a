#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "selk/loop/program.hpp"
#include "selk/natural.hpp"

namespace selk::loop {

inline constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(std::uint64_t budget)
      : std::runtime_error("step budget of " + std::to_string(budget) + " exceeded"), budget_(budget) {}
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t budget_;
};

class ArityMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunResult {
  Natural output;
  std::uint64_t steps = 0;
};

// Cost model: every executed statement costs one step, including tests,
// loop entries, break, halt, and the empty block. A block of k statements
// costs k - 1 more for sequencing, and each loop iteration costs one.

/// Runs `p` on `inputs`. Throws BudgetExceeded once the step count would
/// pass `budget`, ArityMismatch if the input count is wrong.
RunResult run(const Program& p, std::span<const Natural> inputs, std::uint64_t budget = kUnlimited);

/// Same as run() but reports budget exhaustion as nullopt.
std::optional<RunResult> try_run(const Program& p, std::span<const Natural> inputs, std::uint64_t budget);

}  // namespace selk::loop
