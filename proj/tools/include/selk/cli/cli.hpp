#pragma once

#include <ostream>
#include <vector>

#include "selk/kernel/derivation.hpp"
#include "selk/prf/prfcheck.hpp"

namespace selk::cli {

enum Exit : int { kOk = 0, kInvalid = 1, kIo = 2, kParse = 3, kUnsupported = 4 };

/// Runs one command line; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Built-in selftest corpus for t: selector outputs, other kernel-valid
/// derivations, byte mutants and raw naturals.
std::vector<prf::CorpusItem> shipped_corpus(const kernel::TheorySpec& t);

}  // namespace selk::cli
