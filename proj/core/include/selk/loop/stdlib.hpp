#pragma once

#include <map>
#include <string>

#include "selk/loop/program.hpp"
#include "selk/loop/text.hpp"

namespace selk::loop {

/// The built-in library: shared procedures, the standard programs and the
/// proof checker, parsed once from the embedded sources.
const Library& builtin_library();

/// Standard programs keyed by registry name: leq, eq, bitlen, pair,
/// unpair-left, unpair-right, list-length, list-get, byte-slice.
const std::map<std::string, Program>& stdlib();

}  // namespace selk::loop
