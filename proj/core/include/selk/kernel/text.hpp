#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "selk/kernel/derivation.hpp"
#include "selk/kernel/syntax.hpp"

namespace selk::kernel {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error("at offset " + std::to_string(offset) + ": " + msg), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Named constants usable as bare atoms (for example `e` for the theory code
/// and `c` for the code of 0 = 1), plus an optional theory whose whitelist
/// every `ap` symbol must belong to.
struct TextContext {
  std::map<std::string, Term, std::less<>> constants;
  const TheorySpec* theory = nullptr;
};

// Grammar (prefix s-expressions):
//   term    := z | #N | #0xH | ?x | ?vK | NAME | (b0 term) | (b1 term) | (ap PROG term*)
//   formula := (= term term) | (not f) | (-> f f) | (and f f) | (or f f) | (<-> f f)
//            | (all ?x f) | (ex ?x f)
// Variables ?a..?z are ids 0..25; ?vK is id K. `or` and `<->` expand to
// their definitions in not, -> and and.
Term parse_term(std::string_view text, const TextContext& ctx = {});
Formula parse_formula(std::string_view text, const TextContext& ctx = {});

/// Prints in the grammar above. Numerals equal to a named constant print as
/// that name; others print in decimal when they fit 64 bits, else hex.
std::string to_text(const Term& t, const TextContext& ctx = {});
std::string to_text(const Formula& f, const TextContext& ctx = {});

std::string var_name(Var v);

}  // namespace selk::kernel
