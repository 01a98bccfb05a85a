#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "selk/loop/program.hpp"

namespace selk::loop {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& msg, int line, int col)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

struct ProcDef;

/// A set of parsed sources. Procedures declared in one source are visible to
/// every source added later; each `program` is lowered to primitive form as
/// soon as its source is added.
class Library {
 public:
  Library();
  ~Library();
  Library(Library&&) noexcept;
  Library& operator=(Library&&) noexcept;

  /// Throws SyntaxError (with line/column) or ProgramError.
  void add_source(std::string_view text);

  bool has_program(std::string_view name) const;
  const Program& program(std::string_view name) const;
  std::vector<std::string> program_names() const;

 private:
  std::map<std::string, std::shared_ptr<const ProcDef>, std::less<>> procs_;
  std::map<std::string, Program, std::less<>> programs_;
};

/// Parses a source holding exactly one program (plus any procedures).
Program parse_program(std::string_view text);

/// Renders a program in primitive form; parse_program(format(p)) == p.
std::string format(const Program& p);

}  // namespace selk::loop
