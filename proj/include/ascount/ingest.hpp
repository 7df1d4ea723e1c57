#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "ascount/program.hpp"

namespace ascount {

struct ParseDiagnostic {
  int line = 1;    // 1-based
  int column = 1;  // 1-based
  std::string message;
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(ParseDiagnostic diag);
  const ParseDiagnostic& diagnostic() const { return diag_; }

 private:
  ParseDiagnostic diag_;
};

/// Parses the ground-program text format:
///
///   program   := { statement }
///   statement := ( atom [ ":-" body ] | ":-" body ) "."
///   body      := literal { "," literal }
///   literal   := [ "not" ws ] atom
///   atom      := ident [ "(" balanced-args ")" ]
///
/// `%` starts a comment running to end of line. Whitespace inside argument
/// lists is dropped, so `edge(1, 2)` and `edge(1,2)` name the same atom.
/// Duplicate statements are dropped. Throws ParseError.
Program parse_program(std::string_view text);

/// One statement per line; facts render as `a.`, constraints as `:- ... .`.
std::string render_program(const Program& program);

Program load_program_file(const std::string& path);

}  // namespace ascount
