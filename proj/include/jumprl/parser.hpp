#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "jumprl/predicate.hpp"
#include "jumprl/program.hpp"

namespace jumprl {

enum class SourceErrorKind { Lex, Parse, Resolve };

/// Positions are 1-based.
class SourceError : public std::runtime_error {
  public:
    SourceError(SourceErrorKind kind, std::size_t line, std::size_t column, std::string message);

    [[nodiscard]] SourceErrorKind kind() const { return kind_; }
    [[nodiscard]] std::size_t line() const { return line_; }
    [[nodiscard]] std::size_t column() const { return column_; }
    [[nodiscard]] const std::string& message() const { return message_; }

  private:
    SourceErrorKind kind_;
    std::size_t line_;
    std::size_t column_;
    std::string message_;
};

std::string_view to_string(SourceErrorKind kind);

/// Concrete syntax:
///
///   entry 0
///   block 0: y := 0; jump (x < 0 || x > 3) 9 1
///   block 1: ijump x
///   block 9: d <- some (1 < d && d < n); [b] := [a]; exit
///
/// `#` starts a line comment. A jump condition is a unary expression, so
/// compound conditions are parenthesized.
Program parse_program(std::string_view text);

/// `E i in bound . body` binders may only appear as an outermost prefix.
Predicate parse_predicate(std::string_view text);

Expr parse_expr(std::string_view text);

/// Canonical text; blocks sorted by address. Reparses to an equal program.
std::string print_program(const Program& p);

std::string to_string(const Stmt& s);
std::string to_string(const Terminator& t);

} // namespace jumprl
