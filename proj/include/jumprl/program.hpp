#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "jumprl/expr.hpp"

namespace jumprl {

struct Assign {
    std::string var;
    Expr value;
    friend bool operator==(const Assign&, const Assign&) = default;
};

/// `var <- some cond`: picks any w with cond[var := w] non-zero. Inside
/// `cond`, `var` names the candidate, not the prior binding.
struct NondetAssign {
    std::string var;
    Expr cond;
    friend bool operator==(const NondetAssign&, const NondetAssign&) = default;
};

struct Store {
    Expr address;
    Expr value;
    friend bool operator==(const Store&, const Store&) = default;
};

using Stmt = std::variant<Assign, NondetAssign, Store>;

/// Non-zero condition goes to `then_target`.
struct Jump {
    Expr cond;
    Addr then_target;
    Addr else_target;
    friend bool operator==(const Jump&, const Jump&) = default;
};

struct IJump {
    Expr target;
    friend bool operator==(const IJump&, const IJump&) = default;
};

struct Exit {
    friend bool operator==(const Exit&, const Exit&) = default;
};

using Terminator = std::variant<Jump, IJump, Exit>;

struct Block {
    std::vector<Stmt> stmts;
    Terminator terminator{Exit{}};
    friend bool operator==(const Block&, const Block&) = default;
};

class ProgramError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A program is an entry address plus an address -> block mapping. The
/// constructor checks that the entry and every static jump target exist.
class Program {
  public:
    Program(Addr entry, std::map<Addr, Block> blocks);

    [[nodiscard]] Addr entry() const { return entry_; }
    [[nodiscard]] const std::map<Addr, Block>& blocks() const { return blocks_; }
    [[nodiscard]] const Block& block(Addr a) const;
    [[nodiscard]] bool has_block(Addr a) const { return blocks_.contains(a); }

    /// Every variable named anywhere in the program.
    [[nodiscard]] std::set<std::string> variables() const;

    friend bool operator==(const Program&, const Program&) = default;

  private:
    Addr entry_;
    std::map<Addr, Block> blocks_;
};

void collect_vars(const Stmt& s, std::set<std::string>& out);

} // namespace jumprl
