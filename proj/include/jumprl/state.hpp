#pragma once

#include <compare>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "jumprl/word.hpp"

namespace jumprl {

/// Flat word-addressed memory. Unwritten cells read as 0. Cells holding the
/// default are not stored, so equal memories compare equal.
class Memory {
  public:
    Memory() = default;

    [[nodiscard]] Word read(Addr a) const;
    [[nodiscard]] Memory write(Addr a, Word w) const;
    void write_in_place(Addr a, Word w);

    [[nodiscard]] const std::map<Addr, Word>& cells() const { return cells_; }

    friend auto operator<=>(const Memory&, const Memory&) = default;
    friend bool operator==(const Memory&, const Memory&) = default;

  private:
    std::map<Addr, Word> cells_;
};

inline Word mem_read(Addr a, const Memory& m) { return m.read(a); }
inline Memory mem_write(Addr a, Word w, const Memory& m) { return m.write(a, w); }

using VarMap = std::map<std::string, Word, std::less<>>;

class UnboundVariable : public std::runtime_error {
  public:
    explicit UnboundVariable(std::string_view name)
        : std::runtime_error("unbound variable '" + std::string(name) + "'"), name_(name) {}
    [[nodiscard]] const std::string& name() const { return name_; }

  private:
    std::string name_;
};

struct State {
    Memory mem;
    VarMap vars;

    /// Throws UnboundVariable.
    [[nodiscard]] Word var(std::string_view name) const;
    void bind(std::string_view name, Word w);

    friend auto operator<=>(const State&, const State&) = default;
    friend bool operator==(const State&, const State&) = default;
};

/// `x=4,y=1,[7]=42` (`;` also accepted as a separator).
State parse_state(std::string_view text);
std::string to_string(const State& s);

} // namespace jumprl
