#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jumprl {

/// A W-bit two's-complement value. The stored int64 is always the
/// sign-extended canonical form for the width it was produced under.
class Word {
  public:
    constexpr Word() = default;
    constexpr explicit Word(std::int64_t value) : value_(value) {}

    [[nodiscard]] constexpr std::int64_t value() const { return value_; }
    [[nodiscard]] constexpr bool truthy() const { return value_ != 0; }

    static constexpr Word from_bool(bool b) { return Word{b ? 1 : 0}; }

    friend constexpr auto operator<=>(const Word&, const Word&) = default;

  private:
    std::int64_t value_{0};
};

// Addresses are words; the cast is the identity on bit patterns.
using Addr = Word;

/// Run-wide word width (1..64 bits).
class Width {
  public:
    constexpr Width() = default;
    explicit Width(unsigned bits);

    [[nodiscard]] constexpr unsigned bits() const { return bits_; }

    /// Reduce a raw bit pattern modulo 2^W and sign-extend.
    [[nodiscard]] Word wrap(std::uint64_t raw) const;
    [[nodiscard]] Word wrap(std::int64_t v) const { return wrap(static_cast<std::uint64_t>(v)); }

    [[nodiscard]] std::int64_t min_value() const;
    [[nodiscard]] std::int64_t max_value() const;

    friend constexpr bool operator==(const Width&, const Width&) = default;

  private:
    unsigned bits_{64};
};

/// Half-open signed interval [lo, hi) of candidate values.
struct Domain {
    std::int64_t lo{-8};
    std::int64_t hi{8};

    [[nodiscard]] std::size_t size() const { return hi > lo ? static_cast<std::size_t>(hi - lo) : 0; }
    [[nodiscard]] bool contains(Word w) const { return w.value() >= lo && w.value() < hi; }
    [[nodiscard]] std::vector<Word> values() const;

    friend bool operator==(const Domain&, const Domain&) = default;
};

/// Parse `lo..hi` (half-open).
Domain parse_domain(std::string_view text);
std::string to_string(const Domain& d);

enum class BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Lt,
    Le,
    Eq,
    Ne,
    Gt,
    Ge,
    And,
    Or,
    Sep,
    Alias,
};

[[nodiscard]] std::string_view symbol(BinaryOp op);
[[nodiscard]] bool is_comparison(BinaryOp op);
[[nodiscard]] bool is_arithmetic(BinaryOp op);
/// True for operators whose result is always 0 or 1.
[[nodiscard]] bool yields_truth(BinaryOp op);
[[nodiscard]] bool is_symmetric(BinaryOp op);

class ArithmeticFault : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Apply a binary operator. `And`/`Or` here are strict; short-circuiting is
/// the evaluator's business. Throws ArithmeticFault on division/modulo by 0.
Word word_op(BinaryOp op, Word lhs, Word rhs, Width width = {});

/// Logical negation: 1 iff w is 0.
inline Word word_not(Word w) { return Word::from_bool(!w.truthy()); }

} // namespace jumprl
