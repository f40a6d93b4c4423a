#include "jumprl/word.hpp"

#include <charconv>
#include <limits>

namespace jumprl {

Width::Width(unsigned bits) : bits_(bits) {
    if (bits == 0 || bits > 64) {
        throw std::invalid_argument("word width must be in 1..64, got " + std::to_string(bits));
    }
}

Word Width::wrap(std::uint64_t raw) const {
    if (bits_ == 64) {
        return Word{static_cast<std::int64_t>(raw)};
    }
    const std::uint64_t mask = (std::uint64_t{1} << bits_) - 1;
    std::uint64_t v = raw & mask;
    const std::uint64_t sign = std::uint64_t{1} << (bits_ - 1);
    if (v & sign) {
        v |= ~mask;
    }
    return Word{static_cast<std::int64_t>(v)};
}

std::int64_t Width::min_value() const {
    if (bits_ == 64) {
        return std::numeric_limits<std::int64_t>::min();
    }
    return -(std::int64_t{1} << (bits_ - 1));
}

std::int64_t Width::max_value() const {
    if (bits_ == 64) {
        return std::numeric_limits<std::int64_t>::max();
    }
    return (std::int64_t{1} << (bits_ - 1)) - 1;
}

std::vector<Word> Domain::values() const {
    std::vector<Word> out;
    out.reserve(size());
    for (std::int64_t v = lo; v < hi; ++v) {
        out.emplace_back(v);
    }
    return out;
}

Domain parse_domain(std::string_view text) {
    const auto sep = text.find("..");
    if (sep == std::string_view::npos) {
        throw std::invalid_argument("domain must look like lo..hi, got '" + std::string(text) + "'");
    }
    auto parse_int = [&](std::string_view part) {
        std::int64_t v = 0;
        const auto* first = part.data();
        const auto* last = part.data() + part.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last) {
            throw std::invalid_argument("bad domain bound '" + std::string(part) + "'");
        }
        return v;
    };
    Domain d{parse_int(text.substr(0, sep)), parse_int(text.substr(sep + 2))};
    if (d.hi <= d.lo) {
        throw std::invalid_argument("domain " + std::string(text) + " is empty");
    }
    return d;
}

std::string to_string(const Domain& d) { return std::to_string(d.lo) + ".." + std::to_string(d.hi); }

std::string_view symbol(BinaryOp op) {
    switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
    case BinaryOp::Sep: return "sep";
    case BinaryOp::Alias: return "alias";
    }
    return "?";
}

bool is_comparison(BinaryOp op) {
    switch (op) {
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Eq:
    case BinaryOp::Ne:
    case BinaryOp::Gt:
    case BinaryOp::Ge: return true;
    default: return false;
    }
}

bool is_arithmetic(BinaryOp op) {
    switch (op) {
    case BinaryOp::Add:
    case BinaryOp::Sub:
    case BinaryOp::Mul:
    case BinaryOp::Div:
    case BinaryOp::Mod: return true;
    default: return false;
    }
}

bool yields_truth(BinaryOp op) { return !is_arithmetic(op); }

bool is_symmetric(BinaryOp op) {
    switch (op) {
    case BinaryOp::Add:
    case BinaryOp::Mul:
    case BinaryOp::Eq:
    case BinaryOp::Ne:
    case BinaryOp::Sep:
    case BinaryOp::Alias: return true;
    default: return false;
    }
}

Word word_op(BinaryOp op, Word lhs, Word rhs, Width width) {
    const auto a = lhs.value();
    const auto b = rhs.value();
    const auto ua = static_cast<std::uint64_t>(a);
    const auto ub = static_cast<std::uint64_t>(b);
    switch (op) {
    case BinaryOp::Add: return width.wrap(ua + ub);
    case BinaryOp::Sub: return width.wrap(ua - ub);
    case BinaryOp::Mul: return width.wrap(ua * ub);
    case BinaryOp::Div:
        if (b == 0) {
            throw ArithmeticFault("division by zero");
        }
        // MIN / -1 overflows; the two's-complement result is MIN again.
        if (b == -1) {
            return width.wrap(std::uint64_t{0} - ua);
        }
        return width.wrap(a / b);
    case BinaryOp::Mod:
        if (b == 0) {
            throw ArithmeticFault("modulo by zero");
        }
        if (b == -1) {
            return Word{0};
        }
        return width.wrap(a % b);
    case BinaryOp::Lt: return Word::from_bool(a < b);
    case BinaryOp::Le: return Word::from_bool(a <= b);
    case BinaryOp::Eq: return Word::from_bool(a == b);
    case BinaryOp::Ne: return Word::from_bool(a != b);
    case BinaryOp::Gt: return Word::from_bool(a > b);
    case BinaryOp::Ge: return Word::from_bool(a >= b);
    case BinaryOp::And: return Word::from_bool(a != 0 && b != 0);
    case BinaryOp::Or: return Word::from_bool(a != 0 || b != 0);
    case BinaryOp::Sep: return Word::from_bool(a != b);
    case BinaryOp::Alias: return Word::from_bool(a == b);
    }
    throw std::logic_error("unknown operator");
}

} // namespace jumprl
