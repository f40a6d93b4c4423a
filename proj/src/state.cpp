#include "jumprl/state.hpp"

#include <charconv>
#include <sstream>

namespace jumprl {

Word Memory::read(Addr a) const {
    auto it = cells_.find(a);
    return it == cells_.end() ? Word{0} : it->second;
}

Memory Memory::write(Addr a, Word w) const {
    Memory copy = *this;
    copy.write_in_place(a, w);
    return copy;
}

void Memory::write_in_place(Addr a, Word w) {
    if (w.value() == 0) {
        cells_.erase(a);
    } else {
        cells_[a] = w;
    }
}

Word State::var(std::string_view name) const {
    auto it = vars.find(name);
    if (it == vars.end()) {
        throw UnboundVariable(name);
    }
    return it->second;
}

void State::bind(std::string_view name, Word w) {
    auto it = vars.find(name);
    if (it == vars.end()) {
        vars.emplace(std::string(name), w);
    } else {
        it->second = w;
    }
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n')) {
        s.remove_suffix(1);
    }
    return s;
}

std::int64_t parse_int(std::string_view s) {
    s = trim(s);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::invalid_argument("bad integer '" + std::string(s) + "'");
    }
    return v;
}

} // namespace

State parse_state(std::string_view text) {
    State st;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto next = text.find_first_of(",;", pos);
        if (next == std::string_view::npos) {
            next = text.size();
        }
        auto item = trim(text.substr(pos, next - pos));
        pos = next + 1;
        if (item.empty()) {
            continue;
        }
        auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("expected name=value, got '" + std::string(item) + "'");
        }
        auto lhs = trim(item.substr(0, eq));
        auto value = Word{parse_int(item.substr(eq + 1))};
        if (!lhs.empty() && lhs.front() == '[') {
            if (lhs.back() != ']') {
                throw std::invalid_argument("unterminated cell '" + std::string(lhs) + "'");
            }
            st.mem.write_in_place(Word{parse_int(lhs.substr(1, lhs.size() - 2))}, value);
        } else {
            if (lhs.empty()) {
                throw std::invalid_argument("empty variable name in '" + std::string(item) + "'");
            }
            st.bind(lhs, value);
        }
    }
    return st;
}

std::string to_string(const State& s) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [name, w] : s.vars) {
        out << (first ? "" : ",") << name << '=' << w.value();
        first = false;
    }
    for (const auto& [a, w] : s.mem.cells()) {
        out << (first ? "" : ",") << '[' << a.value() << "]=" << w.value();
        first = false;
    }
    return out.str();
}

} // namespace jumprl
