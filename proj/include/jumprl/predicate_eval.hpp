#pragma once

#include <utility>
#include <vector>

#include "jumprl/eval.hpp"
#include "jumprl/predicate.hpp"

namespace jumprl {

/// Layers quantifier bindings over a base environment.
template <typename Env>
class BoundEnv {
  public:
    explicit BoundEnv(Env& base) : base_(base) {}

    Word variable(const std::string& name) {
        for (auto it = bound_.rbegin(); it != bound_.rend(); ++it) {
            if (*it->first == name) {
                return it->second;
            }
        }
        return base_.variable(name);
    }
    Word load(Word a) { return base_.load(a); }

    void push(const std::string& name, Word w) { bound_.emplace_back(&name, w); }
    void pop() { bound_.pop_back(); }

  private:
    Env& base_;
    std::vector<std::pair<const std::string*, Word>> bound_;
};

namespace detail {

template <typename Env>
bool holds_from(const Predicate& p, std::size_t level, BoundEnv<Env>& env, const Domain& witnesses, Width width,
                HoldsReport* report) {
    if (level == p.prefix().size()) {
        try {
            return evaluate(p.matrix(), env, width).truthy();
        } catch (const ArithmeticFault&) {
        } catch (const UnboundVariable&) {
        }
        if (report) {
            report->faulted = true;
        }
        return false;
    }
    const auto& q = p.prefix()[level];
    for (std::int64_t v = witnesses.lo; v < witnesses.hi; ++v) {
        env.push(q.var, width.wrap(v));
        bool bound_ok = false;
        try {
            bound_ok = evaluate(q.bound, env, width).truthy();
        } catch (const ArithmeticFault&) {
            if (report) {
                ++report->faulting_witnesses;
            }
        } catch (const UnboundVariable&) {
            if (report) {
                ++report->faulting_witnesses;
            }
        }
        const bool found = bound_ok && holds_from(p, level + 1, env, witnesses, width, report);
        env.pop();
        if (found) {
            return true;
        }
    }
    return false;
}

} // namespace detail

/// Bounded truth of `p` over an arbitrary environment. Exceptions other than
/// evaluation faults propagate (lazy model enumeration relies on this).
template <typename Env>
bool holds_in(const Predicate& p, Env& base, const Domain& witnesses, Width width, HoldsReport* report = nullptr) {
    BoundEnv<Env> env(base);
    return detail::holds_from(p, 0, env, witnesses, width, report);
}

} // namespace jumprl
