#include "jumprl/interpreter.hpp"

#include <sstream>

#include "jumprl/eval.hpp"

namespace jumprl {

std::string_view to_string(FaultKind k) {
    switch (k) {
    case FaultKind::DivZero: return "div-zero";
    case FaultKind::Unbound: return "unbound-variable";
    case FaultKind::BadIJumpTarget: return "bad-ijump-target";
    case FaultKind::NoChoice: return "no-choice";
    }
    return "?";
}

ChoiceOracle ChoiceOracle::seeded(std::uint64_t seed, Domain domain) {
    ChoiceOracle o(Strategy::Seeded, domain);
    o.rng_.seed(seed);
    return o;
}

ChoiceOracle ChoiceOracle::scripted(std::vector<Word> values) {
    ChoiceOracle o(Strategy::Scripted, Domain{});
    o.script_ = std::move(values);
    return o;
}

ChoiceOracle ChoiceOracle::exhaustive(Domain domain) { return ChoiceOracle(Strategy::Exhaustive, domain); }

std::optional<Word> ChoiceOracle::choose(const std::function<bool(Word)>& ok) {
    switch (strategy_) {
    case Strategy::Scripted: {
        if (next_ >= script_.size()) {
            return std::nullopt;
        }
        const Word w = script_[next_++];
        return ok(w) ? std::optional<Word>(w) : std::nullopt;
    }
    case Strategy::Exhaustive:
        for (std::int64_t v = domain_.lo; v < domain_.hi; ++v) {
            if (ok(Word{v})) {
                return Word{v};
            }
        }
        return std::nullopt;
    case Strategy::Seeded: {
        std::vector<Word> good;
        for (std::int64_t v = domain_.lo; v < domain_.hi; ++v) {
            if (ok(Word{v})) {
                good.push_back(Word{v});
            }
        }
        if (good.empty()) {
            return std::nullopt;
        }
        std::uniform_int_distribution<std::size_t> pick(0, good.size() - 1);
        return good[pick(rng_)];
    }
    }
    return std::nullopt;
}

namespace {

/// State environment with one variable overridden.
struct OverrideEnv {
    const State& state;
    const std::string& name;
    Word value;
    Word variable(const std::string& n) const { return n == name ? value : state.var(n); }
    Word load(Word a) const { return state.mem.read(a); }
};

} // namespace

bool nd_accepts(const State& s, const NondetAssign& nd, Word candidate, Width width) {
    OverrideEnv env{s, nd.var, width.wrap(candidate.value())};
    try {
        return evaluate(nd.cond, env, width).truthy();
    } catch (const ArithmeticFault&) {
        return false;
    } catch (const UnboundVariable&) {
        return false;
    }
}

std::vector<Word> nd_candidates(const State& s, const NondetAssign& nd, const Domain& domain, Width width) {
    std::vector<Word> out;
    for (std::int64_t v = domain.lo; v < domain.hi; ++v) {
        const Word w = width.wrap(v);
        if (nd_accepts(s, nd, w, width)) {
            out.push_back(w);
        }
    }
    return out;
}

namespace {

// Assign or Store.
void step_deterministic(State& s, const Stmt& stmt, Width width) {
    if (const auto* a = std::get_if<Assign>(&stmt)) {
        s.bind(a->var, eval_expr(s, a->value, width));
    } else {
        const auto& st = std::get<Store>(stmt);
        const Word addr = eval_expr(s, st.address, width);
        s.mem.write_in_place(addr, eval_expr(s, st.value, width));
    }
}

} // namespace

void step_stmt(State& s, const Stmt& stmt, ChoiceOracle& oracle, Width width) {
    if (const auto* nd = std::get_if<NondetAssign>(&stmt)) {
        auto w = oracle.choose([&](Word c) { return nd_accepts(s, *nd, c, width); });
        if (!w) {
            throw NoChoice("no acceptable value for '" + nd->var + "'");
        }
        s.bind(nd->var, width.wrap(w->value()));
        return;
    }
    step_deterministic(s, stmt, width);
}

namespace {

Faulted fault_from_current(Addr at) {
    try {
        throw;
    } catch (const ArithmeticFault& e) {
        return {FaultKind::DivZero, at, e.what()};
    } catch (const UnboundVariable& e) {
        return {FaultKind::Unbound, at, e.what()};
    } catch (const NoChoice& e) {
        return {FaultKind::NoChoice, at, e.what()};
    }
}

/// Successor of a block given its terminator, or nullopt for Exit.
/// Throws Faulted for a bad indirect target.
std::optional<Addr> successor(const Program& p, const Block& b, const State& s, Width width, Addr at) {
    if (const auto* j = std::get_if<Jump>(&b.terminator)) {
        return eval_expr(s, j->cond, width).truthy() ? j->then_target : j->else_target;
    }
    if (const auto* ij = std::get_if<IJump>(&b.terminator)) {
        const Word t = eval_expr(s, ij->target, width);
        if (!p.has_block(t)) {
            throw Faulted{FaultKind::BadIJumpTarget, at, "no block at " + std::to_string(t.value())};
        }
        return t;
    }
    return std::nullopt;
}

} // namespace

Outcome run(const Program& p, State s, ChoiceOracle& oracle, std::size_t fuel, Width width) {
    Trace trace;
    Addr at = p.entry();
    while (true) {
        if (fuel == 0) {
            return OutOfFuel{std::move(trace)};
        }
        --fuel;
        trace.push_back(at);
        const Block& b = p.block(at);
        try {
            for (const auto& stmt : b.stmts) {
                step_stmt(s, stmt, oracle, width);
            }
            auto next = successor(p, b, s, width, at);
            if (!next) {
                return Exited{std::move(s), std::move(trace)};
            }
            at = *next;
        } catch (const Faulted& f) {
            return f;
        } catch (const ArithmeticFault&) {
            return fault_from_current(at);
        } catch (const UnboundVariable&) {
            return fault_from_current(at);
        } catch (const NoChoice&) {
            return fault_from_current(at);
        }
    }
}

namespace {

class RunExplorer {
  public:
    RunExplorer(const Program& p, std::size_t fuel, const Domain& domain, Width width,
                const std::function<bool(const Outcome&)>& visit)
        : p_(p), domain_(domain), width_(width), visit_(visit), fuel_(fuel) {}

    void enter(State s, Addr at, std::size_t used) {
        if (stop_) {
            return;
        }
        if (used == fuel_) {
            emit(OutOfFuel{trace_});
            return;
        }
        trace_.push_back(at);
        from(std::move(s), at, 0, used + 1);
        trace_.pop_back();
    }

  private:
    const Program& p_;
    const Domain& domain_;
    Width width_;
    const std::function<bool(const Outcome&)>& visit_;
    std::size_t fuel_;
    Trace trace_;
    bool stop_{false};

    void emit(const Outcome& o) {
        if (!visit_(o)) {
            stop_ = true;
        }
    }

    void from(State s, Addr at, std::size_t idx, std::size_t used) {
        const Block& b = p_.block(at);
        try {
            for (; idx < b.stmts.size(); ++idx) {
                if (const auto* nd = std::get_if<NondetAssign>(&b.stmts[idx])) {
                    const auto choices = nd_candidates(s, *nd, domain_, width_);
                    if (choices.empty()) {
                        emit(Faulted{FaultKind::NoChoice, at, "no acceptable value for '" + nd->var + "'"});
                        return;
                    }
                    for (const Word w : choices) {
                        if (stop_) {
                            return;
                        }
                        State branch = s;
                        branch.bind(nd->var, w);
                        from(std::move(branch), at, idx + 1, used);
                    }
                    return;
                }
                step_deterministic(s, b.stmts[idx], width_);
            }
            auto next = successor(p_, b, s, width_, at);
            if (!next) {
                emit(Exited{std::move(s), trace_});
                return;
            }
            enter(std::move(s), *next, used);
        } catch (const Faulted& f) {
            emit(f);
        } catch (const ArithmeticFault&) {
            emit(fault_from_current(at));
        } catch (const UnboundVariable&) {
            emit(fault_from_current(at));
        }
    }
};

} // namespace

void for_each_run(const Program& p, const State& s0, std::size_t fuel, const Domain& nd_domain, Width width,
                  const std::function<bool(const Outcome&)>& visit) {
    RunExplorer ex(p, fuel, nd_domain, width, visit);
    ex.enter(s0, p.entry(), 0);
}

RunSet enumerate_runs(const Program& p, const State& s0, std::size_t fuel, const Domain& nd_domain, Width width) {
    RunSet out;
    for_each_run(p, s0, fuel, nd_domain, width, [&](const Outcome& o) {
        if (const auto* e = std::get_if<Exited>(&o)) {
            out.exited.insert(*e);
        } else if (std::holds_alternative<Faulted>(o)) {
            ++out.faulted;
        } else {
            ++out.out_of_fuel;
        }
        return true;
    });
    return out;
}

bool reaches(const Program& p, const State& s0, const Predicate& q, std::size_t fuel, const Domain& domain,
             Width width, Trace* trace_out) {
    bool found = false;
    for_each_run(p, s0, fuel, domain, width, [&](const Outcome& o) {
        const auto* e = std::get_if<Exited>(&o);
        if (e && holds(q, e->state, domain, width)) {
            found = true;
            if (trace_out) {
                *trace_out = e->trace;
            }
            return false;
        }
        return true;
    });
    return found;
}

std::string to_string(const Trace& t) {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < t.size(); ++i) {
        out << (i ? "," : "") << t[i].value();
    }
    out << ']';
    return out.str();
}

} // namespace jumprl
