#include <algorithm>

#include "jumprl/harness.hpp"

namespace jumprl {

std::size_t StateSpace::size() const {
    std::size_t n = 1;
    for (const auto& [name, d] : vars) {
        n *= d.size();
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        n *= cell_values.size();
    }
    return n;
}

namespace {

void enumerate(const StateSpace& space, std::map<std::string, Domain>::const_iterator it, std::size_t cell,
               State& s, const std::function<void(const State&)>& visit) {
    if (it != space.vars.end()) {
        for (std::int64_t v = it->second.lo; v < it->second.hi; ++v) {
            s.bind(it->first, Word{v});
            enumerate(space, std::next(it), cell, s, visit);
        }
        return;
    }
    if (cell < space.cells.size()) {
        for (std::int64_t v = space.cell_values.lo; v < space.cell_values.hi; ++v) {
            s.mem.write_in_place(space.cells[cell], Word{v});
            enumerate(space, it, cell + 1, s, visit);
        }
        s.mem.write_in_place(space.cells[cell], Word{0});
        return;
    }
    visit(s);
}

std::vector<Addr> successors(const Program& p, const Block& b) {
    if (const auto* j = std::get_if<Jump>(&b.terminator)) {
        return {j->then_target, j->else_target};
    }
    if (std::holds_alternative<IJump>(b.terminator)) {
        std::vector<Addr> all;
        for (const auto& [a, _] : p.blocks()) {
            all.push_back(a);
        }
        return all;
    }
    return {};
}

std::set<std::string> vars_of(const Expr& e) {
    std::set<std::string> out;
    collect_vars(e, out);
    return out;
}

// Reads and the optional assigned variable of a statement.
std::pair<std::set<std::string>, std::optional<std::string>> stmt_effect(const Stmt& s) {
    return std::visit(
        [](const auto& st) -> std::pair<std::set<std::string>, std::optional<std::string>> {
            using T = std::decay_t<decltype(st)>;
            if constexpr (std::is_same_v<T, Assign>) {
                return {vars_of(st.value), st.var};
            } else if constexpr (std::is_same_v<T, NondetAssign>) {
                auto r = vars_of(st.cond);
                r.erase(st.var);
                return {r, st.var};
            } else {
                auto r = vars_of(st.address);
                collect_vars(st.value, r);
                return {r, std::nullopt};
            }
        },
        s);
}

std::set<std::string> terminator_reads(const Terminator& t) {
    if (const auto* j = std::get_if<Jump>(&t)) {
        return vars_of(j->cond);
    }
    if (const auto* ij = std::get_if<IJump>(&t)) {
        return vars_of(ij->target);
    }
    return {};
}

} // namespace

void for_each_state(const StateSpace& space, const std::function<void(const State&)>& visit) {
    State s;
    enumerate(space, space.vars.begin(), 0, s, visit);
}

std::set<std::string> input_variables(const Program& p, const Predicate& q) {
    std::set<std::string> universe = p.variables();
    const auto qv = free_vars(q);
    universe.insert(qv.begin(), qv.end());

    // Definitely-assigned sets on block entry, greatest fixpoint.
    std::map<Addr, std::set<std::string>> in;
    for (const auto& [a, _] : p.blocks()) {
        in[a] = a == p.entry() ? std::set<std::string>{} : universe;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [a, b] : p.blocks()) {
            std::set<std::string> out = in[a];
            for (const auto& s : b.stmts) {
                if (auto v = stmt_effect(s).second) {
                    out.insert(*v);
                }
            }
            for (Addr succ : successors(p, b)) {
                if (!p.has_block(succ)) {
                    continue;
                }
                std::set<std::string> meet;
                std::set_intersection(in[succ].begin(), in[succ].end(), out.begin(), out.end(),
                                      std::inserter(meet, meet.begin()));
                if (meet != in[succ]) {
                    in[succ] = std::move(meet);
                    changed = true;
                }
            }
        }
    }

    std::set<std::string> inputs;
    auto read = [&](const std::set<std::string>& vs, const std::set<std::string>& assigned) {
        for (const auto& v : vs) {
            if (!assigned.contains(v)) {
                inputs.insert(v);
            }
        }
    };
    for (const auto& [a, b] : p.blocks()) {
        std::set<std::string> da = in[a];
        for (const auto& s : b.stmts) {
            auto [reads, assigned] = stmt_effect(s);
            read(reads, da);
            if (assigned) {
                da.insert(*assigned);
            }
        }
        read(terminator_reads(b.terminator), da);
        if (std::holds_alternative<Exit>(b.terminator)) {
            read(qv, da);
        }
    }
    return inputs;
}

OracleReport oracle_exploit_set(const Program& p, const Predicate& q, const StateSpace& space, std::size_t fuel,
                                Width width, std::size_t run_budget) {
    OracleReport r;
    for_each_state(space, [&](const State& s0) {
        if (r.exhausted) {
            return;
        }
        ++r.states;
        std::optional<std::size_t> best;
        bool stuck = false;
        std::size_t runs = 0;
        for_each_run(p, s0, fuel, space.choices, width, [&](const Outcome& o) {
            if (run_budget && ++runs > run_budget) {
                r.exhausted = true;
                return false;
            }
            if (const auto* e = std::get_if<Exited>(&o)) {
                if (holds(q, e->state, space.choices, width) && (!best || e->trace.size() < *best)) {
                    best = e->trace.size();
                }
            } else if (std::holds_alternative<OutOfFuel>(o)) {
                stuck = true;
            }
            return true;
        });
        if (best) {
            r.exploits.emplace(s0, *best);
        }
        if (stuck) {
            ++r.nonterminating;
            r.stuck.insert(s0);
        }
    });
    return r;
}

std::set<State> witness_model_union(const std::vector<Witness>& ws, const StateSpace& space, Width width) {
    std::set<State> out;
    for_each_state(space, [&](const State& s) {
        for (const auto& w : ws) {
            if (holds(w.precondition, s, space.choices, width)) {
                out.insert(s);
                return;
            }
        }
    });
    return out;
}

} // namespace jumprl
