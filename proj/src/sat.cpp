#include "jumprl/sat.hpp"

#include "jumprl/predicate_eval.hpp"

namespace jumprl {

std::string_view to_string(VerdictKind k) {
    switch (k) {
    case VerdictKind::Unsat: return "unsat";
    case VerdictKind::Sat: return "sat";
    case VerdictKind::Unknown: return "unknown";
    }
    return "?";
}

namespace {

// Thrown by LazyEnv when evaluation reads something not yet assigned.
struct NeedVar {
    std::string name;
};
struct NeedCell {
    Word addr;
};

struct LazyEnv {
    const Model& m;
    Word variable(const std::string& name) const {
        auto it = m.vars.find(name);
        if (it == m.vars.end()) {
            throw NeedVar{name};
        }
        return it->second;
    }
    Word load(Word a) const {
        auto it = m.cells.find(a);
        if (it == m.cells.end()) {
            throw NeedCell{a};
        }
        return it->second;
    }
};

class Enumerator {
  public:
    Enumerator(const Predicate& p, const SatConfig& cfg) : p_(p), cfg_(cfg) {}

    // `leaf` returns false to stop. Returns false when stopped early.
    bool dfs(Model& m, const std::function<bool(const Model&)>& leaf) {
        if (evals_ >= cfg_.budget) {
            out_of_budget_ = true;
            return false;
        }
        ++evals_;
        LazyEnv env{m};
        try {
            if (holds_in(p_, env, cfg_.domain, cfg_.width)) {
                return leaf(m);
            }
            return true;
        } catch (const NeedVar& need) {
            for (std::int64_t v = cfg_.domain.lo; v < cfg_.domain.hi; ++v) {
                m.vars[need.name] = cfg_.width.wrap(v);
                if (!dfs(m, leaf)) {
                    m.vars.erase(need.name);
                    return false;
                }
            }
            m.vars.erase(need.name);
            return true;
        } catch (const NeedCell& need) {
            for (std::int64_t v = cfg_.domain.lo; v < cfg_.domain.hi; ++v) {
                m.cells[need.addr] = cfg_.width.wrap(v);
                if (!dfs(m, leaf)) {
                    m.cells.erase(need.addr);
                    return false;
                }
            }
            m.cells.erase(need.addr);
            return true;
        }
    }

    [[nodiscard]] bool out_of_budget() const { return out_of_budget_; }

  private:
    const Predicate& p_;
    const SatConfig& cfg_;
    std::size_t evals_{0};
    bool out_of_budget_{false};
};

Word default_value(const Domain& d) { return d.contains(Word{0}) || d.size() == 0 ? Word{0} : Word{d.lo}; }

// Bind free variables the model never needed.
void complete(Model& m, const Predicate& p, const Domain& d) {
    for (const auto& v : free_vars(p)) {
        if (!m.vars.contains(v)) {
            m.vars[v] = default_value(d);
        }
    }
}

} // namespace

bool for_each_model(const Predicate& p, const SatConfig& cfg, const std::function<void(const Model&)>& visit) {
    Enumerator en(p, cfg);
    Model m;
    en.dfs(m, [&](const Model& leaf) {
        visit(leaf);
        return true;
    });
    return !en.out_of_budget();
}

Verdict bounded_sat(const Predicate& p, const SatConfig& cfg) {
    Enumerator en(p, cfg);
    Model m;
    std::optional<Model> found;
    en.dfs(m, [&](const Model& leaf) {
        found = leaf;
        return false;
    });
    Verdict v;
    v.tier = 2;
    if (found) {
        complete(*found, p, cfg.domain);
        v.kind = VerdictKind::Sat;
        v.model = std::move(found);
    } else if (en.out_of_budget()) {
        v.kind = VerdictKind::Unknown;
        v.diagnostic = "enumeration budget exhausted";
    } else {
        v.kind = VerdictKind::Unsat;
    }
    return v;
}

Verdict check_sat(const Predicate& p, const SatConfig& cfg) {
    const Predicate s = simplify(p, cfg.width);
    if (s.is_false()) {
        return {VerdictKind::Unsat, std::nullopt, 1, {}};
    }
    Verdict v;
    v.diagnostic = "no decision";
    if (cfg.bounded) {
        v = bounded_sat(s, cfg);
        if (v.kind == VerdictKind::Sat) {
            complete(*v.model, p, cfg.domain);
            if (!holds(p, *v.model, cfg.domain, cfg.width)) {
                return {VerdictKind::Unknown, std::nullopt, 2, "model rejected by evaluation"};
            }
        }
        if (v.kind != VerdictKind::Unknown) {
            return v;
        }
    }
    if (cfg.solver) {
        Verdict sv = run_solver(*cfg.solver, emit_smtlib(s, cfg.width), cfg.width, cfg.solver_timeout);
        if (sv.kind == VerdictKind::Sat) {
            Model m = sv.model.value_or(Model{});
            complete(m, p, cfg.domain);
            if (!holds(p, m, cfg.domain, cfg.width)) {
                return {VerdictKind::Unknown, std::nullopt, 3, "solver model not confirmed by bounded evaluation"};
            }
            sv.model = std::move(m);
        }
        sv.tier = 3;
        return sv;
    }
    return v;
}

} // namespace jumprl
