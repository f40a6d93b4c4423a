#include "jumprl/predicate.hpp"

#include <charconv>
#include <sstream>

#include "jumprl/predicate_eval.hpp"

namespace jumprl {

Predicate Predicate::exists(std::string var, Expr bound, Predicate body) {
    std::vector<Quantifier> prefix;
    prefix.reserve(body.prefix_.size() + 1);
    prefix.push_back({std::move(var), std::move(bound)});
    for (auto& q : body.prefix_) {
        prefix.push_back(std::move(q));
    }
    return Predicate(std::move(prefix), std::move(body.matrix_));
}

State Model::to_state() const {
    State s;
    s.vars = vars;
    for (const auto& [a, w] : cells) {
        s.mem.write_in_place(a, w);
    }
    return s;
}

std::string to_string(const Model& m) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [name, w] : m.vars) {
        out << (first ? "" : ";") << name << '=' << w.value();
        first = false;
    }
    for (const auto& [a, w] : m.cells) {
        out << (first ? "" : ";") << '[' << a.value() << "]=" << w.value();
        first = false;
    }
    return out.str();
}

std::string NameSupply::fresh() { return "$" + std::to_string(next_++); }

NameSupply NameSupply::above(const std::set<std::string>& names) {
    std::size_t max = 0;
    for (const auto& n : names) {
        if (n.size() < 2 || n[0] != '$') {
            continue;
        }
        std::size_t k = 0;
        auto [ptr, ec] = std::from_chars(n.data() + 1, n.data() + n.size(), k);
        if (ec == std::errc{} && ptr == n.data() + n.size()) {
            max = std::max(max, k);
        }
    }
    return NameSupply(max + 1);
}

Predicate conjoin(const Predicate& p, const Expr& e) {
    return Predicate(p.prefix(), conjoin(p.matrix(), e));
}

Predicate conjoin(const Predicate& p, const Predicate& q) {
    auto prefix = p.prefix();
    prefix.insert(prefix.end(), q.prefix().begin(), q.prefix().end());
    return Predicate(std::move(prefix), conjoin(p.matrix(), q.matrix()));
}

Predicate subst(const Predicate& p, std::string_view v, const Expr& e) {
    std::vector<Quantifier> prefix = p.prefix();
    for (auto& q : prefix) {
        if (q.var == v) {
            // Shadowed from here on.
            return Predicate(std::move(prefix), p.matrix());
        }
        q.bound = substitute(q.bound, v, e);
    }
    return Predicate(std::move(prefix), substitute(p.matrix(), v, e));
}

Predicate fresh_exists(const Expr& bound, const Predicate& q, std::string_view v, NameSupply& names) {
    auto name = names.fresh();
    const auto bound_var = Expr::var(name);
    return Predicate::exists(name, substitute(bound, v, bound_var), subst(q, v, bound_var));
}

std::set<std::string> free_vars(const Predicate& p) {
    std::set<std::string> out;
    std::set<std::string> binders;
    auto add_free = [&](const Expr& e) {
        std::set<std::string> vars;
        collect_vars(e, vars);
        for (const auto& v : vars) {
            if (!binders.contains(v)) {
                out.insert(v);
            }
        }
    };
    for (const auto& q : p.prefix()) {
        binders.insert(q.var);
        add_free(q.bound);
    }
    add_free(p.matrix());
    return out;
}

std::set<std::string> all_names(const Predicate& p) {
    std::set<std::string> out;
    for (const auto& q : p.prefix()) {
        out.insert(q.var);
        collect_vars(q.bound, out);
    }
    collect_vars(p.matrix(), out);
    return out;
}

Predicate alpha_rename(const Predicate& p, NameSupply& names) {
    std::vector<Quantifier> prefix = p.prefix();
    Expr matrix = p.matrix();
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        const std::string old = prefix[i].var;
        const auto fresh = Expr::var(names.fresh());
        prefix[i].var = fresh.name();
        prefix[i].bound = substitute(prefix[i].bound, old, fresh);
        bool shadowed = false;
        for (std::size_t j = i + 1; j < prefix.size(); ++j) {
            if (prefix[j].var == old) {
                shadowed = true;
                break;
            }
            prefix[j].bound = substitute(prefix[j].bound, old, fresh);
        }
        if (!shadowed) {
            matrix = substitute(matrix, old, fresh);
        }
    }
    return Predicate(std::move(prefix), std::move(matrix));
}

bool binders_unique(const std::vector<Predicate>& preds) {
    std::set<std::string> seen;
    for (const auto& p : preds) {
        for (const auto& q : p.prefix()) {
            if (!seen.insert(q.var).second) {
                return false;
            }
        }
    }
    return true;
}

namespace {

struct ModelEnv {
    const Model& model;
    Word variable(const std::string& name) const {
        auto it = model.vars.find(name);
        if (it == model.vars.end()) {
            throw UnboundVariable(name);
        }
        return it->second;
    }
    Word load(Word a) const {
        auto it = model.cells.find(a);
        return it == model.cells.end() ? Word{0} : it->second;
    }
};

} // namespace

bool holds(const Predicate& p, const Model& model, const Domain& witnesses, Width width, HoldsReport* report) {
    ModelEnv env{model};
    return holds_in(p, env, witnesses, width, report);
}

bool holds(const Predicate& p, const State& state, const Domain& witnesses, Width width, HoldsReport* report) {
    StateEnv env{state};
    return holds_in(p, env, witnesses, width, report);
}

} // namespace jumprl
