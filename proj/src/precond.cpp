#include "jumprl/precond.hpp"

#include <algorithm>
#include <stdexcept>

#include "jumprl/parser.hpp"
#include "jumprl/sat.hpp"

namespace jumprl {

namespace {

struct ExprCase {
    Expr expr;
    Expr constraint;
    std::vector<std::string> tags;
};

std::vector<std::string> join(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::string> out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::vector<ExprCase> cases_of(const Expr& address, const Expr& value, const Expr& e) {
    switch (e.kind()) {
    case ExprKind::Literal:
    case ExprKind::Var: return {{e, Expr::truth(), {}}};
    case ExprKind::Deref: {
        const Expr sep = Expr::binary(BinaryOp::Sep, address, e.operand());
        const Expr alias = Expr::binary(BinaryOp::Alias, address, e.operand());
        return {{e, sep, {to_string(sep)}}, {value, alias, {to_string(alias)}}};
    }
    case ExprKind::Not: {
        auto inner = cases_of(address, value, e.operand());
        for (auto& c : inner) {
            c.expr = Expr::negate(c.expr);
        }
        return inner;
    }
    case ExprKind::Binary: {
        const auto ls = cases_of(address, value, e.lhs());
        const auto rs = cases_of(address, value, e.rhs());
        std::vector<ExprCase> out;
        out.reserve(ls.size() * rs.size());
        for (const auto& l : ls) {
            for (const auto& r : rs) {
                out.push_back({Expr::binary(e.op(), l.expr, r.expr), conjoin(l.constraint, r.constraint),
                               join(l.tags, r.tags)});
            }
        }
        return out;
    }
    }
    return {};
}

void dedup_into(std::vector<Derived>& out, Derived d) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const Derived& x) { return x.pred == d.pred; });
    if (!seen) {
        out.push_back(std::move(d));
    }
}

} // namespace

std::vector<CasePredicate> pre_store(const Expr& address, const Expr& value, const Predicate& q) {
    // Binder bounds first (in prefix order), then the matrix.
    std::vector<std::vector<ExprCase>> parts;
    for (const auto& b : q.prefix()) {
        parts.push_back(cases_of(address, value, b.bound));
    }
    parts.push_back(cases_of(address, value, q.matrix()));

    std::vector<std::vector<Expr>> picks{{}};
    std::vector<Expr> constraints{Expr::truth()};
    std::vector<std::vector<std::string>> tags{{}};
    for (const auto& options : parts) {
        std::vector<std::vector<Expr>> next_picks;
        std::vector<Expr> next_constraints;
        std::vector<std::vector<std::string>> next_tags;
        for (std::size_t i = 0; i < picks.size(); ++i) {
            for (const auto& o : options) {
                auto p = picks[i];
                p.push_back(o.expr);
                next_picks.push_back(std::move(p));
                next_constraints.push_back(conjoin(constraints[i], o.constraint));
                next_tags.push_back(join(tags[i], o.tags));
            }
        }
        picks = std::move(next_picks);
        constraints = std::move(next_constraints);
        tags = std::move(next_tags);
    }

    std::vector<CasePredicate> out;
    out.reserve(picks.size());
    for (std::size_t i = 0; i < picks.size(); ++i) {
        std::vector<Quantifier> prefix = q.prefix();
        for (std::size_t k = 0; k < prefix.size(); ++k) {
            prefix[k].bound = picks[i][k];
        }
        out.push_back({Predicate(std::move(prefix), picks[i].back()), constraints[i], tags[i]});
    }
    return out;
}

std::vector<Derived> tau_stmt_cases(const Stmt& s, const Derived& q, NameSupply& names, Width width) {
    std::vector<Derived> out;
    if (const auto* a = std::get_if<Assign>(&s)) {
        out.push_back({simplify(subst(q.pred, a->var, a->value), width), q.tags});
    } else if (const auto* nd = std::get_if<NondetAssign>(&s)) {
        out.push_back({simplify(fresh_exists(nd->cond, q.pred, nd->var, names), width), q.tags});
    } else {
        const auto& st = std::get<Store>(s);
        for (auto& c : pre_store(st.address, st.value, q.pred)) {
            // The constraint may mention bound names, so it goes inside the prefix.
            dedup_into(out, {simplify(conjoin(c.pred, c.constraint), width), join(q.tags, c.tags)});
        }
    }
    return out;
}

std::vector<Predicate> tau_stmt(const Stmt& s, const Predicate& q, NameSupply& names, Width width) {
    std::vector<Predicate> out;
    for (auto& d : tau_stmt_cases(s, {q, {}}, names, width)) {
        out.push_back(std::move(d.pred));
    }
    return out;
}

std::string_view to_string(EdgeKind k) {
    switch (k) {
    case EdgeKind::Then: return "then";
    case EdgeKind::Else: return "else";
    case EdgeKind::Indirect: return "ijump";
    case EdgeKind::Exit: return "exit";
    }
    return "?";
}

Predicate tau_edge(const Terminator& t, EdgeKind kind, Addr target, const Predicate& q) {
    if (const auto* j = std::get_if<Jump>(&t)) {
        if (kind == EdgeKind::Then && target == j->then_target) {
            return conjoin(q, j->cond);
        }
        if (kind == EdgeKind::Else && target == j->else_target) {
            return conjoin(q, Expr::negate(j->cond));
        }
    } else if (const auto* ij = std::get_if<IJump>(&t)) {
        if (kind == EdgeKind::Indirect) {
            return conjoin(q, Expr::binary(BinaryOp::Eq, ij->target, Expr::literal(target)));
        }
    }
    throw std::invalid_argument("terminator '" + to_string(t) + "' has no " + std::string(to_string(kind)) +
                                " edge to " + std::to_string(target.value()));
}

BlockTrace tau_block_traced(const std::vector<Stmt>& stmts, const Derived& q, NameSupply& names, Width width) {
    BlockTrace trace;
    trace.levels.push_back({{q, 0}});
    for (auto it = stmts.rbegin(); it != stmts.rend(); ++it) {
        const auto& prev = trace.levels.back();
        std::vector<BlockStep> level;
        std::vector<Derived> seen;
        for (std::size_t i = 0; i < prev.size(); ++i) {
            for (auto& d : tau_stmt_cases(*it, prev[i].value, names, width)) {
                const auto before = seen.size();
                dedup_into(seen, d);
                if (seen.size() != before) {
                    level.push_back({std::move(d), i});
                }
            }
        }
        trace.levels.push_back(std::move(level));
    }
    return trace;
}

std::vector<Predicate> tau_block_stmts(const std::vector<Stmt>& stmts, const Predicate& q, NameSupply& names,
                                       Width width) {
    BlockTrace trace = tau_block_traced(stmts, {simplify(q, width), {}}, names, width);
    std::vector<Predicate> out;
    for (const auto& step : trace.result()) {
        out.push_back(step.value.pred);
    }
    return out;
}

} // namespace jumprl
