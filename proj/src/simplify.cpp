#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "jumprl/sat.hpp"

namespace jumprl {

namespace {

// Top: only truthiness matters and a fault is as good as false (the matrix
// of a predicate, and conjuncts thereof). Bool: truthiness and faulting are
// both observable. Value: the exact word and faulting are observable.
enum class Ctx { Top, Bool, Value };

class Simplifier {
  public:
    explicit Simplifier(Width width) : w_(width) {}

    Expr run(const Expr& e, Ctx ctx) {
        switch (e.kind()) {
        case ExprKind::Literal: {
            const Word v = w_.wrap(e.value().value());
            if (ctx != Ctx::Value && v.truthy()) {
                return Expr::truth();
            }
            return v == e.value() ? e : Expr::literal(v);
        }
        case ExprKind::Var: return e;
        case ExprKind::Deref: return Expr::deref(run(e.operand(), Ctx::Value));
        case ExprKind::Not: return make_not(run(e.operand(), Ctx::Bool), ctx);
        case ExprKind::Binary: break;
        }
        const auto op = e.op();
        if (op == BinaryOp::And || op == BinaryOp::Or) {
            return junction(e, ctx);
        }
        if (op == BinaryOp::Add || op == BinaryOp::Sub || op == BinaryOp::Mul) {
            return linear(e);
        }
        Expr l = run(e.lhs(), Ctx::Value);
        Expr r = run(e.rhs(), Ctx::Value);
        if (is_comparison(op)) {
            return comparison(op, std::move(l), std::move(r), ctx);
        }
        if (op == BinaryOp::Sep || op == BinaryOp::Alias) {
            if (l.is_literal() && r.is_literal()) {
                return fold(op, l, r);
            }
            if (l == r && !l.can_fault()) {
                return Expr::literal(op == BinaryOp::Alias ? 1 : 0);
            }
            return Expr::binary(op, std::move(l), std::move(r));
        }
        // Div, Mod
        if (l.is_literal() && r.is_literal() && r.value().value() != 0) {
            return fold(op, l, r);
        }
        if (op == BinaryOp::Div && r.is_literal(1)) {
            return l;
        }
        return Expr::binary(op, std::move(l), std::move(r));
    }

  private:
    Width w_;

    Expr fold(BinaryOp op, const Expr& l, const Expr& r) const {
        return Expr::literal(word_op(op, l.value(), r.value(), w_));
    }

    // Value of a truth-tested operand as 0/1.
    static Expr as_bool(Expr e, Ctx ctx) {
        if (ctx != Ctx::Value || e.is_boolean()) {
            return e;
        }
        return Expr::negate(Expr::negate(std::move(e)));
    }

    Expr make_not(Expr o, Ctx ctx) const {
        if (o.is_literal()) {
            return Expr::literal(o.value().truthy() ? 0 : 1);
        }
        if (o.kind() == ExprKind::Not) {
            return as_bool(o.operand(), ctx);
        }
        return Expr::negate(std::move(o));
    }

    Expr comparison(BinaryOp op, Expr l, Expr r, Ctx ctx) {
        bool negated = false;
        switch (op) {
        case BinaryOp::Le:
            std::swap(l, r);
            op = BinaryOp::Lt;
            negated = true;
            break;
        case BinaryOp::Gt:
            std::swap(l, r);
            op = BinaryOp::Lt;
            break;
        case BinaryOp::Ge:
            op = BinaryOp::Lt;
            negated = true;
            break;
        case BinaryOp::Ne:
            op = BinaryOp::Eq;
            negated = true;
            break;
        default: break;
        }
        Expr core;
        if (l.is_literal() && r.is_literal()) {
            core = fold(op, l, r);
        } else if (l == r && !l.can_fault()) {
            core = Expr::literal(op == BinaryOp::Eq ? 1 : 0);
        } else {
            if (op == BinaryOp::Eq && l.is_literal()) {
                std::swap(l, r);
            }
            core = Expr::binary(op, std::move(l), std::move(r));
        }
        return negated ? make_not(std::move(core), ctx) : core;
    }

    static void flatten(const Expr& e, BinaryOp op, std::vector<Expr>& out) {
        if (e.is_binary(op)) {
            flatten(e.lhs(), op, out);
            flatten(e.rhs(), op, out);
        } else {
            out.push_back(e);
        }
    }

    Expr junction(const Expr& e, Ctx ctx) {
        const auto op = e.op();
        const bool conj = op == BinaryOp::And;
        std::vector<Expr> raw;
        flatten(e, op, raw);
        const Ctx sub = (conj && ctx == Ctx::Top) ? Ctx::Top : Ctx::Bool;
        std::vector<Expr> parts;
        for (const auto& r : raw) {
            flatten(run(r, sub), op, parts);
        }
        // The absorbing element: 0 for &&, non-zero for ||.
        auto absorbs = [&](const Expr& x) { return x.is_literal() && (conj ? !x.value().truthy() : x.value().truthy()); };
        auto neutral = [&](const Expr& x) { return x.is_literal() && !absorbs(x); };
        std::vector<Expr> kept;
        bool prefix_safe = true;
        for (auto& x : parts) {
            if (neutral(x)) {
                continue;
            }
            if (absorbs(x)) {
                // At the top level a fault is false anyway; elsewhere only a
                // fault-free prefix may be discarded.
                if (ctx == Ctx::Top && conj) {
                    return Expr::falsity();
                }
                if (prefix_safe) {
                    return Expr::literal(conj ? 0 : 1);
                }
                kept.push_back(Expr::literal(conj ? 0 : 1));
                break;
            }
            if (std::find(kept.begin(), kept.end(), x) != kept.end()) {
                continue;
            }
            prefix_safe = prefix_safe && !x.can_fault();
            kept.push_back(std::move(x));
        }
        if (kept.empty()) {
            return Expr::literal(conj ? 1 : 0);
        }
        if (conj && ctx == Ctx::Top && contradictory(kept)) {
            return Expr::falsity();
        }
        if (kept.size() == 1) {
            return as_bool(std::move(kept.front()), ctx);
        }
        Expr out = kept.front();
        for (std::size_t i = 1; i < kept.size(); ++i) {
            out = Expr::binary(op, std::move(out), kept[i]);
        }
        return out;
    }

    // ---- linear normal form over +, -, * by constants ----

    struct Lin {
        std::map<Expr, std::uint64_t> coef;
        std::uint64_t k{0};
        std::vector<Expr> dropped;  // atoms whose coefficient cancelled
    };

    void add(Lin& into, const Lin& from, std::uint64_t scale) const {
        into.k += from.k * scale;
        for (const auto& [atom, c] : from.coef) {
            into.coef[atom] += c * scale;
        }
        into.dropped.insert(into.dropped.end(), from.dropped.begin(), from.dropped.end());
    }

    Lin lin(const Expr& e) {
        Lin out;
        if (e.kind() == ExprKind::Binary &&
            (e.op() == BinaryOp::Add || e.op() == BinaryOp::Sub || e.op() == BinaryOp::Mul)) {
            Lin a = lin(e.lhs());
            Lin b = lin(e.rhs());
            if (e.op() == BinaryOp::Add) {
                add(out, a, 1);
                add(out, b, 1);
            } else if (e.op() == BinaryOp::Sub) {
                add(out, a, 1);
                add(out, b, ~std::uint64_t{0});
            } else if (a.coef.empty() && a.dropped.empty()) {
                add(out, b, a.k);
            } else if (b.coef.empty() && b.dropped.empty()) {
                add(out, a, b.k);
            } else {
                out.coef[Expr::binary(BinaryOp::Mul, rebuild(a), rebuild(b))] = 1;
                out.dropped = a.dropped;
                out.dropped.insert(out.dropped.end(), b.dropped.begin(), b.dropped.end());
            }
        } else {
            Expr s = run(e, Ctx::Value);
            if (s.is_literal()) {
                out.k = static_cast<std::uint64_t>(s.value().value());
            } else {
                out.coef[s] = 1;
            }
        }
        for (auto it = out.coef.begin(); it != out.coef.end();) {
            if (w_.wrap(it->second).value() == 0) {
                out.dropped.push_back(it->first);
                it = out.coef.erase(it);
            } else {
                ++it;
            }
        }
        return out;
    }

    Expr term(const Expr& atom, Word c) const {
        return c.value() == 1 ? atom : Expr::binary(BinaryOp::Mul, Expr::literal(c), atom);
    }

    Expr rebuild(const Lin& l) const {
        std::vector<std::pair<Expr, Word>> pos;
        std::vector<std::pair<Expr, Word>> neg;
        for (const auto& [atom, c] : l.coef) {
            const Word cw = w_.wrap(c);
            if (cw.value() > 0 || cw.value() == w_.min_value()) {
                pos.emplace_back(atom, cw);
            } else {
                neg.emplace_back(atom, w_.wrap(std::uint64_t{0} - c));
            }
        }
        const Word k = w_.wrap(l.k);
        std::optional<Expr> out;
        if (pos.empty()) {
            out = Expr::literal(k);
        }
        for (const auto& [atom, c] : pos) {
            out = out ? Expr::binary(BinaryOp::Add, *out, term(atom, c)) : term(atom, c);
        }
        for (const auto& [atom, c] : neg) {
            out = Expr::binary(BinaryOp::Sub, *out, term(atom, c));
        }
        if (!pos.empty() && k.value() != 0) {
            if (k.value() < 0 && k.value() != w_.min_value()) {
                out = Expr::binary(BinaryOp::Sub, *out, Expr::literal(-k.value()));
            } else {
                out = Expr::binary(BinaryOp::Add, *out, Expr::literal(k));
            }
        }
        return *out;
    }

    Expr linear(const Expr& e) {
        Lin l = lin(e);
        const bool unsafe =
            std::any_of(l.dropped.begin(), l.dropped.end(), [](const Expr& a) { return a.can_fault(); });
        if (!unsafe) {
            return rebuild(l);
        }
        Expr a = run(e.lhs(), Ctx::Value);
        Expr b = run(e.rhs(), Ctx::Value);
        if (a.is_literal() && b.is_literal()) {
            return fold(e.op(), a, b);
        }
        return Expr::binary(e.op(), std::move(a), std::move(b));
    }

  public:
    // ---- contradiction detection over a conjunction ----

    struct Literal {
        Expr atom;
        bool positive;
    };

    static std::pair<Expr, Expr> ordered(const Expr& a, const Expr& b) {
        const bool swap = (a.is_literal() && !b.is_literal()) || (a.is_literal() == b.is_literal() && b < a);
        return swap ? std::pair{b, a} : std::pair{a, b};
    }

    static Literal literal_of(const Expr& e) {
        if (e.kind() == ExprKind::Not) {
            Literal l = literal_of(e.operand());
            l.positive = !l.positive;
            return l;
        }
        if (e.kind() == ExprKind::Binary &&
            (e.op() == BinaryOp::Eq || e.op() == BinaryOp::Sep || e.op() == BinaryOp::Alias)) {
            auto [a, b] = ordered(e.lhs(), e.rhs());
            return {Expr::binary(BinaryOp::Eq, a, b), e.op() != BinaryOp::Sep};
        }
        return {e, true};
    }

    static bool contradictory(const std::vector<Expr>& conjuncts) {
        std::vector<Literal> lits;
        lits.reserve(conjuncts.size());
        for (const auto& c : conjuncts) {
            if (c.is_literal(0)) {
                return true;
            }
            lits.push_back(literal_of(c));
        }
        for (std::size_t i = 0; i < lits.size(); ++i) {
            for (std::size_t j = i + 1; j < lits.size(); ++j) {
                const auto& a = lits[i];
                const auto& b = lits[j];
                if (a.atom == b.atom && a.positive != b.positive) {
                    return true;
                }
                if (a.positive && b.positive && a.atom.is_binary(BinaryOp::Eq) && b.atom.is_binary(BinaryOp::Eq) &&
                    a.atom.lhs() == b.atom.lhs() && a.atom.rhs().is_literal() && b.atom.rhs().is_literal() &&
                    a.atom.rhs().value() != b.atom.rhs().value()) {
                    return true;
                }
            }
        }
        return false;
    }
};

void conjuncts_of(const Expr& e, std::vector<Expr>& out) {
    if (e.is_binary(BinaryOp::And)) {
        conjuncts_of(e.lhs(), out);
        conjuncts_of(e.rhs(), out);
    } else {
        out.push_back(e);
    }
}

} // namespace

Expr simplify(const Expr& e, Width width) {
    Simplifier s(width);
    return s.run(e, Ctx::Top);
}

Predicate simplify(const Predicate& p, Width width) {
    Simplifier s(width);
    std::vector<Quantifier> prefix = p.prefix();
    for (auto& q : prefix) {
        q.bound = s.run(q.bound, Ctx::Top);
    }
    Expr matrix = s.run(p.matrix(), Ctx::Top);

    // Drop binders nothing refers to; a bound that does not mention its own
    // variable is then an ordinary conjunct.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = prefix.size(); i-- > 0;) {
            const auto& v = prefix[i].var;
            bool used = mentions(matrix, v);
            for (std::size_t j = i + 1; j < prefix.size() && !used; ++j) {
                used = mentions(prefix[j].bound, v);
            }
            if (used || mentions(prefix[i].bound, v)) {
                continue;
            }
            // A later binder rebinding a name the bound uses would capture it.
            std::set<std::string> names;
            collect_vars(prefix[i].bound, names);
            bool captured = false;
            for (std::size_t j = i + 1; j < prefix.size(); ++j) {
                captured = captured || names.contains(prefix[j].var);
            }
            if (captured) {
                continue;
            }
            matrix = s.run(Expr::binary(BinaryOp::And, prefix[i].bound, matrix), Ctx::Top);
            prefix.erase(prefix.begin() + static_cast<std::ptrdiff_t>(i));
            changed = true;
            break;
        }
    }

    std::vector<Expr> all;
    for (const auto& q : prefix) {
        conjuncts_of(q.bound, all);
    }
    conjuncts_of(matrix, all);
    if (Simplifier::contradictory(all)) {
        return Predicate::leaf(Expr::falsity());
    }
    return Predicate(std::move(prefix), std::move(matrix));
}

bool tier1_unsat(const Predicate& p, Width width) { return simplify(p, width).is_false(); }

} // namespace jumprl
