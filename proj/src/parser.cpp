#include "jumprl/parser.hpp"

#include <cctype>
#include <limits>
#include <optional>
#include <set>
#include <vector>

namespace jumprl {

SourceError::SourceError(SourceErrorKind kind, std::size_t line, std::size_t column, std::string message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " +
                         std::string(jumprl::to_string(kind)) + " error: " + message),
      kind_(kind), line_(line), column_(column), message_(std::move(message)) {}

std::string_view to_string(SourceErrorKind kind) {
    switch (kind) {
    case SourceErrorKind::Lex: return "lex";
    case SourceErrorKind::Parse: return "parse";
    case SourceErrorKind::Resolve: return "resolve";
    }
    return "?";
}

namespace {

enum class Tok { Int, Ident, Punct, End };

struct Token {
    Tok kind{Tok::End};
    std::string text;
    std::uint64_t number{0};
    std::size_t line{1};
    std::size_t column{1};
};

const std::set<std::string_view> kProgramKeywords = {"entry", "block", "jump", "ijump", "exit", "some",
                                                     "true",  "false", "sep",  "alias"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }

std::vector<Token> lex(std::string_view src) {
    static const std::vector<std::string_view> puncts = {":=", "<-", "==", "!=", "<=", ">=", "&&", "||", "[",
                                                         "]",  "(",  ")",  ";",  ":",  ",",  ".",  "<",  ">",
                                                         "+",  "-",  "*",  "/",  "%",  "!"};
    std::vector<Token> out;
    std::size_t i = 0;
    std::size_t line = 1;
    std::size_t col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') {
                advance(1);
            }
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            int base = 10;
            if (c == '0' && j + 1 < src.size() && (src[j + 1] == 'x' || src[j + 1] == 'X')) {
                base = 16;
                j += 2;
            }
            const std::size_t digits_start = j;
            std::uint64_t v = 0;
            bool overflow = false;
            while (j < src.size() && std::isxdigit(static_cast<unsigned char>(src[j]))) {
                const char d = src[j];
                unsigned digit = 0;
                if (std::isdigit(static_cast<unsigned char>(d))) {
                    digit = static_cast<unsigned>(d - '0');
                } else if (base == 16) {
                    digit = static_cast<unsigned>(std::tolower(static_cast<unsigned char>(d)) - 'a' + 10);
                } else {
                    break;
                }
                if (v > (std::numeric_limits<std::uint64_t>::max() - digit) / static_cast<unsigned>(base)) {
                    overflow = true;
                }
                v = v * static_cast<unsigned>(base) + digit;
                ++j;
            }
            if (j == digits_start) {
                throw SourceError(SourceErrorKind::Lex, line, col, "malformed number");
            }
            if (j < src.size() && ident_char(src[j])) {
                throw SourceError(SourceErrorKind::Lex, line, col, "malformed number");
            }
            if (overflow) {
                throw SourceError(SourceErrorKind::Lex, line, col, "number out of range");
            }
            t.kind = Tok::Int;
            t.number = v;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) {
                ++j;
            }
            t.kind = Tok::Ident;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }
        bool matched = false;
        for (auto p : puncts) {
            if (src.substr(i, p.size()) == p) {
                t.kind = Tok::Punct;
                t.text = std::string(p);
                advance(p.size());
                out.push_back(std::move(t));
                matched = true;
                break;
            }
        }
        if (!matched) {
            throw SourceError(SourceErrorKind::Lex, line, col, std::string("unexpected character '") + c + "'");
        }
    }
    Token end;
    end.kind = Tok::End;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

int precedence(BinaryOp op) {
    switch (op) {
    case BinaryOp::Or: return 1;
    case BinaryOp::And: return 2;
    case BinaryOp::Eq:
    case BinaryOp::Ne: return 3;
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge: return 4;
    case BinaryOp::Add:
    case BinaryOp::Sub: return 5;
    case BinaryOp::Mul:
    case BinaryOp::Div:
    case BinaryOp::Mod: return 6;
    case BinaryOp::Sep:
    case BinaryOp::Alias: return 8;
    }
    return 0;
}

std::optional<BinaryOp> infix_op(const Token& t) {
    if (t.kind != Tok::Punct) {
        return std::nullopt;
    }
    static const std::vector<std::pair<std::string_view, BinaryOp>> ops = {
        {"||", BinaryOp::Or}, {"&&", BinaryOp::And}, {"==", BinaryOp::Eq},  {"!=", BinaryOp::Ne},
        {"<", BinaryOp::Lt},  {"<=", BinaryOp::Le},  {">", BinaryOp::Gt},   {">=", BinaryOp::Ge},
        {"+", BinaryOp::Add}, {"-", BinaryOp::Sub},  {"*", BinaryOp::Mul},  {"/", BinaryOp::Div},
        {"%", BinaryOp::Mod}};
    for (const auto& [sym, op] : ops) {
        if (t.text == sym) {
            return op;
        }
    }
    return std::nullopt;
}

class Parser {
  public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    Program program() {
        expect_keyword("entry");
        const Token entry_tok = peek();
        const Addr entry = address();
        std::map<Addr, Block> blocks;
        std::vector<std::pair<Addr, Token>> targets;
        while (is_keyword("block")) {
            next();
            const Token addr_tok = peek();
            const Addr a = address();
            expect_punct(":");
            Block b = block_body(targets);
            if (blocks.contains(a)) {
                throw SourceError(SourceErrorKind::Resolve, addr_tok.line, addr_tok.column,
                                  "duplicate block " + std::to_string(a.value()));
            }
            blocks.emplace(a, std::move(b));
        }
        if (peek().kind != Tok::End) {
            fail("expected 'block' or end of input");
        }
        if (!blocks.contains(entry)) {
            throw SourceError(SourceErrorKind::Resolve, entry_tok.line, entry_tok.column,
                              "entry block " + std::to_string(entry.value()) + " is not declared");
        }
        for (const auto& [a, tok] : targets) {
            if (!blocks.contains(a)) {
                throw SourceError(SourceErrorKind::Resolve, tok.line, tok.column,
                                  "jump target " + std::to_string(a.value()) + " is not a declared block");
            }
        }
        return Program(entry, std::move(blocks));
    }

    Predicate predicate() {
        std::vector<Quantifier> prefix;
        while (at_quantifier()) {
            next();  // E
            const Token var = next();
            next();  // in
            Expr bound = expr();
            expect_punct(".");
            prefix.push_back({var.text, std::move(bound)});
        }
        Expr matrix = expr();
        expect_end();
        return Predicate(std::move(prefix), std::move(matrix));
    }

    Expr standalone_expr() {
        Expr e = expr();
        expect_end();
        return e;
    }

  private:
    std::vector<Token> toks_;
    std::size_t pos_{0};

    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    Token next() {
        Token t = peek();
        if (pos_ < toks_.size() - 1) {
            ++pos_;
        }
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        const auto& t = peek();
        std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        throw SourceError(SourceErrorKind::Parse, t.line, t.column, msg + ", found " + found);
    }

    bool is_punct(std::string_view p) const { return peek().kind == Tok::Punct && peek().text == p; }
    bool is_keyword(std::string_view k) const { return peek().kind == Tok::Ident && peek().text == k; }

    void expect_punct(std::string_view p) {
        if (!is_punct(p)) {
            fail("expected '" + std::string(p) + "'");
        }
        next();
    }
    void expect_keyword(std::string_view k) {
        if (!is_keyword(k)) {
            fail("expected '" + std::string(k) + "'");
        }
        next();
    }
    void expect_end() {
        if (peek().kind != Tok::End) {
            fail("unexpected trailing input");
        }
    }

    bool at_quantifier() const {
        return peek().kind == Tok::Ident && peek().text == "E" && peek(1).kind == Tok::Ident &&
               peek(2).kind == Tok::Ident && peek(2).text == "in";
    }

    Addr address() {
        bool negative = false;
        if (is_punct("-")) {
            next();
            negative = true;
        }
        if (peek().kind != Tok::Int) {
            fail("expected block address");
        }
        return Word{signed_literal(next(), negative)};
    }

    std::int64_t signed_literal(const Token& t, bool negative) const {
        constexpr auto limit = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
        if (negative) {
            if (t.number > limit + 1) {
                throw SourceError(SourceErrorKind::Lex, t.line, t.column, "number out of range");
            }
            return static_cast<std::int64_t>(std::uint64_t{0} - t.number);
        }
        if (t.number > limit) {
            throw SourceError(SourceErrorKind::Lex, t.line, t.column, "number out of range");
        }
        return static_cast<std::int64_t>(t.number);
    }

    std::string variable_name() {
        if (peek().kind != Tok::Ident || kProgramKeywords.contains(peek().text)) {
            fail("expected variable name");
        }
        return next().text;
    }

    Block block_body(std::vector<std::pair<Addr, Token>>& targets) {
        Block b;
        while (true) {
            if (is_keyword("exit")) {
                next();
                b.terminator = Exit{};
                break;
            }
            if (is_keyword("ijump")) {
                next();
                b.terminator = IJump{expr()};
                break;
            }
            if (is_keyword("jump")) {
                next();
                Expr cond = unary();
                const Token then_tok = peek();
                const Addr then_target = address();
                const Token else_tok = peek();
                const Addr else_target = address();
                targets.emplace_back(then_target, then_tok);
                targets.emplace_back(else_target, else_tok);
                b.terminator = Jump{std::move(cond), then_target, else_target};
                break;
            }
            b.stmts.push_back(statement());
            expect_punct(";");
        }
        if (is_punct(";")) {
            next();
        }
        return b;
    }

    Stmt statement() {
        if (is_punct("[")) {
            next();
            Expr address = expr();
            expect_punct("]");
            expect_punct(":=");
            return Store{std::move(address), expr()};
        }
        if (peek().kind != Tok::Ident) {
            fail("expected statement or terminator");
        }
        std::string v = variable_name();
        if (is_punct(":=")) {
            next();
            return Assign{std::move(v), expr()};
        }
        if (is_punct("<-")) {
            next();
            expect_keyword("some");
            return NondetAssign{std::move(v), expr()};
        }
        fail("expected ':=' or '<- some'");
    }

    Expr expr(int min_prec = 1) {
        Expr lhs = unary();
        while (true) {
            auto op = infix_op(peek());
            if (!op || precedence(*op) < min_prec) {
                break;
            }
            next();
            Expr rhs = expr(precedence(*op) + 1);
            lhs = Expr::binary(*op, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    Expr unary() {
        if (is_punct("!")) {
            next();
            return Expr::negate(unary());
        }
        if (is_punct("-")) {
            next();
            if (peek().kind == Tok::Int) {
                return Expr::literal(signed_literal(next(), true));
            }
            return Expr::binary(BinaryOp::Sub, Expr::literal(0), unary());
        }
        return primary();
    }

    Expr primary() {
        const Token& t = peek();
        if (t.kind == Tok::Int) {
            return Expr::literal(signed_literal(next(), false));
        }
        if (is_punct("(")) {
            next();
            Expr e = expr();
            expect_punct(")");
            return e;
        }
        if (is_punct("[")) {
            next();
            Expr e = expr();
            expect_punct("]");
            return Expr::deref(std::move(e));
        }
        if (t.kind == Tok::Ident) {
            if (at_quantifier()) {
                throw SourceError(SourceErrorKind::Parse, t.line, t.column,
                                  "quantifier is only allowed as an outermost prefix");
            }
            if (t.text == "true") {
                next();
                return Expr::truth();
            }
            if (t.text == "false") {
                next();
                return Expr::falsity();
            }
            if (t.text == "sep" || t.text == "alias") {
                const auto op = t.text == "sep" ? BinaryOp::Sep : BinaryOp::Alias;
                next();
                expect_punct("(");
                Expr a = expr();
                expect_punct(",");
                Expr b = expr();
                expect_punct(")");
                return Expr::binary(op, std::move(a), std::move(b));
            }
            return Expr::var(variable_name());
        }
        fail("expected expression");
    }
};

} // namespace

Program parse_program(std::string_view text) { return Parser(text).program(); }

Predicate parse_predicate(std::string_view text) { return Parser(text).predicate(); }

Expr parse_expr(std::string_view text) { return Parser(text).standalone_expr(); }

} // namespace jumprl
