#include "unimap/parse.hpp"

#include <cctype>

#include "unimap/errors.hpp"

namespace unimap {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, Semi, Equals, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return cur_; }

    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            bump(src_[pos_]);
        }
        cur_.line = line_;
        cur_.col = col_;
        cur_.text.clear();
        if (pos_ >= src_.size()) {
            cur_.kind = Tok::End;
            return;
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            cur_.kind = Tok::Number;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                cur_.text += src_[pos_];
                bump(src_[pos_]);
            }
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            cur_.kind = Tok::Ident;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])))) {
                cur_.text += src_[pos_];
                bump(src_[pos_]);
            }
            return;
        }
        switch (c) {
            case '+': cur_.kind = Tok::Plus; break;
            case '-': cur_.kind = Tok::Minus; break;
            case '*': cur_.kind = Tok::Star; break;
            case '^': cur_.kind = Tok::Caret; break;
            case '/': cur_.kind = Tok::Slash; break;
            case '(': cur_.kind = Tok::LParen; break;
            case ')': cur_.kind = Tok::RParen; break;
            case ';': cur_.kind = Tok::Semi; break;
            case '=': cur_.kind = Tok::Equals; break;
            default:
                throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
        }
        cur_.text = c;
        bump(c);
    }

    void bump(char c) {
        ++pos_;
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token cur_{};
};

class Parser {
public:
    Parser(const std::string& src, int nvars, bool allow_t) : lex_(src), nvars_(nvars), allow_t_(allow_t) {}

    // expr := term (('+'|'-') term)*
    Expr parse_expr() {
        std::vector<Expr> parts{parse_term()};
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            bool minus = lex_.take().kind == Tok::Minus;
            Expr t = parse_term();
            parts.push_back(minus ? Expr::neg(t) : t);
        }
        return Expr::sum(std::move(parts));
    }

    void expect_end() {
        const Token& t = lex_.peek();
        if (t.kind != Tok::End) throw ParseError(t.line, t.col, "trailing input '" + t.text + "'");
    }

    Lexer& lexer() { return lex_; }

private:
    // term := '-' term | factor ('*' factor)*
    Expr parse_term() {
        if (lex_.peek().kind == Tok::Minus) {
            lex_.take();
            return Expr::neg(parse_term());
        }
        std::vector<Expr> factors{parse_factor()};
        while (lex_.peek().kind == Tok::Star) {
            lex_.take();
            factors.push_back(parse_factor());
        }
        return Expr::prod(std::move(factors));
    }

    // factor := atom ('^' UINT)*
    Expr parse_factor() {
        Expr e = parse_atom();
        while (lex_.peek().kind == Tok::Caret) {
            lex_.take();
            Token t = lex_.take();
            if (t.kind != Tok::Number) throw ParseError(t.line, t.col, "expected nonnegative integer exponent");
            unsigned long exp = std::stoul(t.text);
            e = Expr::pow(e, static_cast<unsigned>(exp));
        }
        return e;
    }

    Expr parse_atom() {
        Token t = lex_.take();
        switch (t.kind) {
            case Tok::Number: {
                // rational := INT | INT '/' POSINT
                if (lex_.peek().kind == Tok::Slash) {
                    lex_.take();
                    Token d = lex_.take();
                    if (d.kind != Tok::Number) throw ParseError(d.line, d.col, "expected positive denominator");
                    if (d.text == "0") throw ParseError(d.line, d.col, "zero denominator");
                    return Expr::constant(rational_from_string(t.text + "/" + d.text));
                }
                return Expr::constant(rational_from_string(t.text));
            }
            case Tok::LParen: {
                Expr e = parse_expr();
                Token close = lex_.take();
                if (close.kind != Tok::RParen) throw ParseError(close.line, close.col, "expected ')'");
                return e;
            }
            case Tok::Ident: {
                if (t.text == "t") {
                    if (!allow_t_) throw ParseError(t.line, t.col, "'t' is legal only inside the phi definition");
                    return Expr::variable(0);
                }
                if (t.text == "sin" || t.text == "cos" || t.text == "exp" || t.text == "phi") {
                    FuncKind f = t.text == "sin"   ? FuncKind::Sin
                                 : t.text == "cos" ? FuncKind::Cos
                                 : t.text == "exp" ? FuncKind::Exp
                                                   : FuncKind::Phi;
                    Token open = lex_.take();
                    if (open.kind != Tok::LParen) throw ParseError(open.line, open.col, "expected '(' after " + t.text);
                    Expr arg = parse_expr();
                    Token close = lex_.take();
                    if (close.kind != Tok::RParen) throw ParseError(close.line, close.col, "expected ')'");
                    return Expr::func(f, arg);
                }
                if (t.text.size() > 1 && t.text[0] == 'x') {
                    int idx = parse_index(t, 1);
                    if (allow_t_) throw ParseError(t.line, t.col, "phi definition must use only 't'");
                    if (idx > nvars_) {
                        throw ParseError(t.line, t.col,
                                         "variable x" + std::to_string(idx) + " exceeds dimension " + std::to_string(nvars_));
                    }
                    return Expr::variable(idx - 1);
                }
                throw ParseError(t.line, t.col, "unexpected identifier '" + t.text + "'");
            }
            default: throw ParseError(t.line, t.col, "unexpected token '" + t.text + "'");
        }
    }

    static int parse_index(const Token& t, size_t from) {
        for (size_t i = from; i < t.text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(t.text[i]))) {
                throw ParseError(t.line, t.col, "malformed index in '" + t.text + "'");
            }
        }
        int idx = std::stoi(t.text.substr(from));
        if (idx < 1) throw ParseError(t.line, t.col, "indices start at 1");
        return idx;
    }

    Lexer lex_;
    int nvars_;
    bool allow_t_;

public:
    Expr parse_clause_expr() { return parse_expr(); }

    int read_keyword_int(const std::string& kw) {
        Token t = lex_.take();
        if (t.kind != Tok::Ident || t.text != kw) throw ParseError(t.line, t.col, "expected '" + kw + "'");
        Token n = lex_.take();
        if (n.kind != Tok::Number) throw ParseError(n.line, n.col, "expected integer after '" + kw + "'");
        return std::stoi(n.text);
    }

    void expect(Tok k, const std::string& what) {
        Token t = lex_.take();
        if (t.kind != k) throw ParseError(t.line, t.col, "expected " + what);
    }

    // clause terminator; the final one may be omitted
    void expect_semi_or_end() {
        if (lex_.peek().kind == Tok::End) return;
        Token t = lex_.take();
        if (t.kind != Tok::Semi) throw ParseError(t.line, t.col, "expected ';'");
    }

    Token take() { return lex_.take(); }
    const Token& peek() { return lex_.peek(); }
    void set_nvars(int n) { nvars_ = n; }
    void set_allow_t(bool b) { allow_t_ = b; }
    static int index_of(const Token& t, size_t from) { return parse_index(t, from); }
};

} // namespace

Expr parse_expr(const std::string& text, int nvars, bool allow_t) {
    Parser p(text, nvars, allow_t);
    Expr e = p.parse_clause_expr();
    p.expect_end();
    return e;
}

ExprMap parse_map(const std::string& text) {
    Parser p(text, 0, false);
    int dim = p.read_keyword_int("dim");
    if (dim < 1) throw ParseError(1, 1, "dimension must be positive");
    p.expect(Tok::Semi, "';'");
    p.set_nvars(dim);

    ExprMap m;
    m.dim = dim;
    m.components.assign(dim, Expr());

    std::vector<bool> seen(dim, false);
    bool any_component = false;
    while (p.peek().kind != Tok::End) {
        Token head = p.take();
        if (head.kind != Tok::Ident) throw ParseError(head.line, head.col, "expected 'phi' or component definition");
        if (head.text == "phi") {
            if (m.phi) throw ParseError(head.line, head.col, "duplicate phi definition");
            if (any_component) throw ParseError(head.line, head.col, "phi definition must precede components");
            p.expect(Tok::Equals, "'='");
            p.set_allow_t(true);
            Expr def = p.parse_clause_expr();
            p.set_allow_t(false);
            p.expect_semi_or_end();
            m.phi = def;
            continue;
        }
        if (head.text.size() > 1 && head.text[0] == 'f') {
            int idx = Parser::index_of(head, 1);
            if (idx > dim) throw ParseError(head.line, head.col, "component f" + std::to_string(idx) + " exceeds dimension");
            if (seen[idx - 1]) throw ParseError(head.line, head.col, "duplicate component f" + std::to_string(idx));
            p.expect(Tok::Equals, "'='");
            Expr e = p.parse_clause_expr();
            p.expect_semi_or_end();
            m.components[idx - 1] = e;
            seen[idx - 1] = true;
            any_component = true;
            continue;
        }
        throw ParseError(head.line, head.col, "unexpected clause '" + head.text + "'");
    }
    for (int i = 0; i < dim; ++i) {
        if (!seen[i]) throw ParseError(1, 1, "missing component f" + std::to_string(i + 1));
    }
    return m;
}

} // namespace unimap
