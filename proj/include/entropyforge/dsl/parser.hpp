/*
   Copyright 2026 The entropyforge authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ENTROPYFORGE_DSL_PARSER_HPP
#define ENTROPYFORGE_DSL_PARSER_HPP

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "entropyforge/dsl/defs.hpp"

namespace entropyforge::dsl {

/// Syntax error with source position.
class SyntaxError : public Error {
  public:
    SyntaxError(const std::string& what, int line, int col)
        : Error(ErrorKind::syntax,
                what + " (line " + std::to_string(line) + ", col " + std::to_string(col) + ")"),
          line_(line),
          col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

  private:
    int line_, col_;
};

namespace parse_detail {

enum class Tok {
    End, Newline, Ident, Int, String,
    LBracket, RBracket, LParen, RParen,
    Plus, Minus, Star, Slash, Caret, Equals, Comma, Colon, DotDot, At,
};

struct Token {
    Tok kind;
    std::string text;
    long ival = 0;
    int line = 1, col = 1;
};

class Lexer {
  public:
    explicit Lexer(const std::string& src) : src_(src) { advance_(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance_();
        return t;
    }

  private:
    void advance_() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++pos_;
                ++col_;
            } else {
                break;
            }
        }
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = Tok::End;
            return;
        }
        char c = src_[pos_];
        auto single = [&](Tok k) {
            tok_.kind = k;
            tok_.text = std::string(1, c);
            bump_(1);
        };
        if (c == '\n' || c == ';') {
            tok_.kind = Tok::Newline;
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else {
                bump_(1);
            }
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump_(1);
            tok_.kind = Tok::Int;
            tok_.text = src_.substr(start, pos_ - start);
            tok_.ival = std::stol(tok_.text);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                bump_(1);
            tok_.kind = Tok::Ident;
            tok_.text = src_.substr(start, pos_ - start);
            return;
        }
        if (c == '"') {
            bump_(1);
            size_t start = pos_;
            while (pos_ < src_.size() && src_[pos_] != '"') bump_(1);
            if (pos_ >= src_.size()) throw SyntaxError("unterminated string", tok_.line, tok_.col);
            tok_.kind = Tok::String;
            tok_.text = src_.substr(start, pos_ - start);
            bump_(1);
            return;
        }
        if (c == '.' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '.') {
            tok_.kind = Tok::DotDot;
            tok_.text = "..";
            bump_(2);
            return;
        }
        switch (c) {
            case '[': single(Tok::LBracket); return;
            case ']': single(Tok::RBracket); return;
            case '(': single(Tok::LParen); return;
            case ')': single(Tok::RParen); return;
            case '+': single(Tok::Plus); return;
            case '-': single(Tok::Minus); return;
            case '*': single(Tok::Star); return;
            case '/': single(Tok::Slash); return;
            case '^': single(Tok::Caret); return;
            case '=': single(Tok::Equals); return;
            case ',': single(Tok::Comma); return;
            case ':': single(Tok::Colon); return;
            case '@': single(Tok::At); return;
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", line_, col_);
    }

    void bump_(size_t k) {
        pos_ += k;
        col_ += static_cast<int>(k);
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

struct Parser {
    explicit Parser(const std::string& src) : lex(src) {}

    Lexer lex;
    bool two_d = false;

    [[noreturn]] void fail(const std::string& msg) {
        throw SyntaxError(msg, lex.peek().line, lex.peek().col);
    }

    Token expect(Tok k, const std::string& what) {
        if (lex.peek().kind != k) fail("expected " + what);
        return lex.take();
    }

    bool accept(Tok k) {
        if (lex.peek().kind == k) {
            lex.take();
            return true;
        }
        return false;
    }

    void skip_newlines() {
        while (lex.peek().kind == Tok::Newline) lex.take();
    }

    long signed_int() {
        bool neg = accept(Tok::Minus);
        if (!neg) accept(Tok::Plus);
        Token t = expect(Tok::Int, "an integer");
        return neg ? -t.ival : t.ival;
    }

    Rat rational_value() {
        long num = signed_int();
        if (accept(Tok::Slash)) {
            Token d = expect(Tok::Int, "a denominator");
            return Rat(num, d.ival);
        }
        return Rat(num);
    }

    /// 1D index: n, n+3, n-1.
    int index1() {
        Token t = expect(Tok::Ident, "index variable n");
        if (t.text != "n") throw SyntaxError("expected index variable n", t.line, t.col);
        if (lex.peek().kind == Tok::Plus || lex.peek().kind == Tok::Minus) {
            return static_cast<int>(signed_int());
        }
        return 0;
    }

    /// 2D index pair: m[,+-d] , n[+-d].
    std::pair<int, int> index2() {
        Token t = expect(Tok::Ident, "index variable m");
        if (t.text != "m") throw SyntaxError("expected index variable m", t.line, t.col);
        int dm = 0, dn = 0;
        if (lex.peek().kind == Tok::Plus || lex.peek().kind == Tok::Minus) dm = static_cast<int>(signed_int());
        expect(Tok::Comma, "','");
        Token u = expect(Tok::Ident, "index variable n");
        if (u.text != "n") throw SyntaxError("expected index variable n", u.line, u.col);
        if (lex.peek().kind == Tok::Plus || lex.peek().kind == Tok::Minus) dn = static_cast<int>(signed_int());
        return {dm, dn};
    }

    ExprPtr ref() {
        Token id = expect(Tok::Ident, "an identifier");
        bool indexed = lex.peek().kind == Tok::LBracket;
        if (indexed) {
            lex.take();
            if (two_d) {
                auto [dm, dn] = index2();
                expect(Tok::RBracket, "']'");
                if (id.text == "x") return Expr::var2d(dm, dn);
                return Expr::coeff2d(id.text, dm, dn);
            }
            int s = index1();
            expect(Tok::RBracket, "']'");
            if (id.text == "x") return Expr::var(s);
            return Expr::coeff(id.text, s);
        }
        if (id.text == "x") throw SyntaxError("iterate x must be indexed", id.line, id.col);
        if (two_d) return Expr::coeff2d(id.text, 0, 0);
        return Expr::coeff(id.text, 0);
    }

    ExprPtr atom() {
        switch (lex.peek().kind) {
            case Tok::Int: {
                Token t = lex.take();
                return Expr::number_of(Rat(t.ival));
            }
            case Tok::LParen: {
                lex.take();
                ExprPtr e = expr();
                expect(Tok::RParen, "')'");
                return e;
            }
            case Tok::Ident: return ref();
            default: fail("expected a value");
        }
    }

    long exponent() {
        // integer exponents only; anything else is a reported error
        Token at = lex.peek();
        if (accept(Tok::LParen)) {
            bool neg = accept(Tok::Minus);
            if (lex.peek().kind != Tok::Int)
                throw SyntaxError("non-integer exponent", at.line, at.col);
            long v = lex.take().ival;
            expect(Tok::RParen, "')'");
            return neg ? -v : v;
        }
        bool neg = accept(Tok::Minus);
        if (lex.peek().kind != Tok::Int) throw SyntaxError("non-integer exponent", at.line, at.col);
        return neg ? -lex.take().ival : lex.take().ival;
    }

    ExprPtr factor() {
        if (accept(Tok::Minus)) return Expr::neg(factor());
        ExprPtr base = atom();
        if (accept(Tok::Caret)) {
            return Expr::pow(std::move(base), exponent());
        }
        return base;
    }

    ExprPtr term() {
        ExprPtr e = factor();
        for (;;) {
            if (accept(Tok::Star)) {
                e = Expr::binary(Expr::Kind::Mul, std::move(e), factor());
            } else if (accept(Tok::Slash)) {
                e = Expr::binary(Expr::Kind::Div, std::move(e), factor());
            } else {
                return e;
            }
        }
    }

    ExprPtr expr() {
        ExprPtr e = term();
        for (;;) {
            if (accept(Tok::Plus)) {
                e = Expr::binary(Expr::Kind::Add, std::move(e), term());
            } else if (accept(Tok::Minus)) {
                e = Expr::binary(Expr::Kind::Sub, std::move(e), term());
            } else {
                return e;
            }
        }
    }
};

inline std::vector<Rat> load_csv_sequence(const std::string& path, int& start) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::invalid_input, "cannot open table file \"" + path + "\"");
    std::vector<std::pair<long, Rat>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string a, b;
        if (!std::getline(row, a, ',') || !std::getline(row, b)) continue;
        rows.emplace_back(std::stol(a), Rat(b));
    }
    if (rows.empty()) throw Error(ErrorKind::invalid_input, "table file \"" + path + "\" is empty");
    std::sort(rows.begin(), rows.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    start = static_cast<int>(rows.front().first);
    std::vector<Rat> vals;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].first != rows.front().first + static_cast<long>(i))
            throw Error(ErrorKind::invalid_input, "table file indices must be contiguous");
        vals.push_back(rows[i].second);
    }
    return vals;
}

inline std::map<std::pair<int, int>, Rat> load_csv_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::invalid_input, "cannot open table file \"" + path + "\"");
    std::map<std::pair<int, int>, Rat> t;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string a, b, c;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c)) continue;
        t[{std::stoi(a), std::stoi(b)}] = Rat(c);
    }
    if (t.empty()) throw Error(ErrorKind::invalid_input, "table file \"" + path + "\" is empty");
    return t;
}

}  // namespace parse_detail

/// Parses the line-oriented recurrence format.  First statement is the
/// equation (1D `x[...] = expr` or 2D `x[m,n] = expr`); following statements
/// bind coefficient specs:
///   name: const v | periodic(v1, ..., vk) | values@start(v1, ...)
///       | table "file.csv" | symbolic(lo..hi)
/// For 2D definitions `periodic` takes an axis: periodic@m(...),
/// periodic@n(...), periodic@m-n(...), periodic@m+n(...); a bare periodic(...)
/// means periodic@n.  Statements are separated by newlines or ';', comments
/// start with '#'.
inline ParsedDef parse_mapping(const std::string& text) {
    using namespace parse_detail;
    Parser p(text);
    p.skip_newlines();

    // --- equation line: lhs = rhs
    // Determine 1D/2D by scanning the head: "x[m," means 2D.
    {
        size_t i = text.find('x');
        size_t j = text.find('=');
        if (i != std::string::npos && j != std::string::npos) {
            size_t br = text.find('[', i);
            if (br != std::string::npos && br < j) {
                size_t k = br + 1;
                while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
                p.two_d = k < text.size() && text[k] == 'm';
            }
        }
    }

    ExprPtr lhs = p.expr();
    p.expect(Tok::Equals, "'='");
    ExprPtr rhs = p.expr();

    // --- coefficient spec lines
    std::map<std::string, CoeffSpec> specs1;
    std::map<std::string, CoeffField2D> specs2;
    p.skip_newlines();
    while (p.lex.peek().kind != Tok::End) {
        Token name = p.expect(Tok::Ident, "a coefficient name");
        p.expect(Tok::Colon, "':'");
        Token head = p.expect(Tok::Ident, "a coefficient spec");
        if (head.text == "const") {
            Rat v = p.rational_value();
            if (p.two_d)
                specs2[name.text] = CoeffField2D::constant(v);
            else
                specs1[name.text] = CoeffSpec::constant(v);
        } else if (head.text == "periodic") {
            CoeffField2D::Kind axis = CoeffField2D::Kind::PeriodicN;
            if (p.accept(Tok::At)) {
                Token ax = p.expect(Tok::Ident, "axis m or n");
                if (ax.text == "m") {
                    axis = CoeffField2D::Kind::PeriodicM;
                    if (p.accept(Tok::Minus)) {
                        Token n2 = p.expect(Tok::Ident, "n");
                        if (n2.text != "n") throw SyntaxError("expected axis m-n", n2.line, n2.col);
                        axis = CoeffField2D::Kind::PeriodicDiff;
                    } else if (p.accept(Tok::Plus)) {
                        Token n2 = p.expect(Tok::Ident, "n");
                        if (n2.text != "n") throw SyntaxError("expected axis m+n", n2.line, n2.col);
                        axis = CoeffField2D::Kind::PeriodicSum;
                    }
                } else if (ax.text == "n") {
                    axis = CoeffField2D::Kind::PeriodicN;
                } else {
                    throw SyntaxError("unknown periodic axis", ax.line, ax.col);
                }
            }
            p.expect(Tok::LParen, "'('");
            std::vector<Rat> vals;
            vals.push_back(p.rational_value());
            while (p.accept(Tok::Comma)) vals.push_back(p.rational_value());
            p.expect(Tok::RParen, "')'");
            if (p.two_d)
                specs2[name.text] = CoeffField2D::periodic(axis, std::move(vals));
            else
                specs1[name.text] = CoeffSpec::periodic(std::move(vals));
        } else if (head.text == "values") {
            p.expect(Tok::At, "'@'");
            long start = p.signed_int();
            p.expect(Tok::LParen, "'('");
            std::vector<Rat> vals;
            vals.push_back(p.rational_value());
            while (p.accept(Tok::Comma)) vals.push_back(p.rational_value());
            p.expect(Tok::RParen, "')'");
            if (p.two_d) throw SyntaxError("values@ is 1D-only; use grid", head.line, head.col);
            specs1[name.text] = CoeffSpec::tabulated(std::move(vals), static_cast<int>(start));
        } else if (head.text == "table") {
            Token file = p.expect(Tok::String, "a file name");
            if (p.two_d) {
                specs2[name.text] = CoeffField2D::tabulated(load_csv_grid(file.text));
            } else {
                int start = 0;
                auto vals = load_csv_sequence(file.text, start);
                specs1[name.text] = CoeffSpec::tabulated(std::move(vals), start);
            }
        } else if (head.text == "symbolic") {
            p.expect(Tok::LParen, "'('");
            long lo = p.signed_int();
            p.expect(Tok::DotDot, "'..'");
            long hi = p.signed_int();
            p.expect(Tok::RParen, "')'");
            if (p.two_d) throw SyntaxError("symbolic specs are 1D-only", head.line, head.col);
            specs1[name.text] = CoeffSpec::symbolic(static_cast<int>(lo), static_cast<int>(hi));
        } else if (head.text == "grid") {
            std::map<std::pair<int, int>, Rat> t;
            while (p.lex.peek().kind == Tok::Int || p.lex.peek().kind == Tok::Minus) {
                long m = p.signed_int();
                p.expect(Tok::Comma, "','");
                long n = p.signed_int();
                p.expect(Tok::Equals, "'='");
                Rat v = p.rational_value();
                t[{static_cast<int>(m), static_cast<int>(n)}] = v;
            }
            if (!p.two_d) throw SyntaxError("grid specs are 2D-only", head.line, head.col);
            specs2[name.text] = CoeffField2D::tabulated(std::move(t));
        } else {
            throw SyntaxError("unknown coefficient spec \"" + head.text + "\"", head.line, head.col);
        }
        if (p.lex.peek().kind != Tok::End) p.expect(Tok::Newline, "end of statement");
        p.skip_newlines();
    }

    // --- assemble and validate
    auto used_coeffs = [&](const ExprPtr& e) {
        std::set<std::string> used;
        visit(e, [&](const Expr& node) {
            if (node.kind == Expr::Kind::Coeff || node.kind == Expr::Kind::Coeff2D)
                used.insert(node.name);
        });
        return used;
    };

    if (p.two_d) {
        if (lhs->kind != Expr::Kind::Var2D || lhs->dm != 0 || lhs->dn != 0)
            throw SyntaxError("lattice equations must define x[m,n]", 1, 1);
        bool bad = false;
        visit(rhs, [&](const Expr& e) {
            if (e.kind == Expr::Kind::Var2D) {
                bool sw = (e.dm == -1 && e.dn == -1) || (e.dm == 0 && e.dn == -1) || (e.dm == -1 && e.dn == 0);
                if (!sw) bad = true;
            }
        });
        if (bad)
            throw SyntaxError("lattice right-hand side may only use the three southwestern neighbours",
                              1, 1);
        LatticeDef def;
        def.rhs = rhs;
        def.coeffs = std::move(specs2);
        for (const auto& name : used_coeffs(rhs)) {
            if (!def.coeffs.count(name))
                throw Error(ErrorKind::unbound_symbol, "unbound coefficient symbol \"" + name + "\"");
        }
        return def;
    }

    // 1D: solve the equation for the highest shift of x
    int hi = std::numeric_limits<int>::min();
    auto scan_hi = [&hi](const ExprPtr& e) {
        visit(e, [&hi](const Expr& node) {
            if (node.kind == Expr::Kind::Var) hi = std::max(hi, node.shift);
        });
    };
    scan_hi(lhs);
    scan_hi(rhs);
    if (hi == std::numeric_limits<int>::min())
        throw SyntaxError("no iterate x[...] in the equation", 1, 1);

    auto contains_hi = [&](const ExprPtr& e) {
        bool found = false;
        visit(e, [&](const Expr& node) {
            if (node.kind == Expr::Kind::Var && node.shift == hi) found = true;
        });
        return found;
    };

    ExprPtr update;
    if (contains_hi(rhs)) {
        if (contains_hi(lhs))
            throw SyntaxError("defining iterate appears on both sides", 1, 1);
        std::swap(lhs, rhs);
    }
    // now hi occurs in lhs only
    if (lhs->kind == Expr::Kind::Var && lhs->shift == hi) {
        update = rhs;
    } else if (lhs->kind == Expr::Kind::Mul && lhs->a->kind == Expr::Kind::Var &&
               lhs->a->shift == hi && !contains_hi(lhs->b)) {
        update = Expr::binary(Expr::Kind::Div, rhs, lhs->b);
    } else if (lhs->kind == Expr::Kind::Mul && lhs->b->kind == Expr::Kind::Var &&
               lhs->b->shift == hi && !contains_hi(lhs->a)) {
        update = Expr::binary(Expr::Kind::Div, rhs, lhs->a);
    } else if (lhs->kind == Expr::Kind::Add && lhs->a->kind == Expr::Kind::Var &&
               lhs->a->shift == hi && !contains_hi(lhs->b)) {
        update = Expr::binary(Expr::Kind::Sub, rhs, lhs->b);
    } else if (lhs->kind == Expr::Kind::Add && lhs->b->kind == Expr::Kind::Var &&
               lhs->b->shift == hi && !contains_hi(lhs->a)) {
        update = Expr::binary(Expr::Kind::Sub, rhs, lhs->a);
    } else if (lhs->kind == Expr::Kind::Sub && lhs->a->kind == Expr::Kind::Var &&
               lhs->a->shift == hi && !contains_hi(lhs->b)) {
        update = Expr::binary(Expr::Kind::Add, rhs, lhs->b);
    } else {
        throw SyntaxError(
            "cannot solve the equation for the highest iterate as a rational expression", 1, 1);
    }

    // normalize shifts so the lowest iterate shift is -1
    int lo = hi;
    visit(update, [&](const Expr& node) {
        if (node.kind == Expr::Kind::Var) lo = std::min(lo, node.shift);
    });
    int delta = -1 - lo;

    std::function<ExprPtr(const ExprPtr&)> translate = [&](const ExprPtr& e) -> ExprPtr {
        if (!e) return nullptr;
        auto c = std::make_shared<Expr>(*e);
        if (c->kind == Expr::Kind::Var || c->kind == Expr::Kind::Coeff) c->shift += delta;
        c->a = translate(e->a);
        c->b = translate(e->b);
        return c;
    };
    if (delta != 0) update = translate(update);

    MappingDef def;
    def.hi_shift = hi + delta;
    def.lo_shift = -1;
    def.rhs = update;
    def.coeffs = std::move(specs1);
    if (def.hi_shift <= def.lo_shift)
        throw SyntaxError("recurrence must advance the iterate", 1, 1);
    bool defines_self = false;
    visit(def.rhs, [&](const Expr& e) {
        if (e.kind == Expr::Kind::Var && e.shift >= def.hi_shift) defines_self = true;
    });
    if (defines_self)
        throw SyntaxError("defining iterate appears in the right-hand side", 1, 1);
    for (const auto& name : used_coeffs(def.rhs)) {
        if (!def.coeffs.count(name))
            throw Error(ErrorKind::unbound_symbol, "unbound coefficient symbol \"" + name + "\"");
    }
    return def;
}

inline MappingDef parse_mapping_1d(const std::string& text) {
    ParsedDef d = parse_mapping(text);
    if (!std::holds_alternative<MappingDef>(d))
        throw Error(ErrorKind::invalid_input, "expected a 1D mapping, found a lattice rule");
    return std::get<MappingDef>(d);
}

inline LatticeDef parse_lattice(const std::string& text) {
    ParsedDef d = parse_mapping(text);
    if (!std::holds_alternative<LatticeDef>(d))
        throw Error(ErrorKind::invalid_input, "expected a lattice rule, found a 1D mapping");
    return std::get<LatticeDef>(d);
}

}  // namespace entropyforge::dsl

#endif
