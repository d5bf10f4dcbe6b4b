// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#include "probbounds/parser.hpp"

#include <cctype>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "probbounds/errors.hpp"

namespace probbounds {

namespace {

enum class Tok {
    Ident,
    Number,
    KwInt,
    KwDouble,
    KwWhile,
    KwIf,
    KwElse,
    KwReturn,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Semi,
    Comma,
    Assign,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
    Minus,
    Star,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space_and_comments();
            if (pos_ >= src_.size()) {
                out.push_back({Tok::End, "", line_, col_});
                return out;
            }
            out.push_back(next());
        }
    }

  private:
    char peek(std::size_t ahead = 0) const { return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0'; }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            if (std::isspace(static_cast<unsigned char>(peek())) != 0) {
                advance();
            } else if (peek() == '/' && peek(1) == '/') {
                while (pos_ < src_.size() && peek() != '\n') {
                    advance();
                }
            } else if (peek() == '/' && peek(1) == '*') {
                const std::size_t line = line_;
                const std::size_t col = col_;
                advance();
                advance();
                while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '/')) {
                    advance();
                }
                if (pos_ >= src_.size()) {
                    throw ParseError("unterminated comment", line, col);
                }
                advance();
                advance();
            } else {
                return;
            }
        }
    }

    Token next() {
        const std::size_t line = line_;
        const std::size_t col = col_;
        const char c = peek();
        if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
            std::string word;
            while (std::isalnum(static_cast<unsigned char>(peek())) != 0 || peek() == '_') {
                word += peek();
                advance();
            }
            static const std::unordered_map<std::string, Tok> keywords = {
                {"int", Tok::KwInt},     {"double", Tok::KwDouble}, {"while", Tok::KwWhile},
                {"if", Tok::KwIf},       {"else", Tok::KwElse},     {"return", Tok::KwReturn},
            };
            const auto it = keywords.find(word);
            return {it == keywords.end() ? Tok::Ident : it->second, word, line, col};
        }
        if (std::isdigit(static_cast<unsigned char>(c)) != 0 ||
            (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))) != 0)) {
            std::string num;
            bool seen_dot = false;
            while (std::isdigit(static_cast<unsigned char>(peek())) != 0 || (peek() == '.' && !seen_dot)) {
                seen_dot = seen_dot || peek() == '.';
                num += peek();
                advance();
            }
            if (std::isalpha(static_cast<unsigned char>(peek())) != 0) {
                throw ParseError("malformed number literal", line, col);
            }
            return {Tok::Number, num, line, col};
        }
        auto two = [&](char second, Tok yes, Tok no) {
            advance();
            if (peek() == second) {
                advance();
                return Token{yes, "", line, col};
            }
            return Token{no, "", line, col};
        };
        switch (c) {
        case '(': advance(); return {Tok::LParen, "(", line, col};
        case ')': advance(); return {Tok::RParen, ")", line, col};
        case '{': advance(); return {Tok::LBrace, "{", line, col};
        case '}': advance(); return {Tok::RBrace, "}", line, col};
        case ';': advance(); return {Tok::Semi, ";", line, col};
        case ',': advance(); return {Tok::Comma, ",", line, col};
        case '+': advance(); return {Tok::Plus, "+", line, col};
        case '-': advance(); return {Tok::Minus, "-", line, col};
        case '*': advance(); return {Tok::Star, "*", line, col};
        case '=': return two('=', Tok::Eq, Tok::Assign);
        case '<': return two('=', Tok::Le, Tok::Lt);
        case '>': return two('=', Tok::Ge, Tok::Gt);
        case '!': {
            advance();
            if (peek() != '=') {
                throw ParseError("expected '=' after '!'", line, col);
            }
            advance();
            return {Tok::Ne, "!=", line, col};
        }
        default: break;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

const char* describe(Tok t) {
    switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::KwInt: return "'int'";
    case Tok::KwDouble: return "'double'";
    case Tok::KwWhile: return "'while'";
    case Tok::KwIf: return "'if'";
    case Tok::KwElse: return "'else'";
    case Tok::KwReturn: return "'return'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::Assign: return "'='";
    case Tok::Eq: return "'=='";
    case Tok::Ne: return "'!='";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::End: return "end of input";
    }
    return "token";
}

class Parser {
  public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Program program() {
        prog_.return_kind = type();
        if (accept(Tok::LParen)) {
            prog_.name = expect(Tok::Ident).text;
            expect(Tok::RParen);
        } else {
            prog_.name = expect(Tok::Ident).text;
        }
        expect(Tok::LParen);
        if (!at(Tok::RParen)) {
            NumKind kind = type();
            declare(expect(Tok::Ident), kind);
            while (accept(Tok::Comma)) {
                if (at(Tok::KwInt) || at(Tok::KwDouble)) {
                    kind = type();
                }
                declare(expect(Tok::Ident), kind);
            }
        }
        prog_.num_params = prog_.vars.size();
        assigned_.assign(prog_.vars.size(), true);
        expect(Tok::RParen);
        expect(Tok::LBrace);

        while (!at(Tok::KwReturn)) {
            if (at(Tok::KwInt) || at(Tok::KwDouble)) {
                declaration(prog_.body);
            } else if (at(Tok::End) || at(Tok::RBrace)) {
                throw error("missing 'return' at end of body");
            } else {
                statement(prog_.body);
            }
        }
        expect(Tok::KwReturn);
        prog_.result = expr();
        if (prog_.return_kind == NumKind::Int && prog_.result->kind != NumKind::Int) {
            throw error("int function returns a real-valued expression");
        }
        expect(Tok::Semi);
        expect(Tok::RBrace);
        if (!at(Tok::End)) {
            throw error(std::string("unexpected ") + describe(cur().kind) + " after function body");
        }
        return std::move(prog_);
    }

  private:
    const Token& cur() const { return toks_[pos_]; }
    bool at(Tok t) const { return cur().kind == t; }

    bool accept(Tok t) {
        if (at(t)) {
            ++pos_;
            return true;
        }
        return false;
    }

    ParseError error(const std::string& msg) const { return {msg, cur().line, cur().column}; }
    ParseError error_at(const Token& t, const std::string& msg) const { return {msg, t.line, t.column}; }

    Token expect(Tok t) {
        if (!at(t)) {
            throw error(std::string("expected ") + describe(t) + ", found " + describe(cur().kind));
        }
        return toks_[pos_++];
    }

    NumKind type() {
        if (accept(Tok::KwInt)) {
            return NumKind::Int;
        }
        if (accept(Tok::KwDouble)) {
            return NumKind::Real;
        }
        throw error(std::string("expected type 'int' or 'double', found ") + describe(cur().kind));
    }

    std::size_t declare(const Token& name, NumKind kind) {
        if (slots_.contains(name.text)) {
            throw error_at(name, "redeclaration of '" + name.text + "'");
        }
        const std::size_t slot = prog_.vars.size();
        prog_.vars.push_back({name.text, kind});
        slots_.emplace(name.text, slot);
        assigned_.push_back(false);
        return slot;
    }

    std::size_t lookup(const Token& name) const {
        const auto it = slots_.find(name.text);
        if (it == slots_.end()) {
            throw error_at(name, "use of undeclared variable '" + name.text + "'");
        }
        return it->second;
    }

    void declaration(Block& out) {
        const NumKind kind = type();
        do {
            const Token name = expect(Tok::Ident);
            const std::size_t slot = declare(name, kind);
            if (accept(Tok::Assign)) {
                out.push_back(assignment_to(slot, name));
            }
        } while (accept(Tok::Comma));
        expect(Tok::Semi);
    }

    Stmt assignment_to(std::size_t slot, const Token& name) {
        ExprPtr value = expr();
        if (prog_.vars[slot].kind == NumKind::Int && value->kind != NumKind::Int) {
            throw error_at(name, "cannot assign a real-valued expression to int variable '" + name.text + "'");
        }
        assigned_[slot] = true;
        return Stmt{Assign{slot, std::move(value)}};
    }

    Block body() {
        Block b;
        if (accept(Tok::LBrace)) {
            while (!accept(Tok::RBrace)) {
                if (at(Tok::KwInt) || at(Tok::KwDouble)) {
                    throw error("declarations are only allowed at function level");
                }
                if (at(Tok::End)) {
                    throw error("unterminated block");
                }
                statement(b);
            }
        } else {
            statement(b);
        }
        return b;
    }

    void statement(Block& out) {
        if (at(Tok::LBrace)) {
            Block inner = body();
            for (auto& s : inner) {
                out.push_back(std::move(s));
            }
            return;
        }
        if (accept(Tok::KwWhile)) {
            expect(Tok::LParen);
            Cond c = cond();
            expect(Tok::RParen);
            const auto before = assigned_;
            Block b = body();
            assigned_ = before;
            out.push_back(Stmt{While{std::move(c), std::move(b)}});
            return;
        }
        if (accept(Tok::KwIf)) {
            expect(Tok::LParen);
            Cond c = cond();
            expect(Tok::RParen);
            const auto before = assigned_;
            Block then_block = body();
            const auto after_then = assigned_;
            assigned_ = before;
            Block else_block;
            if (accept(Tok::KwElse)) {
                else_block = body();
                for (std::size_t i = 0; i < assigned_.size(); ++i) {
                    assigned_[i] = assigned_[i] && after_then[i];
                }
            }
            out.push_back(Stmt{If{std::move(c), std::move(then_block), std::move(else_block)}});
            return;
        }
        if (at(Tok::Ident)) {
            const Token name = toks_[pos_++];
            const std::size_t slot = lookup(name);
            expect(Tok::Assign);
            out.push_back(assignment_to(slot, name));
            expect(Tok::Semi);
            return;
        }
        throw error(std::string("expected statement, found ") + describe(cur().kind));
    }

    Cond cond() {
        ExprPtr lhs = expr();
        CmpOp op{};
        switch (cur().kind) {
        case Tok::Eq: op = CmpOp::Eq; break;
        case Tok::Ne: op = CmpOp::Ne; break;
        case Tok::Lt: op = CmpOp::Lt; break;
        case Tok::Le: op = CmpOp::Le; break;
        case Tok::Gt: op = CmpOp::Gt; break;
        case Tok::Ge: op = CmpOp::Ge; break;
        default: throw error(std::string("expected comparison operator, found ") + describe(cur().kind));
        }
        ++pos_;
        ExprPtr rhs = expr();
        return {op, std::move(lhs), std::move(rhs)};
    }

    static NumKind join_kind(const Expr& a, const Expr& b) {
        return a.kind == NumKind::Int && b.kind == NumKind::Int ? NumKind::Int : NumKind::Real;
    }

    ExprPtr expr() {
        ExprPtr lhs = term();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            const BinOp op = at(Tok::Plus) ? BinOp::Add : BinOp::Sub;
            ++pos_;
            ExprPtr rhs = term();
            const NumKind k = join_kind(*lhs, *rhs);
            lhs = std::make_shared<const Expr>(Expr{Binary{op, std::move(lhs), std::move(rhs)}, k});
        }
        return lhs;
    }

    ExprPtr term() {
        ExprPtr lhs = unary();
        while (accept(Tok::Star)) {
            ExprPtr rhs = unary();
            const NumKind k = join_kind(*lhs, *rhs);
            lhs = std::make_shared<const Expr>(Expr{Binary{BinOp::Mul, std::move(lhs), std::move(rhs)}, k});
        }
        return lhs;
    }

    ExprPtr unary() {
        if (accept(Tok::Minus)) {
            ExprPtr operand = unary();
            const NumKind k = operand->kind;
            return std::make_shared<const Expr>(Expr{Negate{std::move(operand)}, k});
        }
        return primary();
    }

    ExprPtr primary() {
        if (at(Tok::Number)) {
            const Token t = toks_[pos_++];
            const bool is_decimal = t.text.find('.') != std::string::npos;
            return std::make_shared<const Expr>(
                Expr{Literal{Rational::parse(t.text)}, is_decimal ? NumKind::Real : NumKind::Int});
        }
        if (at(Tok::Ident)) {
            const Token t = toks_[pos_++];
            const std::size_t slot = lookup(t);
            if (!assigned_[slot]) {
                throw error_at(t, "variable '" + t.text + "' may be read before it is assigned");
            }
            return std::make_shared<const Expr>(Expr{VarRef{slot}, prog_.vars[slot].kind});
        }
        if (accept(Tok::LParen)) {
            ExprPtr e = expr();
            expect(Tok::RParen);
            return e;
        }
        throw error(std::string("expected expression, found ") + describe(cur().kind));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Program prog_;
    std::unordered_map<std::string, std::size_t> slots_;
    std::vector<bool> assigned_;
};

} // namespace

Program parse_program(std::string_view text) {
    Lexer lexer(text);
    Parser parser(lexer.run());
    return parser.program();
}

} // namespace probbounds
