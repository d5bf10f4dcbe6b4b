// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#include "probbounds/ast.hpp"

#include <sstream>
#include <stdexcept>

namespace probbounds {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const char* type_keyword(NumKind k) { return k == NumKind::Int ? "int" : "double"; }

// Literals are finite decimals; print them back as decimals so they reparse.
std::string literal_text(const Rational& v, NumKind kind) {
    mpz_class den = v.get().get_den();
    mpz_class num = abs(v.get().get_num());
    std::size_t digits = 0;
    mpz_class scaled_den = 1;
    while (scaled_den % den != 0) {
        scaled_den *= 10;
        ++digits;
        if (digits > 4096) {
            throw std::logic_error("literal is not a finite decimal: " + v.str());
        }
    }
    const mpz_class scaled = num * (scaled_den / den);
    std::string s = scaled.get_str();
    if (digits > 0) {
        if (s.size() <= digits) {
            s.insert(0, digits - s.size() + 1, '0');
        }
        s.insert(s.size() - digits, ".");
    } else if (kind == NumKind::Real) {
        s += ".0";
    }
    return v.sign() < 0 ? "-" + s : s;
}

void print_expr(std::ostream& os, const Program& p, const Expr& e) {
    std::visit(Overloaded{
                   [&](const VarRef& v) { os << p.vars.at(v.slot).name; },
                   [&](const Literal& l) { os << literal_text(l.value, e.kind); },
                   [&](const Negate& n) {
                       os << "(-";
                       print_expr(os, p, *n.operand);
                       os << ")";
                   },
                   [&](const Binary& b) {
                       os << "(";
                       print_expr(os, p, *b.lhs);
                       os << (b.op == BinOp::Add ? " + " : (b.op == BinOp::Sub ? " - " : " * "));
                       print_expr(os, p, *b.rhs);
                       os << ")";
                   },
               },
               e.node);
}

void print_cond(std::ostream& os, const Program& p, const Cond& c) {
    print_expr(os, p, *c.lhs);
    os << ' ' << to_string(c.op) << ' ';
    print_expr(os, p, *c.rhs);
}

void print_block(std::ostream& os, const Program& p, const Block& b, int indent);

void print_stmt(std::ostream& os, const Program& p, const Stmt& s, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    std::visit(Overloaded{
                   [&](const Assign& a) {
                       os << pad << p.vars.at(a.slot).name << " = ";
                       print_expr(os, p, *a.value);
                       os << ";\n";
                   },
                   [&](const While& w) {
                       os << pad << "while (";
                       print_cond(os, p, w.cond);
                       os << ") {\n";
                       print_block(os, p, w.body, indent + 1);
                       os << pad << "}\n";
                   },
                   [&](const If& i) {
                       os << pad << "if (";
                       print_cond(os, p, i.cond);
                       os << ") {\n";
                       print_block(os, p, i.then_block, indent + 1);
                       os << pad << "}";
                       if (!i.else_block.empty()) {
                           os << " else {\n";
                           print_block(os, p, i.else_block, indent + 1);
                           os << pad << "}";
                       }
                       os << "\n";
                   },
               },
               s.node);
}

void print_block(std::ostream& os, const Program& p, const Block& b, int indent) {
    for (const auto& s : b) {
        print_stmt(os, p, s, indent);
    }
}

} // namespace

const char* to_string(NumKind k) { return k == NumKind::Int ? "int" : "real"; }

CmpOp negate(CmpOp op) {
    switch (op) {
    case CmpOp::Eq: return CmpOp::Ne;
    case CmpOp::Ne: return CmpOp::Eq;
    case CmpOp::Lt: return CmpOp::Ge;
    case CmpOp::Le: return CmpOp::Gt;
    case CmpOp::Gt: return CmpOp::Le;
    case CmpOp::Ge: return CmpOp::Lt;
    }
    return op;
}

CmpOp mirror(CmpOp op) {
    switch (op) {
    case CmpOp::Lt: return CmpOp::Gt;
    case CmpOp::Le: return CmpOp::Ge;
    case CmpOp::Gt: return CmpOp::Lt;
    case CmpOp::Ge: return CmpOp::Le;
    default: return op;
    }
}

const char* to_string(CmpOp op) {
    switch (op) {
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    }
    return "?";
}

bool Program::all_int() const {
    for (std::size_t i = 0; i < num_params; ++i) {
        if (vars[i].kind != NumKind::Int) {
            return false;
        }
    }
    return return_kind == NumKind::Int;
}

bool has_loop(const Block& block) {
    for (const auto& s : block) {
        if (std::holds_alternative<While>(s.node)) {
            return true;
        }
        if (const auto* i = std::get_if<If>(&s.node); i != nullptr) {
            if (has_loop(i->then_block) || has_loop(i->else_block)) {
                return true;
            }
        }
    }
    return false;
}

bool has_branch(const Block& block) {
    for (const auto& s : block) {
        if (std::holds_alternative<If>(s.node)) {
            return true;
        }
        if (const auto* w = std::get_if<While>(&s.node); w != nullptr && has_branch(w->body)) {
            return true;
        }
    }
    return false;
}

std::string to_source(const Program& p) {
    std::ostringstream os;
    os << type_keyword(p.return_kind) << ' ' << p.name << '(';
    for (std::size_t i = 0; i < p.num_params; ++i) {
        os << (i == 0 ? "" : ", ") << type_keyword(p.vars[i].kind) << ' ' << p.vars[i].name;
    }
    os << ") {\n";
    for (std::size_t i = p.num_params; i < p.vars.size(); ++i) {
        os << "  " << type_keyword(p.vars[i].kind) << ' ' << p.vars[i].name << ";\n";
    }
    print_block(os, p, p.body, 1);
    os << "  return ";
    print_expr(os, p, *p.result);
    os << ";\n}\n";
    return os.str();
}

std::string to_source(const Program& p, const Expr& e) {
    std::ostringstream os;
    print_expr(os, p, e);
    return os.str();
}

std::string to_source(const Program& p, const Cond& c) {
    std::ostringstream os;
    print_cond(os, p, c);
    return os.str();
}

} // namespace probbounds
