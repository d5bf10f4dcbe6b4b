// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "probbounds/rational.hpp"

namespace probbounds {

enum class NumKind : std::uint8_t { Int, Real };

const char* to_string(NumKind k);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct VarRef {
    std::size_t slot;
};

struct Literal {
    Rational value;
};

struct Negate {
    ExprPtr operand;
};

enum class BinOp : std::uint8_t { Add, Sub, Mul };

struct Binary {
    BinOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};

/// Expression node. `kind` is Int only when every leaf is int-typed.
struct Expr {
    std::variant<VarRef, Literal, Negate, Binary> node;
    NumKind kind;
};

enum class CmpOp : std::uint8_t { Eq, Ne, Lt, Le, Gt, Ge };

CmpOp negate(CmpOp op);
/// The operator with operands swapped: `a < b` iff `b > a`.
CmpOp mirror(CmpOp op);
const char* to_string(CmpOp op);

struct Cond {
    CmpOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};

struct Stmt;
using Block = std::vector<Stmt>;

struct Assign {
    std::size_t slot;
    ExprPtr value;
};

struct While {
    Cond cond;
    Block body;
};

struct If {
    Cond cond;
    Block then_block;
    Block else_block;
};

struct Stmt {
    std::variant<Assign, While, If> node;
};

struct Variable {
    std::string name;
    NumKind kind;
};

/// A parsed program. Variables live in numbered slots; parameters occupy
/// slots [0, num_params).
struct Program {
    std::string name;
    NumKind return_kind = NumKind::Real;
    std::vector<Variable> vars;
    std::size_t num_params = 0;
    Block body;
    ExprPtr result;

    [[nodiscard]] const Variable& param(std::size_t i) const { return vars.at(i); }
    [[nodiscard]] bool all_int() const;
};

bool has_loop(const Block& block);
inline bool has_loop(const Program& p) { return has_loop(p.body); }
bool has_branch(const Block& block);

/// Canonical source text; parse_program(to_source(p)) reproduces p.
std::string to_source(const Program& p);
std::string to_source(const Program& p, const Expr& e);
std::string to_source(const Program& p, const Cond& c);

} // namespace probbounds
