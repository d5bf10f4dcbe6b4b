// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#include "probbounds/eval.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace probbounds {

namespace {

struct OutOfBudget {};

class Interpreter {
  public:
    Interpreter(const Program& p, std::uint64_t budget) : prog_(p), budget_(budget), env_(p.vars.size()) {}

    ConcreteResult run(std::span<const Rational> args) {
        for (std::size_t i = 0; i < args.size(); ++i) {
            env_[i] = args[i];
        }
        try {
            exec(prog_.body);
        } catch (const OutOfBudget&) {
            return {BudgetExceeded{budget_}}; // every allowed step was used
        }
        return {value(*prog_.result)};
    }

  private:
    void tick() {
        if (++steps_ > budget_) {
            throw OutOfBudget{};
        }
    }

    Rational value(const Expr& e) const {
        if (const auto* v = std::get_if<VarRef>(&e.node)) {
            return env_[v->slot];
        }
        if (const auto* l = std::get_if<Literal>(&e.node)) {
            return l->value;
        }
        if (const auto* n = std::get_if<Negate>(&e.node)) {
            return -value(*n->operand);
        }
        const auto& b = std::get<Binary>(e.node);
        Rational lhs = value(*b.lhs);
        const Rational rhs = value(*b.rhs);
        switch (b.op) {
        case BinOp::Add: lhs += rhs; break;
        case BinOp::Sub: lhs -= rhs; break;
        case BinOp::Mul: lhs *= rhs; break;
        }
        return lhs;
    }

    bool holds(const Cond& c) const {
        const Rational lhs = value(*c.lhs);
        const Rational rhs = value(*c.rhs);
        switch (c.op) {
        case CmpOp::Eq: return lhs == rhs;
        case CmpOp::Ne: return lhs != rhs;
        case CmpOp::Lt: return lhs < rhs;
        case CmpOp::Le: return lhs <= rhs;
        case CmpOp::Gt: return lhs > rhs;
        case CmpOp::Ge: return lhs >= rhs;
        }
        return false;
    }

    void exec(const Block& block) {
        for (const auto& s : block) {
            if (const auto* a = std::get_if<Assign>(&s.node)) {
                tick();
                env_[a->slot] = value(*a->value);
            } else if (const auto* w = std::get_if<While>(&s.node)) {
                while (true) {
                    tick();
                    if (!holds(w->cond)) {
                        break;
                    }
                    exec(w->body);
                }
            } else {
                const auto& i = std::get<If>(s.node);
                tick();
                exec(holds(i.cond) ? i.then_block : i.else_block);
            }
        }
    }

    const Program& prog_;
    std::uint64_t budget_;
    std::uint64_t steps_ = 0;
    std::vector<Rational> env_;
};

} // namespace

ConcreteResult eval(const Program& p, std::span<const Rational> args, std::uint64_t budget) {
    if (args.size() != p.num_params) {
        throw std::invalid_argument("program '" + p.name + "' expects " + std::to_string(p.num_params) +
                                    " arguments, got " + std::to_string(args.size()));
    }
    if (budget == 0) {
        throw std::invalid_argument("step budget must be at least 1");
    }
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (p.vars[i].kind == NumKind::Int && !args[i].is_integer()) {
            throw std::invalid_argument("non-integer argument " + args[i].str() + " for int parameter '" +
                                        p.vars[i].name + "'");
        }
    }
    return Interpreter(p, budget).run(args);
}

} // namespace probbounds
