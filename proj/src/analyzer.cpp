// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#include "probbounds/analyzer.hpp"

#include <stdexcept>
#include <string>

namespace probbounds {

namespace {

// Values of x satisfying `x op y` for some y in `bound`, intersected with x.
std::optional<Interval> refine(const Interval& x, CmpOp op, const Interval& bound) {
    const NumKind k = x.kind();
    const ExtRational ninf = ExtRational::neg_inf();
    const ExtRational pinf = ExtRational::pos_inf();
    switch (op) {
    case CmpOp::Le: return meet(x, Interval::of(ninf, bound.hi(), k));
    case CmpOp::Ge: return meet(x, Interval::of(bound.lo(), pinf, k));
    case CmpOp::Lt: {
        if (k == NumKind::Int) {
            const ExtRational hi = bound.hi().is_finite() ? ExtRational(bound.hi().value().ceil() - 1) : bound.hi();
            const auto limit = Interval::make(ninf, hi, k);
            return limit ? meet(x, *limit) : std::nullopt;
        }
        auto m = meet(x, Interval::of(ninf, bound.hi(), k));
        if (m && m->is_point() && m->hi() == bound.hi()) {
            return std::nullopt;
        }
        return m;
    }
    case CmpOp::Gt: {
        if (k == NumKind::Int) {
            const ExtRational lo = bound.lo().is_finite() ? ExtRational(bound.lo().value().floor() + 1) : bound.lo();
            const auto limit = Interval::make(lo, pinf, k);
            return limit ? meet(x, *limit) : std::nullopt;
        }
        auto m = meet(x, Interval::of(bound.lo(), pinf, k));
        if (m && m->is_point() && m->lo() == bound.lo()) {
            return std::nullopt;
        }
        return m;
    }
    case CmpOp::Eq: return meet(x, bound);
    case CmpOp::Ne: {
        if (!bound.is_point()) {
            return x;
        }
        if (x.is_point() && x.lo() == bound.lo()) {
            return std::nullopt;
        }
        if (k == NumKind::Int) {
            const ExtRational one(1);
            const ExtRational lo = x.lo() == bound.lo() ? x.lo() + one : x.lo();
            const ExtRational hi = x.hi() == bound.hi() ? x.hi() - one : x.hi();
            return Interval::make(lo, hi, k);
        }
        return x;
    }
    }
    return x;
}

bool leq(const AbstractState& a, const AbstractState& b) {
    if (!a) {
        return true;
    }
    if (!b) {
        return false;
    }
    for (std::size_t i = 0; i < a->size(); ++i) {
        if (!(*b)[i].contains((*a)[i])) {
            return false;
        }
    }
    return true;
}

class Analyzer {
  public:
    Analyzer(const Program& p, const AnalyzerOptions& opts) : prog_(p), opts_(opts), xfer_(p, opts.domain) {}

    AbstractOutput run(const std::vector<Interval>& box) {
        if (box.size() != prog_.num_params) {
            throw std::invalid_argument("input box has " + std::to_string(box.size()) + " intervals, program '" +
                                        prog_.name + "' has " + std::to_string(prog_.num_params) + " parameters");
        }
        AbstractEnv env;
        env.reserve(prog_.vars.size());
        for (std::size_t i = 0; i < prog_.vars.size(); ++i) {
            const NumKind k = prog_.vars[i].kind;
            env.push_back(i < box.size() ? xfer_.store(box[i], k) : Interval::top(k));
        }
        const AbstractState out = exec(prog_.body, env);
        std::vector<Interval> numeric;
        if (out) {
            numeric.push_back(xfer_.store(xfer_.eval(*prog_.result, *out), prog_.result->kind));
        }
        return {std::move(numeric), opts_.partial_correctness || loop_reached_};
    }

  private:
    AbstractState exec(const Block& block, AbstractState state) {
        for (const auto& s : block) {
            if (!state) {
                return state;
            }
            if (const auto* a = std::get_if<Assign>(&s.node)) {
                state = xfer_.assign(*a, std::move(*state));
            } else if (const auto* w = std::get_if<While>(&s.node)) {
                state = exec_while(*w, state);
            } else {
                const auto& i = std::get<If>(s.node);
                AbstractState taken = exec(i.then_block, xfer_.assume(i.cond, *state));
                AbstractState skipped = exec(i.else_block, xfer_.assume(Cond{negate(i.cond.op), i.cond.lhs, i.cond.rhs}, *state));
                state = join(taken, skipped);
            }
        }
        return state;
    }

    AbstractState exec_while(const While& w, const AbstractState& entry) {
        loop_reached_ = true;
        AbstractState head = entry;
        for (unsigned iter = 0;; ++iter) {
            AbstractState body_out = exec(w.body, xfer_.assume(w.cond, *head));
            AbstractState next = join(entry, body_out);
            if (leq(next, head)) {
                break;
            }
            AbstractEnv merged = *join(head, next);
            if (iter >= opts_.unroll) {
                for (std::size_t v = 0; v < merged.size(); ++v) {
                    merged[v] = xfer_.store(widen((*head)[v], merged[v]), prog_.vars[v].kind);
                }
            }
            head = std::move(merged);
        }
        return xfer_.assume(Cond{negate(w.cond.op), w.cond.lhs, w.cond.rhs}, *head);
    }

    const Program& prog_;
    AnalyzerOptions opts_;
    IntervalTransfer xfer_;
    bool loop_reached_ = false;
};

} // namespace

const char* to_string(ValueDomain d) { return d == ValueDomain::Interval ? "interval" : "sign"; }

Interval IntervalTransfer::eval(const Expr& e, const AbstractEnv& env) const {
    if (const auto* v = std::get_if<VarRef>(&e.node)) {
        return env[v->slot];
    }
    if (const auto* l = std::get_if<Literal>(&e.node)) {
        return Interval::point(l->value, e.kind);
    }
    if (const auto* n = std::get_if<Negate>(&e.node)) {
        return neg(eval(*n->operand, env));
    }
    const auto& b = std::get<Binary>(e.node);
    const Interval lhs = eval(*b.lhs, env);
    const Interval rhs = eval(*b.rhs, env);
    switch (b.op) {
    case BinOp::Add: return add(lhs, rhs);
    case BinOp::Sub: return sub(lhs, rhs);
    case BinOp::Mul: return mul(lhs, rhs);
    }
    return lhs;
}

Interval IntervalTransfer::store(const Interval& v, NumKind kind) const {
    Interval out = v.kind() == kind ? v : Interval::of(v.lo(), v.hi(), kind);
    return domain_ == ValueDomain::Sign ? sign_hull(out) : out;
}

AbstractEnv IntervalTransfer::assign(const Assign& a, AbstractEnv env) const {
    env[a.slot] = store(eval(*a.value, env), prog_.vars[a.slot].kind);
    return env;
}

AbstractState IntervalTransfer::assume(const Cond& c, AbstractEnv env) const {
    const Interval lhs = eval(*c.lhs, env);
    const Interval rhs = eval(*c.rhs, env);
    if (!refine(lhs, c.op, rhs)) {
        return std::nullopt;
    }
    if (const auto* v = std::get_if<VarRef>(&c.lhs->node)) {
        auto r = refine(env[v->slot], c.op, rhs);
        if (!r) {
            return std::nullopt;
        }
        env[v->slot] = store(*r, prog_.vars[v->slot].kind);
    }
    if (const auto* v = std::get_if<VarRef>(&c.rhs->node)) {
        auto r = refine(env[v->slot], mirror(c.op), lhs);
        if (!r) {
            return std::nullopt;
        }
        env[v->slot] = store(*r, prog_.vars[v->slot].kind);
    }
    return env;
}

AbstractState join(const AbstractState& a, const AbstractState& b) {
    if (!a) {
        return b;
    }
    if (!b) {
        return a;
    }
    AbstractEnv out;
    out.reserve(a->size());
    for (std::size_t i = 0; i < a->size(); ++i) {
        out.push_back(join((*a)[i], (*b)[i]));
    }
    return out;
}

AbstractOutput interval_analyze(const Program& p, const std::vector<Interval>& input_box, const AnalyzerOptions& opts) {
    return Analyzer(p, opts).run(input_box);
}

AbstractOutput sign_analyze(const Program& p, const std::vector<Interval>& input_signs, const AnalyzerOptions& opts) {
    if (!p.all_int()) {
        throw std::invalid_argument("sign analysis needs an int program; '" + p.name + "' has real values");
    }
    AnalyzerOptions o = opts;
    o.domain = ValueDomain::Sign;
    return Analyzer(p, o).run(input_signs);
}

Interval sign_negative() { return Interval::of(ExtRational::neg_inf(), -1, NumKind::Int); }
Interval sign_zero() { return Interval::point(0, NumKind::Int); }
Interval sign_positive() { return Interval::of(1, ExtRational::pos_inf(), NumKind::Int); }

} // namespace probbounds
