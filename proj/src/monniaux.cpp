// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#include "probbounds/monniaux.hpp"

#include "parallel.hpp"
#include "probbounds/errors.hpp"

namespace probbounds {

namespace {

class PairPropagator {
  public:
    explicit PairPropagator(const Program& p) : prog_(p), xfer_(p, ValueDomain::Interval) {}

    std::vector<AbstractEnv> run(const Box& box) const {
        AbstractEnv env;
        for (std::size_t i = 0; i < prog_.vars.size(); ++i) {
            const NumKind k = prog_.vars[i].kind;
            env.push_back(i < box.size() ? xfer_.store(box[i], k) : Interval::top(k));
        }
        return exec(prog_.body, {std::move(env)});
    }

  private:
    std::vector<AbstractEnv> exec(const Block& block, std::vector<AbstractEnv> envs) const {
        for (const auto& s : block) {
            if (const auto* a = std::get_if<Assign>(&s.node)) {
                for (auto& e : envs) {
                    e = xfer_.assign(*a, std::move(e));
                }
            } else if (std::holds_alternative<While>(s.node)) {
                throw AnalysisError("loops unsupported in comparison mode");
            } else {
                const auto& i = std::get<If>(s.node);
                const Cond negated{negate(i.cond.op), i.cond.lhs, i.cond.rhs};
                std::vector<AbstractEnv> next;
                for (const auto& e : envs) {
                    if (auto f = xfer_.assume(negated, e)) {
                        for (auto& out : exec(i.else_block, {std::move(*f)})) {
                            next.push_back(std::move(out));
                        }
                    }
                    if (auto t = xfer_.assume(i.cond, e)) {
                        for (auto& out : exec(i.then_block, {std::move(*t)})) {
                            next.push_back(std::move(out));
                        }
                    }
                }
                envs = std::move(next);
            }
        }
        return envs;
    }

    const Program& prog_;
    IntervalTransfer xfer_;
};

void check(const Program& p, const InputPartition& partition) {
    if (has_loop(p)) {
        throw AnalysisError("loops unsupported in comparison mode");
    }
    if (partition.dims() != p.num_params) {
        throw AnalysisError("partition has " + std::to_string(partition.dims()) + " dimensions, program '" + p.name +
                            "' takes " + std::to_string(p.num_params) + " parameters");
    }
}

} // namespace

std::vector<WeightedEnv> propagate(const Program& p, const InputPartition& partition) {
    check(p, partition);
    const PairPropagator prop(p);
    std::vector<std::vector<AbstractEnv>> per_cell(partition.size());
    detail::parallel_for(partition.size(), [&](std::size_t c) { per_cell[c] = prop.run(partition.cell(c).box); });
    std::vector<WeightedEnv> out;
    for (std::size_t c = 0; c < per_cell.size(); ++c) {
        for (auto& e : per_cell[c]) {
            out.push_back({std::move(e), partition.cell(c).weight, c});
        }
    }
    return out;
}

std::vector<WeightedEnv> propagate_serial(const Program& p, const InputPartition& partition) {
    check(p, partition);
    const PairPropagator prop(p);
    std::vector<WeightedEnv> out;
    for (std::size_t c = 0; c < partition.size(); ++c) {
        for (auto& e : prop.run(partition.cell(c).box)) {
            out.push_back({std::move(e), partition.cell(c).weight, c});
        }
    }
    return out;
}

Interval result_interval(const Program& p, const AbstractEnv& env) {
    const IntervalTransfer xfer(p, ValueDomain::Interval);
    return xfer.store(xfer.eval(*p.result, env), p.result->kind);
}

Rational monniaux_upper(const Program& p, const std::vector<WeightedEnv>& pairs, const AbstractOutput& event,
                        BoundaryPolicy policy) {
    Rational sum(0);
    for (const auto& w : pairs) {
        if (overlap(AbstractOutput::of(result_interval(p, w.env)), event, policy)) {
            sum += w.weight;
        }
    }
    return sum;
}

} // namespace probbounds
