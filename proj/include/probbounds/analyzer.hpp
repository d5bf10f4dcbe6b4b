// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "probbounds/ast.hpp"
#include "probbounds/interval.hpp"

namespace probbounds {

/// One interval per program variable slot.
using AbstractEnv = std::vector<Interval>;
/// nullopt is the unreachable state.
using AbstractState = std::optional<AbstractEnv>;

enum class ValueDomain : std::uint8_t { Interval, Sign };

const char* to_string(ValueDomain d);

struct AnalyzerOptions {
    ValueDomain domain = ValueDomain::Interval;
    /// Loop heads are joined this many times before widening kicks in.
    unsigned unroll = 3;
    /// Keep bottom in every result, as a partial-correctness analysis does,
    /// even for loop-free programs.
    bool partial_correctness = false;
};

/// Interval transfer functions shared by the analyzer and the
/// pair-propagation comparison.
class IntervalTransfer {
  public:
    IntervalTransfer(const Program& p, ValueDomain domain) : prog_(p), domain_(domain) {}

    [[nodiscard]] Interval eval(const Expr& e, const AbstractEnv& env) const;
    /// Refines env by the condition; nullopt when it cannot hold.
    [[nodiscard]] AbstractState assume(const Cond& c, AbstractEnv env) const;
    [[nodiscard]] AbstractEnv assign(const Assign& a, AbstractEnv env) const;
    /// Applies the domain's abstraction to a value before it is stored.
    [[nodiscard]] Interval store(const Interval& v, NumKind kind) const;

  private:
    const Program& prog_;
    ValueDomain domain_;
};

AbstractState join(const AbstractState& a, const AbstractState& b);

/// Forward interval analysis of `p` on an input box (one interval per
/// parameter). Sound for every concrete run that returns: its value lies in
/// the numeric part. may_diverge is false only when no loop is reachable.
AbstractOutput interval_analyze(const Program& p, const std::vector<Interval>& input_box,
                                const AnalyzerOptions& opts = {});

/// Sign analysis: interval_analyze over the sign sub-lattice. `p` must be an
/// int program; input intervals are first abstracted to signs.
AbstractOutput sign_analyze(const Program& p, const std::vector<Interval>& input_signs,
                            const AnalyzerOptions& opts = {});

/// The sign encodings used by sign tables: Z- = [-inf,-1], {0}, Z+ = [1,inf].
Interval sign_negative();
Interval sign_zero();
Interval sign_positive();

} // namespace probbounds
