// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <variant>

#include "probbounds/ast.hpp"
#include "probbounds/rational.hpp"

namespace probbounds {

/// Execution ran out of steps. This is "unknown within budget", never a
/// claim of divergence.
struct BudgetExceeded {
    std::uint64_t steps;
    friend bool operator==(const BudgetExceeded&, const BudgetExceeded&) = default;
};

struct ConcreteResult {
    std::variant<Rational, BudgetExceeded> outcome;

    [[nodiscard]] bool has_value() const { return std::holds_alternative<Rational>(outcome); }
    [[nodiscard]] const Rational& value() const { return std::get<Rational>(outcome); }
    friend bool operator==(const ConcreteResult&, const ConcreteResult&) = default;
};

/// Exact small-step interpreter. Every executed assignment and every branch
/// or loop test costs one step; exceeding `budget` yields BudgetExceeded.
/// Throws std::invalid_argument on arity mismatch, a non-integer argument
/// for an int parameter, or budget 0.
ConcreteResult eval(const Program& p, std::span<const Rational> args, std::uint64_t budget);

} // namespace probbounds
