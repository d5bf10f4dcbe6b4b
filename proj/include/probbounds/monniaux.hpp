// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "probbounds/analyzer.hpp"
#include "probbounds/ast.hpp"
#include "probbounds/bounds.hpp"
#include "probbounds/partition.hpp"
#include "probbounds/rational.hpp"

namespace probbounds {

/// Interval environment carrying the full weight of the cell it came from.
struct WeightedEnv {
    AbstractEnv env;
    Rational weight;
    std::size_t cell = 0;
};

/// Pushes one weighted environment per cell through a loop-free program.
/// At a branch each environment is duplicated, the copies are filtered by the
/// negated and the plain guard (in that order), and empty copies are dropped.
/// Weights are never split. Loops throw AnalysisError. Cells run in parallel.
std::vector<WeightedEnv> propagate(const Program& p, const InputPartition& partition);
std::vector<WeightedEnv> propagate_serial(const Program& p, const InputPartition& partition);

/// Interval of the program's result expression in an exit environment.
Interval result_interval(const Program& p, const AbstractEnv& env);

/// Sum of the weights of exit environments whose result overlaps the event.
/// Not a measure: duplicated environments can push it past 1.
Rational monniaux_upper(const Program& p, const std::vector<WeightedEnv>& pairs, const AbstractOutput& event,
                        BoundaryPolicy policy = BoundaryPolicy::Closed);

} // namespace probbounds
