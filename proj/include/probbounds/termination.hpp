// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string_view>

#include "probbounds/ast.hpp"
#include "probbounds/bounds.hpp"
#include "probbounds/interval.hpp"
#include "probbounds/partition.hpp"

namespace probbounds {

enum class Verdict : std::uint8_t { Terminates, Unknown };

const char* to_string(Verdict v);
Verdict parse_verdict(std::string_view s);

/// Per-cell termination verdicts. Cells absent from `cells` take `fallback`;
/// with no fallback every cell must be listed.
struct TerminationFacts {
    std::optional<Verdict> fallback = Verdict::Unknown;
    std::map<std::size_t, Verdict> cells;

    static TerminationFacts all(Verdict v) { return {v, {}}; }
    /// Throws TableError when the cell has no verdict.
    [[nodiscard]] Verdict at(std::size_t cell) const;
};

/// Entry per cell: `value_domain` with bottom unless the cell terminates.
ImgTable facts_to_table(const TerminationFacts& facts, std::shared_ptr<const InputPartition> partition,
                        const AbstractOutput& value_domain);

/// Terminates exactly when the program has no loop.
Verdict syntactic_check(const Program& p);

} // namespace probbounds
