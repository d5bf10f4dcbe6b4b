// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "probbounds/interval.hpp"
#include "probbounds/rational.hpp"

namespace probbounds {

enum class PartitionMode : std::uint8_t { DiscreteInt, ContinuousReal };

const char* to_string(PartitionMode m);
PartitionMode parse_partition_mode(std::string_view s);
NumKind value_kind(PartitionMode m);

/// A box binds one interval per input dimension, in parameter order.
using Box = std::vector<Interval>;

/// Partition element with its probability mass.
struct Cell {
    Box box;
    Rational weight;
};

/// A finite partition of an input box with exact cell weights summing to 1.
///
/// Discrete cells are pairwise disjoint. Continuous cells may share boundary
/// faces, which carry no mass under the piecewise-constant densities used
/// here.
class InputPartition {
  public:
    /// Equal-width product grid with uniform weights. `subdivisions` has one
    /// entry per dimension.
    static InputPartition grid(std::vector<std::string> names, Box domain, std::vector<std::uint32_t> subdivisions,
                               PartitionMode mode);
    /// Validates and wraps explicit cells. The domain is the bounding hull of
    /// the cells, which must then be covered without gaps or overlaps.
    static InputPartition explicit_cells(std::vector<std::string> names, std::vector<Cell> cells, PartitionMode mode);

    /// Splits every cell into factor^dims equal sub-cells with evenly split
    /// weight. Only grid partitions can be refined.
    [[nodiscard]] InputPartition refine(std::uint32_t factor) const;

    [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
    [[nodiscard]] std::size_t dims() const { return names_.size(); }
    [[nodiscard]] const std::vector<Cell>& cells() const { return cells_; }
    [[nodiscard]] std::size_t size() const { return cells_.size(); }
    [[nodiscard]] const Cell& cell(std::size_t i) const { return cells_.at(i); }
    [[nodiscard]] const Box& domain() const { return domain_; }
    [[nodiscard]] PartitionMode mode() const { return mode_; }
    [[nodiscard]] bool is_grid() const { return subdivisions_.has_value(); }
    [[nodiscard]] const std::optional<std::vector<std::uint32_t>>& subdivisions() const { return subdivisions_; }
    /// Index of the cell whose box was split to produce cell i, when this
    /// partition came from refine().
    [[nodiscard]] const std::vector<std::size_t>& parents() const { return parents_; }

    /// Every cell of *this is contained in some cell of `coarser`.
    [[nodiscard]] bool is_finer_than(const InputPartition& coarser) const;

  private:
    InputPartition() = default;

    std::vector<std::string> names_;
    std::vector<Cell> cells_;
    Box domain_;
    PartitionMode mode_ = PartitionMode::ContinuousReal;
    std::optional<std::vector<std::uint32_t>> subdivisions_;
    std::vector<std::size_t> parents_;
};

/// Number of integer points of a bounded int interval.
Rational integer_count(const Interval& i);

} // namespace probbounds
