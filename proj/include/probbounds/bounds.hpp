// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "probbounds/analyzer.hpp"
#include "probbounds/ast.hpp"
#include "probbounds/interval.hpp"
#include "probbounds/partition.hpp"
#include "probbounds/rational.hpp"

namespace probbounds {

enum class TableProvenance : std::uint8_t { BuiltInInterval, BuiltInSign, External, Combined };

const char* to_string(TableProvenance p);

/// Abstract image of every partition cell, indexed like the partition.
struct ImgTable {
    std::shared_ptr<const InputPartition> partition;
    std::vector<AbstractOutput> entries;
    TableProvenance provenance = TableProvenance::External;
};

/// Runs the analyzer on every cell. Cells are analyzed in parallel.
ImgTable build_table(const Program& p, std::shared_ptr<const InputPartition> partition,
                     const AnalyzerOptions& opts = {});
/// Same table, one cell after another.
ImgTable build_table_serial(const Program& p, std::shared_ptr<const InputPartition> partition,
                            const AnalyzerOptions& opts = {});

/// Reads rows `cell_index ; intervals ; bottom_flag`. Blank lines and lines
/// starting with '#' are skipped. Every cell needs exactly one row.
ImgTable load_table(std::shared_ptr<const InputPartition> partition, std::istream& in, NumKind output_kind);
ImgTable load_table_file(std::shared_ptr<const InputPartition> partition, const std::string& path,
                         NumKind output_kind);
void write_table(const ImgTable& t, std::ostream& out);

/// Cellwise intersection of two tables over the same partition.
ImgTable combine(const ImgTable& a, const ImgTable& b);

struct OutputEvent {
    std::string name;
    AbstractOutput shape;
};

/// Cells whose abstract image overlaps the event, ascending.
std::vector<std::size_t> pre_sharp(const ImgTable& t, const AbstractOutput& event,
                                   BoundaryPolicy policy = BoundaryPolicy::Closed);
Rational upper_bound(const ImgTable& t, const AbstractOutput& event, BoundaryPolicy policy = BoundaryPolicy::Closed);
Rational lower_bound(const ImgTable& t, const AbstractOutput& event);

struct EventBounds {
    std::string name;
    Rational lower;
    Rational upper;
    std::size_t overlapping_cells = 0;
    std::size_t contained_cells = 0;
};

struct BoundsReport {
    std::vector<EventBounds> rows;
    std::size_t partition_size = 0;
    std::string provenance;
};

/// Bounds for each event, in input order. Events are evaluated in parallel.
BoundsReport bounds_report(const ImgTable& t, const std::vector<OutputEvent>& events,
                           BoundaryPolicy policy = BoundaryPolicy::Closed);
BoundsReport bounds_report_serial(const ImgTable& t, const std::vector<OutputEvent>& events,
                                  BoundaryPolicy policy = BoundaryPolicy::Closed);

/// Fixed-point decimal with `digits` fractional digits, rounded half up.
std::string decimal(const Rational& r, int digits = 8);

void write_csv(const BoundsReport& r, std::ostream& out);
/// Quotes a field that contains a comma, quote or newline.
std::string csv_field(const std::string& s);
void write_human(const BoundsReport& r, std::ostream& out);

} // namespace probbounds
