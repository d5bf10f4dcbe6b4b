// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "probbounds/analyzer.hpp"
#include "probbounds/ast.hpp"
#include "probbounds/bounds.hpp"
#include "probbounds/partition.hpp"
#include "probbounds/termination.hpp"

namespace probbounds::app {

/// Either an explicit event or a preset that expands to several.
struct EventSpec {
    std::string preset; // "", "sign-powerset" or "unit-bins"
    std::string name;
    std::string intervals;
    bool bottom = false;
    // unit-bins, as rational strings
    std::string from;
    std::string to;
    std::string step = "1";
};

struct PartitionSpec {
    PartitionMode mode = PartitionMode::ContinuousReal;
    std::vector<std::string> names; // empty: the program's parameter names
    // grid
    std::vector<std::string> domain;
    std::vector<std::uint32_t> grid;
    // explicit cells
    std::vector<std::vector<std::string>> cell_boxes;
    std::vector<std::string> cell_weights;
};

struct TerminationSpec {
    enum class Source : std::uint8_t { None, Syntactic, Facts };
    Source source = Source::None;
    TerminationFacts facts;
};

struct OracleSpec {
    std::string method = "none"; // none, mc, exhaustive
    std::uint64_t samples = 100000;
    std::uint64_t seed = 0;
    double confidence = 0.99;
    std::uint64_t budget = 100000;
};

struct AnalysisConfig {
    std::filesystem::path base_dir; // relative paths resolve against this
    std::string program;
    PartitionSpec partition;
    std::optional<ValueDomain> domain; // built-in analysis
    bool partial_correctness = false;
    unsigned unroll = 3;
    std::vector<std::string> tables;
    TerminationSpec termination;
    BoundaryPolicy boundaries = BoundaryPolicy::Closed;
    std::vector<EventSpec> events;
    OracleSpec oracle;
    bool compare_monniaux = false;
    std::uint32_t refine = 1;
};

/// Validates a schema-1 document. Throws ConfigError.
AnalysisConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);
AnalysisConfig load_config(const std::filesystem::path& file);
/// Normalized document; parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const AnalysisConfig& c);

/// Everything a command needs, with files read and presets expanded.
struct Resolved {
    Program program;
    std::shared_ptr<const InputPartition> partition;
    NumKind output_kind = NumKind::Real;
    std::vector<OutputEvent> events;
};

/// Reads the program and builds partition and events. Missing files and
/// bad specs throw ConfigError; program syntax errors throw ParseError.
Resolved resolve(const AnalysisConfig& c);

/// The image table the config asks for: external tables or the built-in
/// analysis, combined with termination facts when present.
ImgTable build_image_table(const AnalysisConfig& c, const Resolved& r);

std::string read_text(const std::filesystem::path& p);

} // namespace probbounds::app
