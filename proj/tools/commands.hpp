// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "config.hpp"

namespace probbounds::app {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,   // bad config, missing file, usage error
    kExitAnalysis = 3, // program, table, analysis or validation error
    kExitBreach = 4,   // oracle estimate outside the derived bounds
};

/// Command-line settings that override the config.
struct RunOptions {
    std::filesystem::path out_dir; // empty: write no files
    bool csv = false;
    std::optional<std::string> oracle;
    std::optional<std::uint64_t> samples;
    std::optional<std::uint64_t> seed;
    std::optional<double> confidence;
    bool compare = false;
    std::optional<std::uint32_t> refine;
};

void apply_overrides(AnalysisConfig& c, const RunOptions& o);

// Commands throw on errors; run() maps exceptions to exit codes.
int cmd_analyze(const AnalysisConfig& c, const RunOptions& o, std::ostream& out, std::ostream& err);
int cmd_compare(const AnalysisConfig& c, const RunOptions& o, std::ostream& out);
int cmd_oracle(const AnalysisConfig& c, const RunOptions& o, std::ostream& out);
int cmd_backward(const std::filesystem::path& instance, const RunOptions& o, std::ostream& out);

/// Full command line, including error reporting to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace probbounds::app
