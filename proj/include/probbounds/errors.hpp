// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace probbounds {

/// Syntax or scoping error in a program text.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line),
          column_(column) {}

    [[nodiscard]] std::size_t line() const { return line_; }
    [[nodiscard]] std::size_t column() const { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

/// Malformed or inconsistent input partition.
class PartitionError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed image table or table/partition mismatch.
class TableError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An analysis precondition failed (e.g. a loop in comparison mode).
class AnalysisError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A supplied over-approximation was found not to over-approximate.
class ValidationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad configuration document or missing referenced file.
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace probbounds
