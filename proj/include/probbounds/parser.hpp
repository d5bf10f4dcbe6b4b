// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>

#include "probbounds/ast.hpp"

namespace probbounds {

/// Parses one function of the mini language:
///
///     program := type (ident | "(" ident ")") "(" params ")" "{" item* "return" expr ";" "}"
///     params  := type ident ("," [type] ident)*
///     item    := type ident ["=" expr] ("," ident ["=" expr])* ";" | stmt
///     stmt    := ident "=" expr ";" | "while" "(" cond ")" body
///              | "if" "(" cond ")" body ["else" body] | "{" stmt* "}"
///     cond    := expr ("=="|"!="|"<"|"<="|">"|">=") expr
///
/// `type` is `int` or `double`. A parameter without a type keyword inherits
/// the previous one, so `double f(double x1, x2)` declares two doubles.
/// Decimal literals become exact rationals. Throws ParseError on syntax
/// errors, undeclared variables, reads of possibly unassigned variables,
/// and real-valued assignments to int variables.
Program parse_program(std::string_view text);

} // namespace probbounds
