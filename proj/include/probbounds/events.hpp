// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "probbounds/bounds.hpp"
#include "probbounds/rational.hpp"

namespace probbounds {

/// All 16 unions of the sign atoms Z-, {0}, Z+ and bottom, ordered
/// {}, {bot}, Z-, {0}, Z+, {bot}uZ-, {bot,0}, {bot}uZ+, Z-u{0}, Z-uZ+,
/// {0}uZ+, S\Z+, S\{0}, S\Z-, S\{bot}, S.
std::vector<OutputEvent> sign_powerset_events();

/// Closed bins [from + i*step, from + (i+1)*step] covering [from, to].
std::vector<OutputEvent> unit_bin_events(const Rational& from, const Rational& to, const Rational& step,
                                         NumKind kind);

} // namespace probbounds
