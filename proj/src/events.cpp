// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#include "probbounds/events.hpp"

#include <stdexcept>

#include "probbounds/analyzer.hpp"

namespace probbounds {

std::vector<OutputEvent> sign_powerset_events() {
    const Interval neg = sign_negative();
    const Interval zero = sign_zero();
    const Interval pos = sign_positive();
    const auto ev = [](const char* name, std::vector<Interval> parts, bool bottom) {
        return OutputEvent{name, AbstractOutput(std::move(parts), bottom)};
    };
    return {
        ev("{}", {}, false),
        ev("{bot}", {}, true),
        ev("Z-", {neg}, false),
        ev("{0}", {zero}, false),
        ev("Z+", {pos}, false),
        ev("{bot}uZ-", {neg}, true),
        ev("{bot,0}", {zero}, true),
        ev("{bot}uZ+", {pos}, true),
        ev("Z-u{0}", {neg, zero}, false),
        ev("Z-uZ+", {neg, pos}, false),
        ev("{0}uZ+", {zero, pos}, false),
        ev("S\\Z+", {neg, zero}, true),
        ev("S\\{0}", {neg, pos}, true),
        ev("S\\Z-", {zero, pos}, true),
        ev("S\\{bot}", {neg, zero, pos}, false),
        ev("S", {neg, zero, pos}, true),
    };
}

std::vector<OutputEvent> unit_bin_events(const Rational& from, const Rational& to, const Rational& step,
                                         NumKind kind) {
    if (step <= Rational(0) || to < from) {
        throw std::invalid_argument("bins need from <= to and a positive step");
    }
    std::vector<OutputEvent> out;
    for (Rational lo = from; lo < to; lo += step) {
        const Rational hi = std::min(lo + step, to);
        const Interval bin = Interval::of(lo, hi, kind);
        out.push_back({bin.str(), AbstractOutput::of(bin)});
    }
    return out;
}

} // namespace probbounds
