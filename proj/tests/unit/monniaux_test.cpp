// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "data.hpp"
#include "generators.hpp"
#include "probbounds/errors.hpp"
#include "probbounds/monniaux.hpp"
#include "probbounds/parser.hpp"

using namespace probbounds;
using testsupport::Gen;
using testsupport::load_program;

namespace {

Rational q(long n, long d = 1) { return {n, d}; }
Interval R(Rational lo, Rational hi) { return Interval::of(lo, hi, NumKind::Real); }

InputPartition g_six() {
    return InputPartition::grid({"x1", "x2", "x3", "x4", "x5"}, Box(5, R(q(0), q(1))), {1, 1, 1, 2, 3},
                                PartitionMode::ContinuousReal);
}

} // namespace

TEST_CASE("pair propagation through g") {
    const Program g = load_program("g.c");
    const auto pairs = propagate(g, g_six());
    REQUIRE(pairs.size() == 8);
    const Interval expected[] = {R(q(-3), q(2)), R(q(-3), q(2)), R(q(-4), q(3)), R(q(-4), q(3)),
                                 R(q(-2), q(3)), R(q(-2), q(3)), R(q(-3), q(4)), R(q(-3), q(4))};
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        CHECK(result_interval(g, pairs[i].env) == expected[i]);
        CHECK(pairs[i].weight == q(1, 6));
    }
    CHECK(monniaux_upper(g, pairs, AbstractOutput::of(R(q(5, 2), q(7, 2)))) == q(1));
    CHECK(monniaux_upper(g, pairs, AbstractOutput::of(R(q(10), q(11)))) == q(0));
    CHECK(monniaux_upper(g, pairs, AbstractOutput::empty()) == q(0));
}

TEST_CASE("pair propagation edge cases") {
    const Program sum = load_program("sum.c");
    const auto ints = InputPartition::grid({"x"}, {Interval::of(q(0), q(3), NumKind::Int)}, {2},
                                           PartitionMode::DiscreteInt);
    CHECK_THROWS_WITH_AS(propagate(sum, ints), "loops unsupported in comparison mode", AnalysisError);

    const Program line = parse_program("double h(double x) { double y; y = x * 2.0; return y; }");
    const auto part = InputPartition::grid({"x"}, {R(q(0), q(1))}, {4}, PartitionMode::ContinuousReal);
    CHECK(propagate(line, part).size() == 4);

    // A guard decided on every cell never duplicates.
    const Program decided = parse_program(
        "double h(double x) { double y; y = 0.0; if (x >= 2.0) { y = 1.0; } else { y = 2.0; } return y; }");
    CHECK(propagate(decided, part).size() == 4);
}

TEST_CASE("serial and parallel propagation agree") {
    Gen gen(51);
    for (int i = 0; i < 50; ++i) {
        const Program p = parse_program(gen.loop_free_program(2, true));
        const auto part = InputPartition::grid({"x1", "x2"}, {gen.bounded(NumKind::Real, false), gen.bounded(NumKind::Real, false)},
                                               {3, 3}, PartitionMode::ContinuousReal);
        const auto a = propagate(p, part);
        const auto b = propagate_serial(p, part);
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            CHECK(a[k].env == b[k].env);
            CHECK(a[k].cell == b[k].cell);
        }
    }
}

TEST_CASE("branch-free programs match forward bounds") {
    Gen gen(52);
    for (int i = 0; i < 250; ++i) {
        const Program p = parse_program(gen.loop_free_program(2, false));
        const auto part = std::make_shared<const InputPartition>(InputPartition::grid(
            {"x1", "x2"}, {gen.bounded(NumKind::Real, false), gen.bounded(NumKind::Real, false)},
            {static_cast<std::uint32_t>(gen.range(1, 3)), static_cast<std::uint32_t>(gen.range(1, 3))},
            PartitionMode::ContinuousReal));
        const auto pairs = propagate(p, *part);
        CHECK(pairs.size() == part->size());
        const ImgTable t = build_table(p, part);
        for (int e = 0; e < 3; ++e) {
            const AbstractOutput ev = gen.output(NumKind::Real);
            for (const auto pol : {BoundaryPolicy::Closed, BoundaryPolicy::MeasureZero}) {
                CHECK(monniaux_upper(p, pairs, ev, pol) == upper_bound(t, ev, pol));
            }
        }
    }
}

TEST_CASE("pair propagation is never tighter than forward bounds") {
    Gen gen(53);
    for (int i = 0; i < 200; ++i) {
        const Program p = parse_program(gen.loop_free_program(2, true));
        const auto part = std::make_shared<const InputPartition>(InputPartition::grid(
            {"x1", "x2"}, {gen.bounded(NumKind::Real, false), gen.bounded(NumKind::Real, false)}, {2, 2},
            PartitionMode::ContinuousReal));
        const auto pairs = propagate(p, *part);
        const ImgTable t = build_table(p, part);
        const AbstractOutput ev = gen.output(NumKind::Real);
        // Each cell's image is covered by its exit pairs, which keep full weight.
        CHECK(upper_bound(t, ev) <= monniaux_upper(p, pairs, ev));
    }
}
