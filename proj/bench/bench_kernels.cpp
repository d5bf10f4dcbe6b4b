// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Parallel kernels against their serial references. On a single core the
// pairs should run at about the same speed; the ratio grows with cores.
#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "probbounds/bounds.hpp"
#include "probbounds/events.hpp"
#include "probbounds/monniaux.hpp"
#include "probbounds/oracle.hpp"
#include "probbounds/parser.hpp"

using namespace probbounds;

namespace {

Program load(const char* name) {
    std::ifstream in(std::string(PROBBOUNDS_DATA_DIR) + "/programs/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_program(ss.str());
}

std::shared_ptr<const InputPartition> unit_grid(std::size_t dims, std::uint32_t per_dim) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= dims; ++i) {
        names.push_back("x" + std::to_string(i));
    }
    const Interval unit = Interval::of(Rational(0), Rational(1), NumKind::Real);
    return std::make_shared<const InputPartition>(InputPartition::grid(
        names, Box(dims, unit), std::vector<std::uint32_t>(dims, per_dim), PartitionMode::ContinuousReal));
}

const Program& f_program() {
    static const Program p = load("f.c");
    return p;
}

const Program& g_program() {
    static const Program p = load("g.c");
    return p;
}

// f over a per_dim^4 grid
template <bool Parallel>
void BM_BuildTable(benchmark::State& st) {
    const auto part = unit_grid(4, static_cast<std::uint32_t>(st.range(0)));
    for (auto _ : st) {
        auto t = Parallel ? build_table(f_program(), part) : build_table_serial(f_program(), part);
        benchmark::DoNotOptimize(t);
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(part->size()));
}

template <bool Parallel>
void BM_BoundsReport(benchmark::State& st) {
    const auto part = unit_grid(4, static_cast<std::uint32_t>(st.range(0)));
    const ImgTable t = build_table(f_program(), part);
    const auto events = unit_bin_events(Rational(-4), Rational(4), Rational(1, 4), NumKind::Real);
    for (auto _ : st) {
        auto r = Parallel ? bounds_report(t, events, BoundaryPolicy::MeasureZero)
                          : bounds_report_serial(t, events, BoundaryPolicy::MeasureZero);
        benchmark::DoNotOptimize(r);
    }
}

template <bool Parallel>
void BM_MonteCarlo(benchmark::State& st) {
    const auto part = unit_grid(4, 1);
    const std::vector<OutputEvent> ev = {
        {"low", AbstractOutput::of(Interval::of(Rational(-4), Rational(-3), NumKind::Real))}};
    const auto n = static_cast<std::uint64_t>(st.range(0));
    for (auto _ : st) {
        auto r = Parallel ? mc_estimate(f_program(), *part, ev, n, 7, 1000, 0.99)
                          : mc_estimate_serial(f_program(), *part, ev, n, 7, 1000, 0.99);
        benchmark::DoNotOptimize(r);
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n));
}

// g over a per_dim^5 grid; 3 gives the 243-cell partition
template <bool Parallel>
void BM_Propagate(benchmark::State& st) {
    const auto part = unit_grid(5, static_cast<std::uint32_t>(st.range(0)));
    for (auto _ : st) {
        auto r = Parallel ? propagate(g_program(), *part) : propagate_serial(g_program(), *part);
        benchmark::DoNotOptimize(r);
    }
}

} // namespace

BENCHMARK(BM_BuildTable<false>)->Name("build_table/serial")->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildTable<true>)->Name("build_table/parallel")->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundsReport<false>)->Name("bounds_report/serial")->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundsReport<true>)->Name("bounds_report/parallel")->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarlo<false>)->Name("mc_estimate/serial")->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarlo<true>)->Name("mc_estimate/parallel")->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Propagate<false>)->Name("propagate/serial")->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Propagate<true>)->Name("propagate/parallel")->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
