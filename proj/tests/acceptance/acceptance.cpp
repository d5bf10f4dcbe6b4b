// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
//
// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria, capped at 1.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "data.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "probbounds/analyzer.hpp"
#include "probbounds/backward.hpp"
#include "probbounds/bounds.hpp"
#include "probbounds/events.hpp"
#include "probbounds/monniaux.hpp"
#include "probbounds/oracle.hpp"
#include "probbounds/parser.hpp"
#include "probbounds/termination.hpp"

using namespace probbounds;
using testsupport::Gen;
using testsupport::load_program;

namespace {

Rational q(long n, long d = 1) { return {n, d}; }
Interval R(Rational lo, Rational hi) { return Interval::of(lo, hi, NumKind::Real); }

// Collects failed expectations for one criterion.
struct Check {
    std::vector<std::string> failures;
    long cases = 0;

    void expect(bool ok, const std::string& what) {
        if (!ok && failures.size() < 5) {
            failures.push_back(what);
        } else if (!ok) {
            failures.emplace_back();
        }
    }
    template <typename A, typename B>
    void equal(const A& got, const B& want, const std::string& what) {
        std::ostringstream s;
        const auto show = [&s](const auto& x) {
            if constexpr (requires { x.str(); }) {
                s << x.str();
            } else {
                s << x;
            }
        };
        s << what << ": got ";
        show(got);
        s << ", want ";
        show(want);
        expect(got == want, s.str());
    }
};

int failed = 0;

void criterion(const char* id, const char* title, const std::function<void(Check&)>& body, long min_cases = 0) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.cases < min_cases) {
        c.failures.push_back("only " + std::to_string(c.cases) + " cases, need " + std::to_string(min_cases));
    }
    const bool ok = c.failures.empty();
    failed += ok ? 0 : 1;
    std::printf("%s %-3s %s", ok ? "PASS" : "FAIL", id, title);
    if (min_cases > 0) {
        std::printf(" [%ld cases]", c.cases);
    }
    std::printf(" (%.2fs)\n", secs);
    for (const auto& f : c.failures) {
        if (!f.empty()) {
            std::printf("       %s\n", f.c_str());
        }
    }
    std::fflush(stdout);
}

std::shared_ptr<const InputPartition> sign_partition() {
    const ExtRational ni = ExtRational::neg_inf();
    const ExtRational pi = ExtRational::pos_inf();
    std::vector<Cell> cells = {{{Interval::of(ni, q(-1), NumKind::Int)}, q(1, 3)},
                               {{Interval::of(q(0), q(0), NumKind::Int)}, q(1, 4)},
                               {{Interval::of(q(1), pi, NumKind::Int)}, q(5, 12)}};
    return std::make_shared<const InputPartition>(
        InputPartition::explicit_cells({"x"}, cells, PartitionMode::DiscreteInt));
}

ImgTable table_file(const std::shared_ptr<const InputPartition>& p, const std::string& name) {
    return load_table_file(p, testsupport::data_path("tables/" + name), NumKind::Int);
}

AbstractOutput sign_event(const std::string& name) {
    for (const auto& e : sign_powerset_events()) {
        if (e.name == name) {
            return e.shape;
        }
    }
    throw std::runtime_error("no sign event " + name);
}

std::shared_ptr<const InputPartition> unit_grid(std::size_t dims, std::vector<std::uint32_t> sub) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= dims; ++i) {
        names.push_back("x" + std::to_string(i));
    }
    return std::make_shared<const InputPartition>(
        InputPartition::grid(names, Box(dims, R(q(0), q(1))), std::move(sub), PartitionMode::ContinuousReal));
}

std::set<std::size_t> as_set(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

std::vector<std::string> letters(std::size_t n, char first) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.emplace_back(1, static_cast<char>(first + static_cast<char>(i)));
    }
    return out;
}

Subset single(std::size_t n, std::size_t i) {
    Subset s(n);
    s.set(i);
    return s;
}

} // namespace

int main() {
    const auto part = sign_partition();
    const AbstractOutput zero = AbstractOutput::of(sign_zero());

    criterion("1", "sign table: {0} bounds (0, 2/3)", [&](Check& c) {
        const ImgTable sign = table_file(part, "sum_sign.tbl");
        c.equal(upper_bound(sign, zero), q(2, 3), "upper({0})");
        c.equal(lower_bound(sign, zero), q(0), "lower({0})");
    });

    criterion("2", "termination table: {0} bounds (0, 1)", [&](Check& c) {
        const ImgTable term = table_file(part, "sum_termination.tbl");
        c.equal(upper_bound(term, zero), q(1), "upper({0})");
        c.equal(lower_bound(term, zero), q(0), "lower({0})");
    });

    criterion("3", "combined tables: {0} -> (1/4, 2/3), S\\{0} -> (1/3, 3/4)", [&](Check& c) {
        const ImgTable both = combine(table_file(part, "sum_sign.tbl"), table_file(part, "sum_termination.tbl"));
        c.equal(both.entries.at(1), zero, "img''({0})");
        c.equal(both.entries.at(2), AbstractOutput::of(Interval::of(q(0), ExtRational::pos_inf(), NumKind::Int)),
                "img''(Z+)");
        c.equal(lower_bound(both, zero), q(1, 4), "lower({0})");
        c.equal(upper_bound(both, zero), q(2, 3), "upper({0})");
        const AbstractOutput rest = sign_event("S\\{0}");
        c.equal(lower_bound(both, rest), q(1, 3), "lower(S\\{0})");
        c.equal(upper_bound(both, rest), q(3, 4), "upper(S\\{0})");
    });

    criterion("4", "f on the 10^4 grid: 70 cells, upper 7/1000, lower 0 then 1/2000", [&](Check& c) {
        const auto t0 = std::chrono::steady_clock::now();
        const Program f = load_program("f.c");
        const auto grid = unit_grid(4, {10, 10, 10, 10});
        // Keep bottom in every entry so the interval table alone says nothing about termination.
        const ImgTable t = build_table(f, grid, {.partial_correctness = true});
        const AbstractOutput ev = AbstractOutput::of(R(q(-4), q(-3)));
        c.equal(pre_sharp(t, ev, BoundaryPolicy::MeasureZero).size(), std::size_t{70}, "|pre#([-4,-3])|");
        c.equal(upper_bound(t, ev, BoundaryPolicy::MeasureZero), q(7, 1000), "upper");
        c.equal(lower_bound(t, ev), q(0), "interval-only lower");
        const ImgTable term = facts_to_table(TerminationFacts::all(Verdict::Terminates), grid,
                                             AbstractOutput::top(NumKind::Real, false));
        const ImgTable both = combine(t, term);
        c.equal(lower_bound(both, ev), q(1, 2000), "lower with termination");
        c.equal(upper_bound(both, ev, BoundaryPolicy::MeasureZero), q(7, 1000), "upper with termination");
        // independent count: cells whose corner sum s (in tenths) gives 2s/10-4 < -3, i.e. s < 5
        long corners = 0;
        for (int a = 0; a < 10; ++a)
            for (int b = 0; b < 10; ++b)
                for (int d = 0; d < 10; ++d)
                    for (int e = 0; e < 10; ++e)
                        corners += a + b + d + e < 5 ? 1 : 0;
        c.equal(corners, 70L, "corner count");
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        c.expect(secs < 10.0, "runtime " + std::to_string(secs) + "s exceeds 10s");
    });

    criterion("5", "g on six cells: table rows, upper 5/6, pair propagation 1", [&](Check& c) {
        const Program g = load_program("g.c");
        const auto six = unit_grid(5, {1, 1, 1, 2, 3});
        const ImgTable t = build_table(g, six, {.partial_correctness = true});
        // rows keyed by (x4 lower, x5 lower)
        struct Row {
            Rational x4, x5;
            Interval img;
        };
        const Row rows[] = {{q(0), q(0), R(q(-3), q(2))},       {q(0), q(1, 3), R(q(-4), q(3))},
                            {q(0), q(2, 3), R(q(-4), q(3))},    {q(1, 2), q(0), R(q(-2), q(3))},
                            {q(1, 2), q(1, 3), R(q(-3), q(4))}, {q(1, 2), q(2, 3), R(q(-3), q(4))}};
        c.equal(t.entries.size(), std::size_t{6}, "cells");
        for (const auto& row : rows) {
            bool found = false;
            for (std::size_t i = 0; i < six->size(); ++i) {
                const Box& box = six->cell(i).box;
                if (box[3].lo() == ExtRational(row.x4) && box[4].lo() == ExtRational(row.x5)) {
                    found = true;
                    c.equal(t.entries[i], AbstractOutput({row.img}, true), "row " + std::to_string(i));
                }
            }
            c.expect(found, "missing cell");
        }
        const AbstractOutput ev = AbstractOutput::of(R(q(5, 2), q(7, 2)));
        c.equal(upper_bound(t, ev), q(5, 6), "forward upper");
        c.equal(monniaux_upper(g, propagate(g, *six), ev), q(1), "pair propagation upper");
    });

    criterion("6", "backward two-point instance", [&](Check& c) {
        const BackwardInstance inst =
            load_backward_instance(testsupport::read_file(testsupport::data_path("backward/two_point.json")));
        const auto& s = inst.space;
        const auto& pre = inst.pre;
        const Subset none(2);
        const Subset cset = single(2, 0);
        const Subset dset = single(2, 1);
        const Subset both = cset | dset;
        c.equal(upper_back(s, pre, dset), q(1), "upper({d})");
        c.equal(lower_back(s, pre, dset), q(0), "lower({d})");
        c.equal(upper_back(s, pre, cset), q(1), "upper({c})");
        c.equal(lower_back(s, pre, cset), q(0), "lower({c})");
        c.equal(lower_back(s, pre, both), q(1), "lower({c,d})");
        c.equal(upper_back(s, pre, none), q(0), "upper({})");
        const auto report = backward_report(inst);
        c.equal(report.size(), std::size_t{4}, "report rows");
    });

    criterion("7", "Monte-Carlo on f: 99% CI holds 1/384 and sits in [1/2000, 7/1000]", [&](Check& c) {
        const auto t0 = std::chrono::steady_clock::now();
        const Program f = load_program("f.c");
        c.equal(testsupport::irwin_hall_cdf(4, q(1, 2)), q(1, 384), "closed form");
        const auto unit = unit_grid(4, {1, 1, 1, 1});
        const std::vector<OutputEvent> ev = {{"[-4,-3]", AbstractOutput::of(R(q(-4), q(-3)))}};
        const auto est = mc_estimate(f, *unit, ev, 1'000'000, 20240601, 1000, 0.99);
        const double exact = 1.0 / 384;
        c.expect(est[0].ci_low <= exact && exact <= est[0].ci_high,
                 "CI [" + std::to_string(est[0].ci_low) + ", " + std::to_string(est[0].ci_high) + "] misses 1/384");
        c.expect(Rational::from_double(est[0].ci_low) >= q(1, 2000) && Rational::from_double(est[0].ci_high) <= q(7, 1000),
                 "CI leaves [1/2000, 7/1000]");
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        c.expect(secs < 120.0, "runtime " + std::to_string(secs) + "s exceeds 120s");
    });

    criterion(
        "8a", "duality", [&](Check& c) {
            Gen gen(801);
            for (int i = 0; i < 300; ++i, ++c.cases) {
                const NumKind k = i % 2 == 0 ? NumKind::Int : NumKind::Real;
                const auto p = k == NumKind::Int ? gen.int_line_partition() : gen.real_line_partition();
                const ImgTable t = gen.table(p, k, k == NumKind::Real);
                const AbstractOutput a = k == NumKind::Int ? gen.output(k) : gen.wide_output(k);
                const BoundaryPolicy pol = k == NumKind::Int ? BoundaryPolicy::Closed : BoundaryPolicy::MeasureZero;
                c.equal(lower_bound(t, a), q(1) - upper_bound(t, complement(a, k), pol), "case " + std::to_string(i));
            }
        },
        200);

    criterion(
        "8b", "monotonicity", [&](Check& c) {
            Gen gen(802);
            for (int i = 0; i < 300; ++i, ++c.cases) {
                const NumKind k = i % 2 == 0 ? NumKind::Int : NumKind::Real;
                const auto p = k == NumKind::Int ? gen.int_line_partition() : gen.real_line_partition();
                const ImgTable t = gen.table(p, k);
                const AbstractOutput b = gen.output(k);
                const AbstractOutput a = intersect_outputs(b, gen.output(k));
                const std::string tag = "case " + std::to_string(i);
                c.expect(subset(a, b), tag + ": generator broke A <= B");
                c.expect(upper_bound(t, a) <= upper_bound(t, b), tag + ": upper");
                c.expect(lower_bound(t, a) <= lower_bound(t, b), tag + ": lower");
            }
        },
        200);

    criterion(
        "8c", "union closure of pre#", [&](Check& c) {
            Gen gen(803);
            for (int i = 0; i < 300; ++i, ++c.cases) {
                const NumKind k = i % 2 == 0 ? NumKind::Int : NumKind::Real;
                const auto p = k == NumKind::Int ? gen.int_line_partition() : gen.real_line_partition();
                const ImgTable t = gen.table(p, k);
                const AbstractOutput a = gen.output(k);
                const AbstractOutput b = gen.output(k);
                std::set<std::size_t> want = as_set(pre_sharp(t, a));
                const auto pb = pre_sharp(t, b);
                want.insert(pb.begin(), pb.end());
                c.expect(as_set(pre_sharp(t, union_outputs(a, b))) == want, "case " + std::to_string(i));
            }
        },
        200);

    criterion(
        "8d", "combination tightening", [&](Check& c) {
            Gen gen(804);
            for (int i = 0; i < 300; ++i, ++c.cases) {
                const NumKind k = i % 2 == 0 ? NumKind::Int : NumKind::Real;
                const auto p = k == NumKind::Int ? gen.int_line_partition() : gen.real_line_partition();
                const ImgTable t1 = gen.table(p, k);
                const ImgTable t2 = gen.table(p, k);
                const ImgTable both = combine(t1, t2);
                const AbstractOutput e = gen.output(k);
                const std::string tag = "case " + std::to_string(i);
                c.expect(lower_bound(both, e) >= std::max(lower_bound(t1, e), lower_bound(t2, e)), tag + ": lower");
                c.expect(upper_bound(both, e) <= std::min(upper_bound(t1, e), upper_bound(t2, e)), tag + ": upper");
            }
        },
        200);

    criterion(
        "8e", "refinement tightening on loop-free programs", [&](Check& c) {
            Gen gen(805);
            for (int i = 0; i < 200; ++i, ++c.cases) {
                const Program p = parse_program(gen.loop_free_program(2, true));
                const Box dom = {gen.bounded(NumKind::Real, false), gen.bounded(NumKind::Real, false)};
                const auto coarse = std::make_shared<const InputPartition>(
                    InputPartition::grid({"x1", "x2"}, dom, {2, 2}, PartitionMode::ContinuousReal));
                const auto fine = std::make_shared<const InputPartition>(coarse->refine(2));
                const ImgTable tc = build_table(p, coarse);
                const ImgTable tf = build_table(p, fine);
                for (int e = 0; e < 3; ++e) {
                    const AbstractOutput ev = gen.output(NumKind::Real);
                    const std::string tag = "case " + std::to_string(i);
                    c.expect(lower_bound(tf, ev) >= lower_bound(tc, ev), tag + ": lower");
                    c.expect(upper_bound(tf, ev) <= upper_bound(tc, ev), tag + ": upper");
                }
            }
        },
        200);

    criterion(
        "8f", "backward exhaustive soundness, |X| <= 4, |Y| <= 3", [&](Check& c) {
            Gen gen(806);
            for (std::size_t nx = 1; nx <= 4; ++nx) {
                for (std::size_t ny = 1; ny <= 3; ++ny) {
                    std::size_t nf = 1;
                    for (std::size_t i = 0; i < nx; ++i) {
                        nf *= ny;
                    }
                    for (const auto& blocks : testsupport::set_partitions(nx)) {
                        const FiniteMeasurableSpace space(letters(nx, 'a'), blocks, gen.random_weights(blocks.size()));
                        for (std::size_t code = 0; code < nf; ++code, ++c.cases) {
                            std::vector<std::size_t> f(nx);
                            for (std::size_t i = 0, k = code; i < nx; ++i, k /= ny) {
                                f[i] = k % ny;
                            }
                            std::vector<Subset> singles;
                            for (std::size_t y = 0; y < ny; ++y) {
                                Subset s = exact_pre(f, single(ny, y));
                                for (std::size_t x = 0; x < nx; ++x) {
                                    if (gen.coin(0.25)) {
                                        s.set(x);
                                    }
                                }
                                singles.push_back(s);
                            }
                            const PreTable pre = PreTable::from_singletons(letters(ny, 'p'), nx, singles);
                            for (unsigned long m = 0; m < (1UL << ny); ++m) {
                                const Subset a(ny, m);
                                const Subset exact = exact_pre(f, a);
                                const Rational lo = lower_back(space, pre, a);
                                const Rational up = upper_back(space, pre, a);
                                // inner and outer measures of the exact pre-image, from block weights
                                Rational inner(0);
                                Rational outer(0);
                                for (std::size_t b = 0; b < blocks.size(); ++b) {
                                    const Subset& blk = space.blocks()[b];
                                    inner += blk.is_subset_of(exact) ? space.weights()[b] : q(0);
                                    outer += blk.intersects(exact) ? space.weights()[b] : q(0);
                                }
                                const std::string tag = "case " + std::to_string(c.cases);
                                c.expect(lo <= inner, tag + ": lower above inner measure");
                                c.expect(outer <= up, tag + ": upper below outer measure");
                                c.expect(dual_pre(space, pre, a).is_subset_of(exact), tag + ": dual pre");
                            }
                        }
                    }
                }
            }
        },
        200);

    criterion(
        "8g", "branch-free programs: pair propagation equals forward", [&](Check& c) {
            Gen gen(807);
            for (int i = 0; i < 250; ++i, ++c.cases) {
                const Program p = parse_program(gen.loop_free_program(2, false));
                const auto grid = std::make_shared<const InputPartition>(InputPartition::grid(
                    {"x1", "x2"}, {gen.bounded(NumKind::Real, false), gen.bounded(NumKind::Real, false)},
                    {static_cast<std::uint32_t>(gen.range(1, 3)), static_cast<std::uint32_t>(gen.range(1, 3))},
                    PartitionMode::ContinuousReal));
                const auto pairs = propagate(p, *grid);
                const ImgTable t = build_table(p, grid);
                for (int e = 0; e < 3; ++e) {
                    const AbstractOutput ev = gen.output(NumKind::Real);
                    c.equal(monniaux_upper(p, pairs, ev), upper_bound(t, ev), "case " + std::to_string(i));
                }
            }
        },
        200);

    std::printf("%d criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
