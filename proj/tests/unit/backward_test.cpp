// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "data.hpp"
#include "generators.hpp"
#include "probbounds/backward.hpp"
#include "probbounds/errors.hpp"

using namespace probbounds;
using testsupport::Gen;
using testsupport::set_partitions;

namespace {

Rational q(long n, long d = 1) { return {n, d}; }

Subset bits(std::size_t n, std::initializer_list<std::size_t> on) {
    Subset s(n);
    for (const auto i : on) {
        s.set(i);
    }
    return s;
}

Subset from_mask(std::size_t n, unsigned long mask) { return Subset(n, mask); }

// Independent measure of a block union: weights of the blocks it contains.
Rational block_measure(const FiniteMeasurableSpace& s, const Subset& x) {
    Rational m(0);
    for (std::size_t b = 0; b < s.blocks().size(); ++b) {
        if (s.blocks()[b].is_subset_of(x)) {
            m += s.weights()[b];
        }
    }
    return m;
}

std::vector<std::string> names(std::size_t n, char first) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.emplace_back(1, static_cast<char>(first + static_cast<char>(i)));
    }
    return out;
}

} // namespace

TEST_CASE("two-point instance") {
    const BackwardInstance inst =
        load_backward_instance(testsupport::read_file(testsupport::data_path("backward/two_point.json")));
    const auto rows = backward_report(inst);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].name == "{}");
    CHECK(rows[0].upper == q(0));
    CHECK(rows[1].name == "{c}");
    CHECK((rows[1].lower == q(0) && rows[1].upper == q(1)));
    CHECK((rows[2].lower == q(0) && rows[2].upper == q(1)));
    CHECK((rows[3].lower == q(1) && rows[3].upper == q(1)));

    const auto& s = inst.space;
    const Subset b = bits(2, {1});
    CHECK(s.lift(b) == s.full_set());
    CHECK(s.lift(s.empty_set()) == s.empty_set());
    CHECK(s.inner(b) == s.empty_set());
    CHECK_THROWS_AS((void)s.measure(b), ValidationError);
    CHECK(dual_pre(s, inst.pre, bits(2, {0, 1})) == s.full_set());
    CHECK(dual_pre(s, inst.pre, bits(2, {0})) == s.empty_set());
    CHECK(subset_name(inst.pre, bits(2, {0, 1})) == "{c,d}");
}

TEST_CASE("instance loading errors") {
    CHECK_THROWS_AS(load_backward_instance("{"), ConfigError);
    CHECK_THROWS_AS(load_backward_instance(R"({"points":["a"],"blocks":[["a"]],"weights":["1"],
        "output_atoms":["c"],"pre_sharp":{"z":["a"]}})"),
                    ConfigError);
    CHECK_THROWS_AS(load_backward_instance(R"({"points":["a"],"blocks":[["a"]],"weights":["1/2"],
        "output_atoms":["c"],"pre_sharp":{"c":["a"]}})"),
                    ConfigError);
    // pre# misses the exact pre-image of d.
    CHECK_THROWS_AS(load_backward_instance(R"({"points":["a","b"],"blocks":[["a","b"]],"weights":["1"],
        "output_atoms":["c","d"],"pre_sharp":{"c":["a","b"],"d":[]},"concrete":{"a":"c","b":"d"}})"),
                    ValidationError);
    const BackwardInstance none = load_backward_instance(R"({"points":["a"],"blocks":[["a"]],"weights":[1],
        "output_atoms":["c"],"pre_sharp":{"c":["a"]},"events":[]})");
    CHECK(backward_report(none).empty());
    const BackwardInstance all = load_backward_instance(R"({"points":["a"],"blocks":[["a"]],"weights":[1],
        "output_atoms":["c","d"],"pre_sharp":{"c":["a"],"d":[]}})");
    CHECK(backward_report(all).size() == 4);
}

TEST_CASE("explicit pre sets take priority") {
    const FiniteMeasurableSpace s({"a", "b"}, {{0}, {1}}, {q(1, 2), q(1, 2)});
    PreTable::Source src;
    src.singletons = {bits(2, {0, 1}), bits(2, {1})};
    src.explicit_sets[bits(2, {0})] = bits(2, {0});
    const PreTable pre({"c", "d"}, 2, {src});
    CHECK(pre.apply(bits(2, {0})) == bits(2, {0}));
    CHECK(pre.apply(bits(2, {0, 1})) == bits(2, {0, 1}));
    PreTable::Source only;
    only.explicit_sets[bits(2, {1})] = bits(2, {1});
    const PreTable partial({"c", "d"}, 2, {only});
    CHECK_THROWS_AS((void)partial.apply(bits(2, {0})), ValidationError);
    CHECK(upper_back(s, pre, bits(2, {0})) == q(1, 2));
}

TEST_CASE("exhaustive soundness on small spaces") {
    Gen gen(41);
    std::size_t cases = 0;
    for (std::size_t nx = 1; nx <= 4; ++nx) {
        for (std::size_t ny = 1; ny <= 3; ++ny) {
            std::size_t nf = 1;
            for (std::size_t i = 0; i < nx; ++i) {
                nf *= ny;
            }
            for (const auto& blocks : set_partitions(nx)) {
                const FiniteMeasurableSpace space(names(nx, 'a'), blocks, gen.random_weights(blocks.size()));
                for (std::size_t code = 0; code < nf; ++code) {
                    std::vector<std::size_t> f(nx);
                    for (std::size_t i = 0, c = code; i < nx; ++i, c /= ny) {
                        f[i] = c % ny;
                    }
                    // pre# from singletons: exact plus random extra points.
                    std::vector<Subset> single;
                    for (std::size_t y = 0; y < ny; ++y) {
                        Subset s = exact_pre(f, bits(ny, {y}));
                        for (std::size_t x = 0; x < nx; ++x) {
                            if (gen.coin(0.25)) {
                                s.set(x);
                            }
                        }
                        single.push_back(s);
                    }
                    const PreTable pre = PreTable::from_singletons(names(ny, 'p'), nx, single);
                    CHECK_NOTHROW(validate_pre(pre, f));
                    ++cases;
                    for (unsigned long m = 0; m < (1UL << ny); ++m) {
                        const Subset a = from_mask(ny, m);
                        const Subset exact = exact_pre(f, a);
                        const Rational lo = lower_back(space, pre, a);
                        const Rational up = upper_back(space, pre, a);
                        CHECK(lo <= block_measure(space, space.inner(exact)));
                        CHECK(block_measure(space, space.lift(exact)) <= up);
                        if (space.is_measurable(exact)) {
                            CHECK(lo <= space.measure(exact));
                            CHECK(space.measure(exact) <= up);
                        }
                        CHECK(dual_pre(space, pre, a).is_subset_of(exact));
                        CHECK(lo == q(1) - upper_back(space, pre, ~a));
                        for (unsigned long m2 = m; m2 < (1UL << ny); m2 = (m2 + 1) | m) {
                            const Subset b = from_mask(ny, m2); // a is a subset of b
                            CHECK(dual_pre(space, pre, a).is_subset_of(dual_pre(space, pre, b)));
                        }
                    }
                }
            }
        }
    }
    CHECK(cases >= 200);
}

TEST_CASE("lift is the least measurable superset") {
    Gen gen(42);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = static_cast<std::size_t>(gen.range(1, 6));
        const auto parts = set_partitions(n);
        const auto& blocks = parts[static_cast<std::size_t>(gen.range(0, static_cast<long>(parts.size()) - 1))];
        const FiniteMeasurableSpace space(names(n, 'a'), blocks, gen.random_weights(blocks.size()));
        const Subset s = from_mask(n, static_cast<unsigned long>(gen.range(0, (1L << n) - 1)));
        const Subset l = space.lift(s);
        CHECK(s.is_subset_of(l));
        CHECK(space.is_measurable(l));
        CHECK(space.lift(l) == l);
        CHECK(space.inner(s).is_subset_of(s));
        // Every measurable superset contains the lift.
        for (unsigned long m = 0; m < (1UL << n); ++m) {
            const Subset t = from_mask(n, m);
            if (space.is_measurable(t) && s.is_subset_of(t)) {
                CHECK(l.is_subset_of(t));
            }
        }
        const Subset bigger = s | from_mask(n, static_cast<unsigned long>(gen.range(0, (1L << n) - 1)));
        CHECK(l.is_subset_of(space.lift(bigger)));
    }
}

TEST_CASE("combined pre tables") {
    Gen gen(43);
    for (int i = 0; i < 200; ++i) {
        const std::size_t nx = static_cast<std::size_t>(gen.range(1, 4));
        const std::size_t ny = static_cast<std::size_t>(gen.range(1, 3));
        std::vector<std::size_t> f(nx);
        for (auto& v : f) {
            v = static_cast<std::size_t>(gen.range(0, static_cast<long>(ny) - 1));
        }
        auto random_pre = [&] {
            std::vector<Subset> single;
            for (std::size_t y = 0; y < ny; ++y) {
                Subset s = exact_pre(f, bits(ny, {y}));
                s |= from_mask(nx, static_cast<unsigned long>(gen.range(0, (1L << nx) - 1)));
                single.push_back(s);
            }
            return PreTable::from_singletons(names(ny, 'p'), nx, single);
        };
        const PreTable a = random_pre();
        const PreTable b = random_pre();
        const PreTable c = combine_pre(a, b);
        CHECK_NOTHROW(validate_pre(c, f));
        for (unsigned long m = 0; m < (1UL << ny); ++m) {
            const Subset e = from_mask(ny, m);
            CHECK(c.apply(e) == (a.apply(e) & b.apply(e)));
            CHECK(exact_pre(f, e).is_subset_of(c.apply(e)));
            CHECK(combine_pre(a, a).apply(e) == a.apply(e));
        }
    }
    const PreTable one = PreTable::from_singletons({"c"}, 1, {bits(1, {0})});
    const PreTable two = PreTable::from_singletons({"c", "d"}, 1, {bits(1, {0}), bits(1, {})});
    CHECK_THROWS_AS(combine_pre(one, two), ValidationError);
}

TEST_CASE("bijection with singleton blocks is exact") {
    const FiniteMeasurableSpace s({"a", "b", "c"}, {{0}, {1}, {2}}, {q(1, 2), q(1, 3), q(1, 6)});
    const std::vector<std::size_t> f = {2, 0, 1};
    std::vector<Subset> single;
    for (std::size_t y = 0; y < 3; ++y) {
        single.push_back(exact_pre(f, bits(3, {y})));
    }
    const PreTable pre = PreTable::from_singletons({"x", "y", "z"}, 3, single);
    for (unsigned long m = 0; m < 8; ++m) {
        const Subset e = from_mask(3, m);
        CHECK(dual_pre(s, pre, e) == exact_pre(f, e));
        CHECK(lower_back(s, pre, e) == upper_back(s, pre, e));
    }
}
