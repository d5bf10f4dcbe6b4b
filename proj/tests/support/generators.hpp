// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Hand-rolled random generators for property tests. Everything is driven by
// an explicit seed so a failing case can be replayed.
#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "probbounds/bounds.hpp"
#include "probbounds/interval.hpp"
#include "probbounds/partition.hpp"
#include "probbounds/rational.hpp"

namespace testsupport {

using namespace probbounds;

class Gen {
  public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t next() { return rng_(); }
    long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
    template <typename T>
    const T& pick(const std::vector<T>& xs) {
        return xs[static_cast<std::size_t>(range(0, static_cast<long>(xs.size()) - 1))];
    }

    /// Small rational with denominator in {1,2,3,4}.
    Rational rational(long span = 6) {
        const long den = range(1, 4);
        return {range(-span * den, span * den), den};
    }

    /// Endpoint that is infinite with probability `p_inf`.
    ExtRational endpoint(bool upper, NumKind kind, double p_inf = 0.15) {
        if (coin(p_inf)) {
            return upper ? ExtRational::pos_inf() : ExtRational::neg_inf();
        }
        return kind == NumKind::Int ? ExtRational(Rational(range(-6, 6))) : ExtRational(rational());
    }

    Interval interval(NumKind kind, double p_inf = 0.15) {
        ExtRational a = endpoint(false, kind, p_inf);
        ExtRational b = endpoint(true, kind, p_inf);
        if (b < a) {
            std::swap(a, b);
            if (a.is_pos_inf()) {
                a = ExtRational(Rational(0));
            }
            if (b.is_neg_inf()) {
                b = ExtRational(Rational(0));
            }
        }
        return Interval::of(a, b, kind);
    }

    /// Bounded interval, optionally a single point.
    Interval bounded(NumKind kind, bool allow_point = true) {
        while (true) {
            const Interval i = interval(kind, 0.0);
            if (allow_point || !i.is_point()) {
                return i;
            }
        }
    }

    AbstractOutput output(NumKind kind, int max_parts = 3, double p_inf = 0.15) {
        std::vector<Interval> parts;
        const long n = range(0, max_parts);
        for (long i = 0; i < n; ++i) {
            parts.push_back(interval(kind, p_inf));
        }
        return {std::move(parts), coin()};
    }

    /// Output whose intervals all have positive width (real kind only
    /// matters; int intervals are returned unchanged).
    AbstractOutput wide_output(NumKind kind, int max_parts = 3) {
        std::vector<Interval> parts;
        const long n = range(0, max_parts);
        for (long i = 0; i < n; ++i) {
            Interval x = interval(kind);
            while (kind == NumKind::Real && x.is_point()) {
                x = interval(kind);
            }
            parts.push_back(x);
        }
        return {std::move(parts), coin()};
    }

    /// Random explicit partition of Z into consecutive int cells, with
    /// positive weights summing to 1.
    std::shared_ptr<const InputPartition> int_line_partition(int max_cells = 5) {
        const long n = range(1, max_cells);
        std::vector<long> cuts;
        long at = range(-6, 0);
        for (long i = 0; i + 1 < n; ++i) {
            cuts.push_back(at);
            at += range(1, 3);
        }
        std::vector<Cell> cells;
        const auto weights = random_weights(static_cast<std::size_t>(n));
        ExtRational lo = ExtRational::neg_inf();
        for (long i = 0; i < n; ++i) {
            const ExtRational hi = i + 1 < n ? ExtRational(Rational(cuts[static_cast<std::size_t>(i)])) : ExtRational::pos_inf();
            cells.push_back({{Interval::of(lo, hi, NumKind::Int)}, weights[static_cast<std::size_t>(i)]});
            if (hi.is_finite()) {
                lo = hi + ExtRational(1);
            }
        }
        return std::make_shared<const InputPartition>(InputPartition::explicit_cells({"x"}, cells, PartitionMode::DiscreteInt));
    }

    /// Bounded int partition of [lo, lo + span) into consecutive cells.
    std::shared_ptr<const InputPartition> bounded_int_partition(int max_cells = 4) {
        const long n = range(1, max_cells);
        long at = range(-6, 2);
        std::vector<Cell> cells;
        const auto weights = random_weights(static_cast<std::size_t>(n));
        for (long i = 0; i < n; ++i) {
            const long w = range(1, 3);
            cells.push_back({{Interval::of(Rational(at), Rational(at + w - 1), NumKind::Int)}, weights[static_cast<std::size_t>(i)]});
            at += w;
        }
        return std::make_shared<const InputPartition>(InputPartition::explicit_cells({"x"}, cells, PartitionMode::DiscreteInt));
    }

    /// Real cells [i, i+1] with random weights.
    std::shared_ptr<const InputPartition> real_line_partition(int max_cells = 5) {
        const long n = range(1, max_cells);
        std::vector<Cell> cells;
        const auto weights = random_weights(static_cast<std::size_t>(n));
        for (long i = 0; i < n; ++i) {
            cells.push_back({{Interval::of(Rational(i), Rational(i + 1), NumKind::Real)}, weights[static_cast<std::size_t>(i)]});
        }
        return std::make_shared<const InputPartition>(InputPartition::explicit_cells({"x"}, cells, PartitionMode::ContinuousReal));
    }

    /// Positive rational weights summing to 1.
    std::vector<Rational> random_weights(std::size_t n) {
        std::vector<Rational> w;
        Rational total(0);
        for (std::size_t i = 0; i < n; ++i) {
            w.emplace_back(range(1, 6));
            total += w.back();
        }
        for (auto& x : w) {
            x /= total;
        }
        return w;
    }

    /// Table with random entries over a partition.
    ImgTable table(std::shared_ptr<const InputPartition> part, NumKind kind, bool wide = false) {
        ImgTable t{part, {}, TableProvenance::External};
        for (std::size_t i = 0; i < part->size(); ++i) {
            t.entries.push_back(wide ? wide_output(kind) : output(kind));
        }
        return t;
    }

    /// Random loop-free program over real parameters x1..xn, as source text.
    std::string loop_free_program(std::size_t params, bool branches, int max_stmts = 5) {
        std::string src = "double p(";
        for (std::size_t i = 1; i <= params; ++i) {
            src += (i > 1 ? ", double x" : "double x") + std::to_string(i);
        }
        src += ") {\n  double y; y = ";
        y_ready_ = false;
        src += expr(params, 2) + ";\n";
        y_ready_ = true;
        const long n = range(1, max_stmts);
        for (long s = 0; s < n; ++s) {
            src += statement(params, branches, 1);
        }
        return src + "  return " + expr(params, 2) + ";\n}\n";
    }

  private:
    std::string var(std::size_t params) {
        const long i = range(y_ready_ ? 0 : 1, static_cast<long>(params));
        return i == 0 ? "y" : "x" + std::to_string(i);
    }

    // Quarter values print exactly as decimals.
    std::string literal() {
        const Rational r(range(-12, 12), 4);
        const std::string s = std::to_string(r.to_double());
        return r.sign() < 0 ? "(" + s + ")" : s;
    }

    // Operands are generated into locals so the output does not depend on
    // the compiler's evaluation order.
    std::string expr(std::size_t params, int depth) {
        if (depth == 0 || coin(0.35)) {
            return coin(0.7) ? var(params) : literal();
        }
        const long op = range(0, 3);
        const std::string a = expr(params, depth - 1);
        if (op == 3) {
            return "-(" + a + ")";
        }
        const std::string b = expr(params, depth - 1);
        return "(" + a + (op == 0 ? " + " : op == 1 ? " - " : " * ") + b + ")";
    }

    std::string statement(std::size_t params, bool branches, int depth) {
        if (branches && depth > 0 && coin(0.35)) {
            static const std::vector<std::string> ops = {"<", "<=", ">", ">=", "==", "!="};
            const std::string lhs = expr(params, 1);
            const std::string op = pick(ops);
            const std::string rhs = expr(params, 1);
            std::string s = "  if (" + lhs + " " + op + " " + rhs + ") {\n";
            s += statement(params, branches, depth - 1) + "  }";
            if (coin()) {
                s += " else {\n" + statement(params, branches, depth - 1) + "  }";
            }
            return s + "\n";
        }
        return "  y = " + expr(params, 2) + ";\n";
    }

    std::mt19937_64 rng_;
    bool y_ready_ = true;
};

// All set partitions of {0..n-1}, as restricted growth strings.
inline std::vector<std::vector<std::vector<std::size_t>>> set_partitions(std::size_t n) {
    std::vector<std::vector<std::vector<std::size_t>>> out;
    std::vector<std::size_t> rgs(n, 0);
    while (true) {
        std::size_t blocks = 0;
        for (const auto b : rgs) {
            blocks = std::max(blocks, b + 1);
        }
        std::vector<std::vector<std::size_t>> part(blocks);
        for (std::size_t i = 0; i < n; ++i) {
            part[rgs[i]].push_back(i);
        }
        out.push_back(part);
        // next restricted growth string
        std::size_t i = n;
        while (i-- > 1) {
            std::size_t mx = 0;
            for (std::size_t j = 0; j < i; ++j) {
                mx = std::max(mx, rgs[j]);
            }
            if (rgs[i] <= mx) {
                ++rgs[i];
                std::fill(rgs.begin() + static_cast<long>(i) + 1, rgs.end(), 0);
                break;
            }
        }
        if (i == 0 || n <= 1) {
            return out;
        }
    }
}

} // namespace testsupport
