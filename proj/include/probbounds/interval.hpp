// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "probbounds/ast.hpp"
#include "probbounds/rational.hpp"

namespace probbounds {

/// Closed interval [lo, hi] over the reals or the integers. Endpoints may be
/// infinite (lo may be -inf, hi may be +inf); the interval is never empty.
/// Int intervals always have integer or infinite endpoints.
class Interval {
  public:
    /// Returns nullopt when the (integer-rounded) interval is empty.
    static std::optional<Interval> make(ExtRational lo, ExtRational hi, NumKind kind);
    /// Like make() but throws std::invalid_argument on an empty result.
    static Interval of(ExtRational lo, ExtRational hi, NumKind kind);
    static Interval point(const Rational& v, NumKind kind) { return of(v, v, kind); }
    static Interval top(NumKind kind) { return of(ExtRational::neg_inf(), ExtRational::pos_inf(), kind); }
    /// Parses `[lo,hi]`, e.g. `[-inf,-1]` or `[0,7/10]`.
    static Interval parse(std::string_view text, NumKind kind);

    [[nodiscard]] const ExtRational& lo() const { return lo_; }
    [[nodiscard]] const ExtRational& hi() const { return hi_; }
    [[nodiscard]] NumKind kind() const { return kind_; }
    [[nodiscard]] bool is_point() const { return lo_ == hi_; }
    [[nodiscard]] bool is_bounded() const { return lo_.is_finite() && hi_.is_finite(); }
    [[nodiscard]] bool contains(const Rational& v) const;
    [[nodiscard]] bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    /// hi - lo for bounded intervals.
    [[nodiscard]] Rational width() const;
    [[nodiscard]] std::string str() const;

    friend bool operator==(const Interval&, const Interval&) = default;

  private:
    Interval(ExtRational lo, ExtRational hi, NumKind kind) : lo_(std::move(lo)), hi_(std::move(hi)), kind_(kind) {}

    ExtRational lo_;
    ExtRational hi_;
    NumKind kind_ = NumKind::Real;
};

/// Kind of a binary result: Int only when both operands are Int.
NumKind result_kind(NumKind a, NumKind b);

Interval add(const Interval& a, const Interval& b);
Interval sub(const Interval& a, const Interval& b);
Interval mul(const Interval& a, const Interval& b);
Interval neg(const Interval& a);
/// Convex hull.
Interval join(const Interval& a, const Interval& b);
std::optional<Interval> meet(const Interval& a, const Interval& b);
/// Bounds of `next` that moved outside `prev` jump to infinity.
Interval widen(const Interval& prev, const Interval& next);
/// Closest enclosing element of the sign lattice, whose endpoints are drawn
/// from {-inf, -1, 0, 1, +inf} (int) or {-inf, 0, +inf} (real).
Interval sign_hull(const Interval& a);

/// How an image interval meeting an event in exactly one boundary point is
/// counted.
enum class BoundaryPolicy : std::uint8_t {
    /// Literal set intersection: any common point counts.
    Closed,
    /// For real intervals, a single shared endpoint between two
    /// non-degenerate intervals is ignored. Sound whenever the output
    /// distribution puts no mass on event endpoints.
    MeasureZero,
};

const char* to_string(BoundaryPolicy p);
BoundaryPolicy parse_boundary_policy(std::string_view s);

bool intervals_overlap(const Interval& a, const Interval& b, BoundaryPolicy policy);

/// Concretized result of a forward analysis on a set of inputs: a finite
/// union of intervals together with a flag for the non-termination atom.
/// Stored normalized: sorted, pairwise disjoint, non-adjacent.
class AbstractOutput {
  public:
    AbstractOutput() = default;
    AbstractOutput(std::vector<Interval> intervals, bool may_diverge);

    static AbstractOutput bottom_only() { return {{}, true}; }
    static AbstractOutput empty() { return {}; }
    /// The whole value space, optionally with the non-termination atom.
    static AbstractOutput top(NumKind kind, bool with_bottom) { return {{Interval::top(kind)}, with_bottom}; }
    static AbstractOutput of(const Interval& i, bool may_diverge = false) { return {{i}, may_diverge}; }
    /// Parses `[lo,hi]|[lo,hi]|...`; an empty string or `{}` means no intervals.
    static AbstractOutput parse(std::string_view intervals, bool may_diverge, NumKind kind);

    [[nodiscard]] const std::vector<Interval>& numeric() const { return numeric_; }
    [[nodiscard]] bool may_diverge() const { return may_diverge_; }
    [[nodiscard]] bool is_empty() const { return numeric_.empty() && !may_diverge_; }
    [[nodiscard]] bool contains(const Rational& v) const;
    /// `[lo,hi]|...` without the bottom flag; `{}` when there are no intervals.
    [[nodiscard]] std::string intervals_str() const;
    /// Human form, e.g. `{bot} u [-4,-16/5]`.
    [[nodiscard]] std::string str() const;

    friend bool operator==(const AbstractOutput&, const AbstractOutput&) = default;

  private:
    std::vector<Interval> numeric_;
    bool may_diverge_ = false;
};

/// img(t) and e share a value (per `policy`) or both contain bottom.
bool overlap(const AbstractOutput& a, const AbstractOutput& e, BoundaryPolicy policy = BoundaryPolicy::Closed);
/// Every value of a lies in e, and bottom in a implies bottom in e.
bool subset(const AbstractOutput& a, const AbstractOutput& e);
AbstractOutput intersect_outputs(const AbstractOutput& a, const AbstractOutput& b);
AbstractOutput union_outputs(const AbstractOutput& a, const AbstractOutput& b);
/// Complement within the value space of `kind` plus bottom. Over the reals
/// the numeric part is the closure of the set complement, which is exact up
/// to event endpoints.
AbstractOutput complement(const AbstractOutput& e, NumKind kind);

} // namespace probbounds
