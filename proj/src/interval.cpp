// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#include "probbounds/interval.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace probbounds {

namespace {

ExtRational round_up(const ExtRational& v) { return v.is_finite() ? ExtRational(v.value().ceil()) : v; }
ExtRational round_down(const ExtRational& v) { return v.is_finite() ? ExtRational(v.value().floor()) : v; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())) != 0) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())) != 0) {
        s.remove_suffix(1);
    }
    return s;
}

// Two normalized-kind intervals can be merged into one when they overlap or,
// for integers, when no integer lies strictly between them.
bool mergeable(const Interval& a, const Interval& b) {
    if (a.kind() == NumKind::Int && b.kind() == NumKind::Int) {
        if (!a.hi().is_finite()) {
            return true;
        }
        return b.lo() <= a.hi() + ExtRational(1);
    }
    return b.lo() <= a.hi();
}

} // namespace

std::optional<Interval> Interval::make(ExtRational lo, ExtRational hi, NumKind kind) {
    if (lo.is_pos_inf() || hi.is_neg_inf()) {
        return std::nullopt;
    }
    if (kind == NumKind::Int) {
        lo = round_up(lo);
        hi = round_down(hi);
    }
    if (hi < lo) {
        return std::nullopt;
    }
    return Interval(std::move(lo), std::move(hi), kind);
}

Interval Interval::of(ExtRational lo, ExtRational hi, NumKind kind) {
    const std::string desc = "[" + lo.str() + "," + hi.str() + "]";
    auto i = make(std::move(lo), std::move(hi), kind);
    if (!i) {
        throw std::invalid_argument("empty interval " + desc);
    }
    return *i;
}

Interval Interval::parse(std::string_view text, NumKind kind) {
    const std::string_view s = trim(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
        throw std::invalid_argument("interval must look like [lo,hi]: '" + std::string(s) + "'");
    }
    const std::string_view inner = s.substr(1, s.size() - 2);
    const auto comma = inner.find(',');
    if (comma == std::string_view::npos) {
        throw std::invalid_argument("interval must look like [lo,hi]: '" + std::string(s) + "'");
    }
    return of(ExtRational::parse(inner.substr(0, comma)), ExtRational::parse(inner.substr(comma + 1)), kind);
}

bool Interval::contains(const Rational& v) const {
    const ExtRational x(v);
    return lo_ <= x && x <= hi_;
}

Rational Interval::width() const {
    if (!is_bounded()) {
        throw std::logic_error("width of unbounded interval " + str());
    }
    return hi_.value() - lo_.value();
}

std::string Interval::str() const { return "[" + lo_.str() + "," + hi_.str() + "]"; }

NumKind result_kind(NumKind a, NumKind b) {
    return a == NumKind::Int && b == NumKind::Int ? NumKind::Int : NumKind::Real;
}

Interval add(const Interval& a, const Interval& b) {
    return Interval::of(a.lo() + b.lo(), a.hi() + b.hi(), result_kind(a.kind(), b.kind()));
}

Interval sub(const Interval& a, const Interval& b) { return add(a, neg(b)); }

Interval neg(const Interval& a) { return Interval::of(-a.hi(), -a.lo(), a.kind()); }

Interval mul(const Interval& a, const Interval& b) {
    const std::array<ExtRational, 4> p = {a.lo() * b.lo(), a.lo() * b.hi(), a.hi() * b.lo(), a.hi() * b.hi()};
    return Interval::of(*std::min_element(p.begin(), p.end()), *std::max_element(p.begin(), p.end()),
                        result_kind(a.kind(), b.kind()));
}

Interval join(const Interval& a, const Interval& b) {
    return Interval::of(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()), result_kind(a.kind(), b.kind()));
}

std::optional<Interval> meet(const Interval& a, const Interval& b) {
    // The meet keeps the finer kind: an int variable filtered by a real bound stays int.
    const NumKind kind = a.kind() == NumKind::Int || b.kind() == NumKind::Int ? NumKind::Int : NumKind::Real;
    return Interval::make(std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi()), kind);
}

Interval widen(const Interval& prev, const Interval& next) {
    const ExtRational lo = next.lo() < prev.lo() ? ExtRational::neg_inf() : prev.lo();
    const ExtRational hi = next.hi() > prev.hi() ? ExtRational::pos_inf() : prev.hi();
    return Interval::of(lo, hi, result_kind(prev.kind(), next.kind()));
}

Interval sign_hull(const Interval& a) {
    const ExtRational zero(0);
    if (a.kind() == NumKind::Int) {
        const ExtRational one(1);
        const ExtRational lo = a.lo() <= -one ? ExtRational::neg_inf() : (a.lo() == zero ? zero : one);
        const ExtRational hi = a.hi() >= one ? ExtRational::pos_inf() : (a.hi() == zero ? zero : -one);
        return Interval::of(lo, hi, NumKind::Int);
    }
    const ExtRational lo = a.lo() < zero ? ExtRational::neg_inf() : zero;
    const ExtRational hi = a.hi() > zero ? ExtRational::pos_inf() : zero;
    return Interval::of(lo, hi, NumKind::Real);
}

const char* to_string(BoundaryPolicy p) { return p == BoundaryPolicy::Closed ? "closed" : "measure-zero"; }

BoundaryPolicy parse_boundary_policy(std::string_view s) {
    if (s == "closed") {
        return BoundaryPolicy::Closed;
    }
    if (s == "measure-zero") {
        return BoundaryPolicy::MeasureZero;
    }
    throw std::invalid_argument("unknown boundary policy '" + std::string(s) + "'");
}

bool intervals_overlap(const Interval& a, const Interval& b, BoundaryPolicy policy) {
    const auto m = meet(a, b);
    if (!m) {
        return false;
    }
    if (policy == BoundaryPolicy::Closed || a.kind() == NumKind::Int || b.kind() == NumKind::Int) {
        return true;
    }
    return !m->is_point() || a.is_point() || b.is_point();
}

AbstractOutput::AbstractOutput(std::vector<Interval> intervals, bool may_diverge) : may_diverge_(may_diverge) {
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& x, const Interval& y) { return x.lo() < y.lo(); });
    for (auto& i : intervals) {
        if (!numeric_.empty() && mergeable(numeric_.back(), i)) {
            numeric_.back() = join(numeric_.back(), i);
        } else {
            numeric_.push_back(std::move(i));
        }
    }
}

AbstractOutput AbstractOutput::parse(std::string_view intervals, bool may_diverge, NumKind kind) {
    std::string_view s = trim(intervals);
    if (s.empty() || s == "{}") {
        return {{}, may_diverge};
    }
    std::vector<Interval> out;
    while (!s.empty()) {
        const auto bar = s.find('|');
        out.push_back(Interval::parse(s.substr(0, bar), kind));
        if (bar == std::string_view::npos) {
            break;
        }
        s = trim(s.substr(bar + 1));
        if (s.empty()) {
            throw std::invalid_argument("dangling '|' in interval list");
        }
    }
    return {std::move(out), may_diverge};
}

bool AbstractOutput::contains(const Rational& v) const {
    return std::any_of(numeric_.begin(), numeric_.end(), [&](const Interval& i) { return i.contains(v); });
}

std::string AbstractOutput::intervals_str() const {
    if (numeric_.empty()) {
        return "{}";
    }
    std::string out;
    for (const auto& i : numeric_) {
        out += (out.empty() ? "" : "|") + i.str();
    }
    return out;
}

std::string AbstractOutput::str() const {
    std::ostringstream os;
    if (is_empty()) {
        return "{}";
    }
    if (may_diverge_) {
        os << "{bot}";
    }
    for (std::size_t i = 0; i < numeric_.size(); ++i) {
        os << ((i > 0 || may_diverge_) ? " u " : "") << numeric_[i].str();
    }
    return os.str();
}

bool overlap(const AbstractOutput& a, const AbstractOutput& e, BoundaryPolicy policy) {
    if (a.may_diverge() && e.may_diverge()) {
        return true;
    }
    // Both lists are sorted; walk them together.
    const auto& xs = a.numeric();
    const auto& ys = e.numeric();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < xs.size() && j < ys.size()) {
        if (intervals_overlap(xs[i], ys[j], policy)) {
            return true;
        }
        if (xs[i].hi() < ys[j].hi()) {
            ++i;
        } else {
            ++j;
        }
    }
    return false;
}

bool subset(const AbstractOutput& a, const AbstractOutput& e) {
    if (a.may_diverge() && !e.may_diverge()) {
        return false;
    }
    // e is normalized, so each interval of a must fit inside a single interval of e.
    return std::all_of(a.numeric().begin(), a.numeric().end(), [&](const Interval& x) {
        return std::any_of(e.numeric().begin(), e.numeric().end(), [&](const Interval& y) { return y.contains(x); });
    });
}

AbstractOutput intersect_outputs(const AbstractOutput& a, const AbstractOutput& b) {
    std::vector<Interval> out;
    for (const auto& x : a.numeric()) {
        for (const auto& y : b.numeric()) {
            if (auto m = meet(x, y)) {
                out.push_back(*m);
            }
        }
    }
    return {std::move(out), a.may_diverge() && b.may_diverge()};
}

AbstractOutput union_outputs(const AbstractOutput& a, const AbstractOutput& b) {
    std::vector<Interval> all = a.numeric();
    all.insert(all.end(), b.numeric().begin(), b.numeric().end());
    return {std::move(all), a.may_diverge() || b.may_diverge()};
}

AbstractOutput complement(const AbstractOutput& e, NumKind kind) {
    std::vector<Interval> gaps;
    const ExtRational step = kind == NumKind::Int ? ExtRational(1) : ExtRational(0);
    ExtRational cursor = ExtRational::neg_inf();
    bool open_from_left = true;
    for (const auto& i : e.numeric()) {
        if (i.lo().is_finite()) {
            const ExtRational upto = i.lo() - step;
            const ExtRational from = open_from_left ? cursor : cursor + step;
            if (auto gap = Interval::make(from, upto, kind)) {
                gaps.push_back(*gap);
            }
        }
        cursor = i.hi();
        open_from_left = false;
        if (cursor.is_pos_inf()) {
            break;
        }
    }
    if (open_from_left) {
        gaps.push_back(Interval::top(kind));
    } else if (!cursor.is_pos_inf()) {
        gaps.push_back(Interval::of(cursor + step, ExtRational::pos_inf(), kind));
    }
    return {std::move(gaps), !e.may_diverge()};
}

} // namespace probbounds
