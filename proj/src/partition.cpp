// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#include "probbounds/partition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "probbounds/errors.hpp"

namespace probbounds {

namespace {

constexpr std::size_t kMaxCells = 50'000'000;

// Splits a bounded interval into `k` equal parts.
std::vector<Interval> split(const Interval& i, std::uint32_t k, PartitionMode mode, const std::string& name) {
    if (!i.is_bounded()) {
        throw PartitionError("dimension '" + name + "' is unbounded; a uniform measure needs a finite domain");
    }
    std::vector<Interval> parts;
    parts.reserve(k);
    const Rational lo = i.lo().value();
    if (mode == PartitionMode::DiscreteInt) {
        const Rational count = integer_count(i);
        const Rational step = count / Rational(static_cast<long>(k));
        if (!step.is_integer()) {
            throw PartitionError("dimension '" + name + "' has " + count.str() + " integers, not divisible into " +
                                 std::to_string(k) + " equal parts");
        }
        for (std::uint32_t j = 0; j < k; ++j) {
            const Rational a = lo + step * Rational(static_cast<long>(j));
            parts.push_back(Interval::of(a, a + step - 1, NumKind::Int));
        }
        return parts;
    }
    const Rational step = i.width() / Rational(static_cast<long>(k));
    for (std::uint32_t j = 0; j < k; ++j) {
        const Rational a = lo + step * Rational(static_cast<long>(j));
        // The last upper endpoint is the domain's own, exactly.
        const Rational b = j + 1 == k ? i.hi().value() : a + step;
        parts.push_back(Interval::of(a, b, NumKind::Real));
    }
    return parts;
}

// Half-open image [start, end) of a cell side, used for exact tiling checks.
std::pair<ExtRational, ExtRational> half_open(const Interval& i, PartitionMode mode) {
    if (mode == PartitionMode::DiscreteInt) {
        return {i.lo(), i.hi().is_finite() ? i.hi() + ExtRational(1) : i.hi()};
    }
    return {i.lo(), i.hi()};
}

Box convert_box(const Box& box, PartitionMode mode) {
    Box out;
    out.reserve(box.size());
    const NumKind k = value_kind(mode);
    for (const auto& i : box) {
        out.push_back(i.kind() == k ? i : Interval::of(i.lo(), i.hi(), k));
    }
    return out;
}

} // namespace

const char* to_string(PartitionMode m) { return m == PartitionMode::DiscreteInt ? "int" : "real"; }

PartitionMode parse_partition_mode(std::string_view s) {
    if (s == "int" || s == "discrete-int") {
        return PartitionMode::DiscreteInt;
    }
    if (s == "real" || s == "continuous-real") {
        return PartitionMode::ContinuousReal;
    }
    throw PartitionError("unknown partition mode '" + std::string(s) + "'");
}

NumKind value_kind(PartitionMode m) { return m == PartitionMode::DiscreteInt ? NumKind::Int : NumKind::Real; }

Rational integer_count(const Interval& i) { return i.hi().value() - i.lo().value() + 1; }

InputPartition InputPartition::grid(std::vector<std::string> names, Box domain, std::vector<std::uint32_t> subdivisions,
                                    PartitionMode mode) {
    if (names.size() != domain.size() || names.size() != subdivisions.size()) {
        throw PartitionError("grid needs one domain interval and one subdivision count per dimension");
    }
    std::size_t total = 1;
    for (std::size_t d = 0; d < subdivisions.size(); ++d) {
        if (subdivisions[d] < 1) {
            throw PartitionError("subdivision count for '" + names[d] + "' must be at least 1");
        }
        total *= subdivisions[d];
        if (total > kMaxCells) {
            throw PartitionError("grid has more than " + std::to_string(kMaxCells) + " cells");
        }
    }
    domain = convert_box(domain, mode);
    std::vector<std::vector<Interval>> sides;
    sides.reserve(domain.size());
    for (std::size_t d = 0; d < domain.size(); ++d) {
        sides.push_back(split(domain[d], subdivisions[d], mode, names[d]));
    }

    InputPartition p;
    p.mode_ = mode;
    p.names_ = std::move(names);
    p.domain_ = std::move(domain);
    const Rational weight = Rational(1) / Rational(static_cast<long>(total));
    p.cells_.reserve(total);
    std::vector<std::size_t> idx(sides.size(), 0);
    for (std::size_t n = 0; n < total; ++n) {
        Box box;
        box.reserve(sides.size());
        for (std::size_t d = 0; d < sides.size(); ++d) {
            box.push_back(sides[d][idx[d]]);
        }
        p.cells_.push_back({std::move(box), weight});
        // Odometer: the last dimension varies fastest.
        for (std::size_t d = sides.size(); d-- > 0;) {
            if (++idx[d] < sides[d].size()) {
                break;
            }
            idx[d] = 0;
        }
    }
    p.subdivisions_ = std::move(subdivisions);
    return p;
}

InputPartition InputPartition::explicit_cells(std::vector<std::string> names, std::vector<Cell> cells,
                                              PartitionMode mode) {
    if (cells.empty()) {
        throw PartitionError("partition has no cells");
    }
    const std::size_t dims = names.size();
    Rational total(0);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c].box.size() != dims) {
            throw PartitionError("cell " + std::to_string(c) + " binds " + std::to_string(cells[c].box.size()) +
                                 " dimensions, expected " + std::to_string(dims));
        }
        if (cells[c].weight < Rational(0) || cells[c].weight > Rational(1)) {
            throw PartitionError("cell " + std::to_string(c) + " has weight " + cells[c].weight.str() +
                                 " outside [0,1]");
        }
        cells[c].box = convert_box(cells[c].box, mode);
        total += cells[c].weight;
    }
    if (total != Rational(1)) {
        throw PartitionError("weights sum to " + total.str() + ", expected 1");
    }

    Box hull = cells.front().box;
    for (const auto& c : cells) {
        for (std::size_t d = 0; d < dims; ++d) {
            hull[d] = join(hull[d], c.box[d]);
        }
    }

    // Exact tiling check on the grid induced by all cell boundaries.
    std::vector<std::vector<ExtRational>> cuts(dims);
    for (const auto& c : cells) {
        for (std::size_t d = 0; d < dims; ++d) {
            const auto [s, e] = half_open(c.box[d], mode);
            cuts[d].push_back(s);
            cuts[d].push_back(e);
        }
    }
    std::size_t slots = 1;
    std::vector<std::size_t> segs(dims);
    for (std::size_t d = 0; d < dims; ++d) {
        std::sort(cuts[d].begin(), cuts[d].end());
        cuts[d].erase(std::unique(cuts[d].begin(), cuts[d].end()), cuts[d].end());
        segs[d] = cuts[d].size() - 1;
        slots *= std::max<std::size_t>(segs[d], 1);
        if (slots > kMaxCells) {
            throw PartitionError("explicit partition too fragmented to validate");
        }
    }
    std::vector<std::int64_t> owner(slots, -1);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        std::vector<std::size_t> from(dims);
        std::vector<std::size_t> to(dims);
        bool empty = false;
        for (std::size_t d = 0; d < dims; ++d) {
            const auto [s, e] = half_open(cells[c].box[d], mode);
            from[d] = static_cast<std::size_t>(std::lower_bound(cuts[d].begin(), cuts[d].end(), s) - cuts[d].begin());
            to[d] = static_cast<std::size_t>(std::lower_bound(cuts[d].begin(), cuts[d].end(), e) - cuts[d].begin());
            empty = empty || from[d] == to[d];
        }
        if (empty) {
            continue; // degenerate real cell: no volume
        }
        std::vector<std::size_t> at = from;
        while (true) {
            std::size_t flat = 0;
            for (std::size_t d = 0; d < dims; ++d) {
                flat = flat * std::max<std::size_t>(segs[d], 1) + at[d];
            }
            if (owner[flat] >= 0) {
                throw PartitionError("cells " + std::to_string(owner[flat]) + " and " + std::to_string(c) +
                                     " overlap");
            }
            owner[flat] = static_cast<std::int64_t>(c);
            std::size_t d = dims;
            while (d-- > 0) {
                if (++at[d] < to[d]) {
                    break;
                }
                at[d] = from[d];
            }
            if (d == static_cast<std::size_t>(-1)) {
                break;
            }
        }
    }
    if (dims > 0) {
        const auto gap = std::find(owner.begin(), owner.end(), -1);
        if (gap != owner.end()) {
            std::size_t flat = static_cast<std::size_t>(gap - owner.begin());
            std::string where;
            for (std::size_t d = dims; d-- > 0;) {
                const std::size_t n = std::max<std::size_t>(segs[d], 1);
                const std::size_t j = flat % n;
                flat /= n;
                where = names[d] + " in [" + cuts[d][j].str() + "," + cuts[d][j + 1].str() + ")" +
                        (where.empty() ? "" : ", ") + where;
            }
            throw PartitionError("coverage gap at " + where);
        }
    }

    InputPartition p;
    p.mode_ = mode;
    p.names_ = std::move(names);
    p.domain_ = std::move(hull);
    p.cells_ = std::move(cells);
    return p;
}

InputPartition InputPartition::refine(std::uint32_t factor) const {
    if (!is_grid()) {
        throw PartitionError("only grid partitions can be refined");
    }
    if (factor < 1) {
        throw PartitionError("refinement factor must be at least 1");
    }
    if (factor == 1) {
        return *this;
    }
    std::size_t per_cell = 1;
    for (std::size_t d = 0; d < dims(); ++d) {
        per_cell *= factor;
    }
    if (per_cell * cells_.size() > kMaxCells) {
        throw PartitionError("refined partition would exceed " + std::to_string(kMaxCells) + " cells");
    }
    InputPartition out;
    out.mode_ = mode_;
    out.names_ = names_;
    out.domain_ = domain_;
    out.subdivisions_ = *subdivisions_;
    for (auto& s : *out.subdivisions_) {
        s *= factor;
    }
    out.cells_.reserve(per_cell * cells_.size());
    out.parents_.reserve(per_cell * cells_.size());
    const Rational share = Rational(1) / Rational(static_cast<long>(per_cell));
    for (std::size_t c = 0; c < cells_.size(); ++c) {
        std::vector<std::vector<Interval>> sides;
        for (std::size_t d = 0; d < dims(); ++d) {
            sides.push_back(split(cells_[c].box[d], factor, mode_, names_[d]));
        }
        std::vector<std::size_t> idx(dims(), 0);
        for (std::size_t n = 0; n < per_cell; ++n) {
            Box box;
            for (std::size_t d = 0; d < dims(); ++d) {
                box.push_back(sides[d][idx[d]]);
            }
            out.cells_.push_back({std::move(box), cells_[c].weight * share});
            out.parents_.push_back(c);
            for (std::size_t d = dims(); d-- > 0;) {
                if (++idx[d] < factor) {
                    break;
                }
                idx[d] = 0;
            }
        }
    }
    return out;
}

bool InputPartition::is_finer_than(const InputPartition& coarser) const {
    return std::all_of(cells_.begin(), cells_.end(), [&](const Cell& fine) {
        return std::any_of(coarser.cells().begin(), coarser.cells().end(), [&](const Cell& coarse) {
            for (std::size_t d = 0; d < fine.box.size(); ++d) {
                if (!coarse.box[d].contains(fine.box[d])) {
                    return false;
                }
            }
            return true;
        });
    });
}

} // namespace probbounds
