// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "probbounds/rational.hpp"

namespace probbounds {

/// Subset of a finite universe, one bit per element.
using Subset = boost::dynamic_bitset<>;

/// Finite probability space whose sigma-algebra is generated by a partition
/// of the points into blocks.
class FiniteMeasurableSpace {
  public:
    /// Blocks are lists of point indices. Throws ValidationError unless they
    /// partition the points and the weights are non-negative and sum to 1.
    FiniteMeasurableSpace(std::vector<std::string> points, std::vector<std::vector<std::size_t>> blocks,
                          std::vector<Rational> weights);

    [[nodiscard]] std::size_t size() const { return points_.size(); }
    [[nodiscard]] const std::vector<std::string>& points() const { return points_; }
    [[nodiscard]] const std::vector<Subset>& blocks() const { return blocks_; }
    [[nodiscard]] const std::vector<Rational>& weights() const { return weights_; }
    [[nodiscard]] std::size_t index_of(const std::string& point) const;

    [[nodiscard]] Subset empty_set() const { return Subset(size()); }
    [[nodiscard]] Subset full_set() const { return ~empty_set(); }

    /// Least measurable superset: the union of blocks meeting s.
    [[nodiscard]] Subset lift(const Subset& s) const;
    /// Greatest measurable subset: the union of blocks inside s.
    [[nodiscard]] Subset inner(const Subset& s) const;
    [[nodiscard]] bool is_measurable(const Subset& s) const { return lift(s) == s; }
    /// Throws ValidationError for a non-measurable set.
    [[nodiscard]] Rational measure(const Subset& s) const;

  private:
    std::vector<std::string> points_;
    std::vector<Subset> blocks_;
    std::vector<Rational> weights_;
};

/// Over-approximate pre-image map from sets of output atoms to sets of
/// points. Each source is either given on single atoms and extended by union,
/// or on explicit atom sets; combined tables intersect their sources.
class PreTable {
  public:
    struct Source {
        std::vector<Subset> singletons; // empty when only explicit sets are given
        std::map<Subset, Subset> explicit_sets;
    };

    PreTable(std::vector<std::string> atoms, std::size_t num_points, std::vector<Source> sources);
    /// Table given on single atoms: `singletons[i]` over-approximates pre({atom i}).
    static PreTable from_singletons(std::vector<std::string> atoms, std::size_t num_points,
                                    std::vector<Subset> singletons);

    [[nodiscard]] const std::vector<std::string>& atoms() const { return atoms_; }
    [[nodiscard]] std::size_t num_points() const { return num_points_; }
    [[nodiscard]] const std::vector<Source>& sources() const { return sources_; }
    [[nodiscard]] std::size_t index_of(const std::string& atom) const;
    [[nodiscard]] Subset no_atoms() const { return Subset(atoms_.size()); }

    /// pre#(event). Throws ValidationError where no source defines it.
    [[nodiscard]] Subset apply(const Subset& event) const;

  private:
    std::vector<std::string> atoms_;
    std::size_t num_points_;
    std::vector<Source> sources_;
};

Rational upper_back(const FiniteMeasurableSpace& space, const PreTable& pre, const Subset& event);
/// Complement of the lifted pre# of the complement event.
Subset dual_pre(const FiniteMeasurableSpace& space, const PreTable& pre, const Subset& event);
Rational lower_back(const FiniteMeasurableSpace& space, const PreTable& pre, const Subset& event);

/// Pointwise intersection. Throws ValidationError when the tables disagree
/// on atoms or point count.
PreTable combine_pre(const PreTable& a, const PreTable& b);

/// Exact pre-image of a total function given as point index -> atom index.
Subset exact_pre(const std::vector<std::size_t>& f, const Subset& event);

/// Throws ValidationError when pre# misses part of the exact pre-image of
/// some single atom or explicitly listed event.
void validate_pre(const PreTable& pre, const std::vector<std::size_t>& f);

struct BackwardEvent {
    std::string name;
    Subset atoms;
};

struct BackwardInstance {
    FiniteMeasurableSpace space;
    PreTable pre;
    std::optional<std::vector<std::size_t>> concrete;
    std::vector<BackwardEvent> events;
    bool events_given = false;
};

struct BackwardRow {
    std::string name;
    Rational lower;
    Rational upper;
};

/// Parses the JSON instance format. Schema problems throw ConfigError; a
/// concrete function that pre# does not cover throws ValidationError.
BackwardInstance load_backward_instance(std::string_view json_text);
/// Bounds for the listed events, or for every atom set (by size, then
/// lexicographically) when the instance has no `events` key.
std::vector<BackwardRow> backward_report(const BackwardInstance& inst);

/// `{c,d}` style name of an atom set.
std::string subset_name(const PreTable& pre, const Subset& event);

} // namespace probbounds
