// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "probbounds/ast.hpp"
#include "probbounds/bounds.hpp"
#include "probbounds/partition.hpp"
#include "probbounds/rational.hpp"

namespace probbounds {

/// Description of the random stream, recorded alongside estimates.
inline constexpr const char* kSamplerDescription = "mt19937_64 seeded by seed_seq{seed, chunk}, 4096 samples/chunk";
inline constexpr std::size_t kSamplesPerChunk = 4096;

struct OracleEstimate {
    std::string event;
    Rational estimate; // hits / samples
    double ci_low = 0;
    double ci_high = 1;
    std::uint64_t samples = 0;
    std::uint64_t hits = 0;
    double diverged_fraction = 0;
};

using WeightedPoint = std::pair<std::vector<Rational>, Rational>;

/// Exact output probability of each event. Runs that exceed `budget` steps
/// count toward the bottom atom. Weights must sum to 1.
std::vector<Rational> exhaustive(const Program& p, const std::vector<WeightedPoint>& points,
                                 const std::vector<OutputEvent>& events, std::uint64_t budget);

/// Every integer point of a bounded int partition, each carrying its cell's
/// weight spread evenly. Throws AnalysisError past `limit` points.
std::vector<WeightedPoint> discrete_points(const InputPartition& partition, std::size_t limit = 10'000'000);

/// Monte-Carlo estimate: pick a cell by weight, then a uniform point in it.
/// Intervals are exact Clopper-Pearson at `confidence`. Chunks of samples
/// run in parallel with independent seeded streams, so the result depends
/// only on the seed.
std::vector<OracleEstimate> mc_estimate(const Program& p, const InputPartition& partition,
                                        const std::vector<OutputEvent>& events, std::uint64_t n, std::uint64_t seed,
                                        std::uint64_t budget, double confidence);
std::vector<OracleEstimate> mc_estimate_serial(const Program& p, const InputPartition& partition,
                                               const std::vector<OutputEvent>& events, std::uint64_t n,
                                               std::uint64_t seed, std::uint64_t budget, double confidence);

/// Two-sided exact binomial interval for `hits` successes in `n` trials.
std::pair<double, double> clopper_pearson(std::uint64_t hits, std::uint64_t n, double confidence);

/// The interval [lower, upper] and the confidence interval intersect.
bool consistent(const Rational& lower, const Rational& upper, const OracleEstimate& e);

void write_oracle_csv(const std::vector<OracleEstimate>& rows, std::ostream& out);

} // namespace probbounds
