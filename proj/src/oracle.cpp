// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#include "probbounds/oracle.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>

#include "parallel.hpp"
#include "probbounds/bounds.hpp"
#include "probbounds/errors.hpp"
#include "probbounds/eval.hpp"

namespace probbounds {

namespace {

struct Tally {
    std::vector<std::uint64_t> hits;
    std::uint64_t diverged = 0;
};

// Per-dimension sampling data for one cell.
struct Side {
    Rational lo;
    Rational width;          // real cells
    std::uint64_t count = 0; // int cells: number of integers
};

class Sampler {
  public:
    Sampler(const Program& p, const InputPartition& part, const std::vector<OutputEvent>& events,
            std::uint64_t budget)
        : prog_(p), part_(part), events_(events), budget_(budget) {
        if (part.dims() != p.num_params) {
            throw AnalysisError("partition has " + std::to_string(part.dims()) + " dimensions, program '" + p.name +
                                "' takes " + std::to_string(p.num_params) + " parameters");
        }
        const bool ints = part.mode() == PartitionMode::DiscreteInt;
        double acc = 0;
        for (const auto& c : part.cells()) {
            std::vector<Side> sides;
            for (const auto& iv : c.box) {
                if (!iv.is_bounded()) {
                    throw AnalysisError("Monte-Carlo sampling needs bounded cells, got " + iv.str());
                }
                Side s{iv.lo().value(), iv.width()};
                if (ints) {
                    const Rational n = integer_count(iv);
                    if (n > Rational(mpz_class("18446744073709551615", 10), mpz_class(1))) {
                        throw AnalysisError("int cell too wide to sample: " + iv.str());
                    }
                    s.count = std::stoull(n.str());
                }
                sides.push_back(std::move(s));
            }
            cells_.push_back(std::move(sides));
            acc += c.weight.to_double();
            cumulative_.push_back(acc);
        }
        ints_ = ints;
    }

    void run_chunk(std::uint64_t seed, std::uint64_t chunk, std::uint64_t count, Tally& t) const {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
        std::mt19937_64 rng(seq);
        t.hits.assign(events_.size(), 0);
        std::vector<Rational> args(part_.dims());
        for (std::uint64_t i = 0; i < count; ++i) {
            const std::size_t c = pick_cell(rng);
            for (std::size_t d = 0; d < args.size(); ++d) {
                const Side& s = cells_[c][d];
                if (ints_) {
                    args[d] = s.lo + Rational(mpz_class(static_cast<unsigned long>(uniform_below(rng, s.count))), mpz_class(1));
                } else {
                    // 53 random bits give u in [0,1); the point is exact in the cell.
                    const mpz_class k(static_cast<unsigned long>(rng() >> 11));
                    args[d] = s.lo + s.width * Rational(k, kTwo53);
                }
            }
            const ConcreteResult r = eval(prog_, args, budget_);
            if (!r.has_value()) {
                ++t.diverged;
            }
            for (std::size_t e = 0; e < events_.size(); ++e) {
                const AbstractOutput& shape = events_[e].shape;
                if (r.has_value() ? shape.contains(r.value()) : shape.may_diverge()) {
                    ++t.hits[e];
                }
            }
        }
    }

  private:
    std::size_t pick_cell(std::mt19937_64& rng) const {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * cumulative_.back();
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        return std::min(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
    }

    static std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
        if (n == 0) {
            return rng(); // the full 64-bit range
        }
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = rng();
        while (x >= limit) {
            x = rng();
        }
        return x % n;
    }

    inline static const mpz_class kTwo53 = mpz_class(1) << 53;

    const Program& prog_;
    const InputPartition& part_;
    const std::vector<OutputEvent>& events_;
    std::uint64_t budget_;
    bool ints_ = false;
    std::vector<std::vector<Side>> cells_;
    std::vector<double> cumulative_;
};

std::vector<OracleEstimate> finish(const std::vector<OutputEvent>& events, const std::vector<Tally>& tallies,
                                   std::uint64_t n, double confidence) {
    std::uint64_t diverged = 0;
    std::vector<std::uint64_t> hits(events.size(), 0);
    for (const auto& t : tallies) {
        diverged += t.diverged;
        for (std::size_t e = 0; e < events.size(); ++e) {
            hits[e] += t.hits[e];
        }
    }
    std::vector<OracleEstimate> out;
    for (std::size_t e = 0; e < events.size(); ++e) {
        const auto [lo, hi] = clopper_pearson(hits[e], n, confidence);
        out.push_back({events[e].name,
                       Rational(mpz_class(static_cast<unsigned long>(hits[e])), mpz_class(static_cast<unsigned long>(n))),
                       lo,
                       hi,
                       n,
                       hits[e],
                       static_cast<double>(diverged) / static_cast<double>(n)});
    }
    return out;
}

void check_args(std::uint64_t n, double confidence) {
    if (n == 0) {
        throw std::invalid_argument("sample count must be at least 1");
    }
    if (!(confidence > 0 && confidence < 1)) {
        throw std::invalid_argument("confidence must lie strictly between 0 and 1");
    }
}

template <typename Loop>
std::vector<OracleEstimate> estimate(const Program& p, const InputPartition& part,
                                     const std::vector<OutputEvent>& events, std::uint64_t n, std::uint64_t seed,
                                     std::uint64_t budget, double confidence, Loop loop) {
    check_args(n, confidence);
    const Sampler sampler(p, part, events, budget);
    const std::size_t chunks = static_cast<std::size_t>((n + kSamplesPerChunk - 1) / kSamplesPerChunk);
    std::vector<Tally> tallies(chunks);
    loop(chunks, [&](std::size_t c) {
        const std::uint64_t first = c * kSamplesPerChunk;
        sampler.run_chunk(seed, c, std::min<std::uint64_t>(kSamplesPerChunk, n - first), tallies[c]);
    });
    return finish(events, tallies, n, confidence);
}

} // namespace

std::vector<Rational> exhaustive(const Program& p, const std::vector<WeightedPoint>& points,
                                 const std::vector<OutputEvent>& events, std::uint64_t budget) {
    Rational total(0);
    std::vector<Rational> mass(events.size(), Rational(0));
    for (const auto& [args, w] : points) {
        total += w;
        const ConcreteResult r = eval(p, args, budget);
        for (std::size_t e = 0; e < events.size(); ++e) {
            const AbstractOutput& shape = events[e].shape;
            if (r.has_value() ? shape.contains(r.value()) : shape.may_diverge()) {
                mass[e] += w;
            }
        }
    }
    if (total != Rational(1)) {
        throw std::invalid_argument("point weights sum to " + total.str() + ", expected 1");
    }
    return mass;
}

std::vector<WeightedPoint> discrete_points(const InputPartition& partition, std::size_t limit) {
    if (partition.mode() != PartitionMode::DiscreteInt) {
        throw AnalysisError("exhaustive enumeration needs an int partition");
    }
    std::vector<WeightedPoint> out;
    for (const auto& c : partition.cells()) {
        Rational count(1);
        for (const auto& iv : c.box) {
            if (!iv.is_bounded()) {
                throw AnalysisError("exhaustive enumeration needs bounded cells, got " + iv.str());
            }
            count *= integer_count(iv);
        }
        if (count > Rational(static_cast<long>(limit - out.size()))) {
            throw AnalysisError("more than " + std::to_string(limit) + " points to enumerate");
        }
        const Rational w = c.weight / count;
        std::vector<Rational> at;
        for (const auto& iv : c.box) {
            at.push_back(iv.lo().value());
        }
        while (true) {
            out.emplace_back(at, w);
            std::size_t d = at.size();
            while (d-- > 0) {
                at[d] += Rational(1);
                if (at[d] <= c.box[d].hi().value()) {
                    break;
                }
                at[d] = c.box[d].lo().value();
            }
            if (d == static_cast<std::size_t>(-1)) {
                break;
            }
        }
    }
    return out;
}

std::vector<OracleEstimate> mc_estimate(const Program& p, const InputPartition& partition,
                                        const std::vector<OutputEvent>& events, std::uint64_t n, std::uint64_t seed,
                                        std::uint64_t budget, double confidence) {
    return estimate(p, partition, events, n, seed, budget, confidence,
                    [](std::size_t chunks, auto&& fn) { detail::parallel_for(chunks, fn); });
}

std::vector<OracleEstimate> mc_estimate_serial(const Program& p, const InputPartition& partition,
                                               const std::vector<OutputEvent>& events, std::uint64_t n,
                                               std::uint64_t seed, std::uint64_t budget, double confidence) {
    return estimate(p, partition, events, n, seed, budget, confidence, [](std::size_t chunks, auto&& fn) {
        for (std::size_t c = 0; c < chunks; ++c) {
            fn(c);
        }
    });
}

std::pair<double, double> clopper_pearson(std::uint64_t hits, std::uint64_t n, double confidence) {
    const double alpha = 1 - confidence;
    const auto k = static_cast<double>(hits);
    const auto m = static_cast<double>(n);
    const double lo = hits == 0 ? 0.0 : boost::math::ibeta_inv(k, m - k + 1, alpha / 2);
    const double hi = hits == n ? 1.0 : boost::math::ibeta_inv(k + 1, m - k, 1 - alpha / 2);
    return {lo, hi};
}

bool consistent(const Rational& lower, const Rational& upper, const OracleEstimate& e) {
    return lower <= Rational::from_double(e.ci_high) && Rational::from_double(e.ci_low) <= upper;
}

void write_oracle_csv(const std::vector<OracleEstimate>& rows, std::ostream& out) {
    out << "event,hits,samples,estimate_dec,ci_low,ci_high,diverged_fraction\n";
    for (const auto& r : rows) {
        out << csv_field(r.event) << ',' << r.hits << ',' << r.samples << ',' << decimal(r.estimate) << ','
            << decimal(Rational::from_double(r.ci_low)) << ',' << decimal(Rational::from_double(r.ci_high)) << ','
            << decimal(Rational::from_double(r.diverged_fraction)) << '\n';
    }
}

} // namespace probbounds
