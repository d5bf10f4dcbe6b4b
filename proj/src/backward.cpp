// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#include "probbounds/backward.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "probbounds/errors.hpp"

namespace probbounds {

namespace {

using nlohmann::json;

std::size_t find_name(const std::vector<std::string>& names, const std::string& n, const char* what) {
    const auto it = std::find(names.begin(), names.end(), n);
    if (it == names.end()) {
        throw ValidationError(std::string("unknown ") + what + " '" + n + "'");
    }
    return static_cast<std::size_t>(it - names.begin());
}

void check_unique(const std::vector<std::string>& names, const char* what) {
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (!seen.insert(n).second) {
            throw ValidationError(std::string("duplicate ") + what + " '" + n + "'");
        }
    }
}

const json& require(const json& doc, const char* key) {
    if (!doc.contains(key)) {
        throw ConfigError(std::string("backward instance lacks '") + key + "'");
    }
    return doc.at(key);
}

std::vector<std::string> string_list(const json& j, const std::string& what) {
    if (!j.is_array()) {
        throw ConfigError(what + " must be a list of strings");
    }
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) {
            throw ConfigError(what + " must be a list of strings");
        }
        out.push_back(e.get<std::string>());
    }
    return out;
}

Rational rational_of(const json& j) {
    if (j.is_string()) {
        return Rational::parse(j.get<std::string>());
    }
    if (j.is_number()) {
        return Rational::parse(j.dump());
    }
    throw ConfigError("weights must be numbers or strings like \"1/3\"");
}

Subset point_set(const FiniteMeasurableSpace& space, const json& j, const std::string& what) {
    Subset s = space.empty_set();
    for (const auto& p : string_list(j, what)) {
        s.set(space.index_of(p));
    }
    return s;
}

Subset atom_set(const PreTable& pre, const json& j, const std::string& what) {
    Subset s = pre.no_atoms();
    for (const auto& a : string_list(j, what)) {
        s.set(pre.index_of(a));
    }
    return s;
}

} // namespace

FiniteMeasurableSpace::FiniteMeasurableSpace(std::vector<std::string> points,
                                             std::vector<std::vector<std::size_t>> blocks,
                                             std::vector<Rational> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
    check_unique(points_, "point");
    if (blocks.size() != weights_.size()) {
        throw ValidationError(std::to_string(blocks.size()) + " blocks but " + std::to_string(weights_.size()) +
                              " weights");
    }
    Subset covered(points_.size());
    for (const auto& b : blocks) {
        if (b.empty()) {
            throw ValidationError("empty block");
        }
        Subset s(points_.size());
        for (const std::size_t p : b) {
            if (p >= points_.size()) {
                throw ValidationError("block mentions point index " + std::to_string(p));
            }
            if (covered.test(p)) {
                throw ValidationError("point '" + points_[p] + "' lies in two blocks");
            }
            covered.set(p);
            s.set(p);
        }
        blocks_.push_back(std::move(s));
    }
    if (!covered.all()) {
        for (std::size_t p = 0; p < points_.size(); ++p) {
            if (!covered.test(p)) {
                throw ValidationError("point '" + points_[p] + "' lies in no block");
            }
        }
    }
    Rational total(0);
    for (const auto& w : weights_) {
        if (w < Rational(0)) {
            throw ValidationError("negative block weight " + w.str());
        }
        total += w;
    }
    if (total != Rational(1)) {
        throw ValidationError("block weights sum to " + total.str() + ", expected 1");
    }
}

std::size_t FiniteMeasurableSpace::index_of(const std::string& point) const {
    return find_name(points_, point, "point");
}

Subset FiniteMeasurableSpace::lift(const Subset& s) const {
    Subset out = empty_set();
    for (const auto& b : blocks_) {
        if (b.intersects(s)) {
            out |= b;
        }
    }
    return out;
}

Subset FiniteMeasurableSpace::inner(const Subset& s) const {
    Subset out = empty_set();
    for (const auto& b : blocks_) {
        if (b.is_subset_of(s)) {
            out |= b;
        }
    }
    return out;
}

Rational FiniteMeasurableSpace::measure(const Subset& s) const {
    Rational m(0);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (blocks_[i].is_subset_of(s)) {
            m += weights_[i];
        } else if (blocks_[i].intersects(s)) {
            throw ValidationError("set is not measurable: it splits a block");
        }
    }
    return m;
}

PreTable::PreTable(std::vector<std::string> atoms, std::size_t num_points, std::vector<Source> sources)
    : atoms_(std::move(atoms)), num_points_(num_points), sources_(std::move(sources)) {
    check_unique(atoms_, "output atom");
    if (sources_.empty()) {
        throw ValidationError("pre-image table has no entries");
    }
    for (const auto& src : sources_) {
        if (!src.singletons.empty() && src.singletons.size() != atoms_.size()) {
            throw ValidationError("pre-image table needs one entry per output atom");
        }
        for (const auto& s : src.singletons) {
            if (s.size() != num_points_) {
                throw ValidationError("pre-image entry has the wrong point count");
            }
        }
        for (const auto& [event, pts] : src.explicit_sets) {
            if (event.size() != atoms_.size() || pts.size() != num_points_) {
                throw ValidationError("explicit pre-image entry has the wrong shape");
            }
        }
    }
}

PreTable PreTable::from_singletons(std::vector<std::string> atoms, std::size_t num_points,
                                   std::vector<Subset> singletons) {
    return {std::move(atoms), num_points, {Source{std::move(singletons), {}}}};
}

std::size_t PreTable::index_of(const std::string& atom) const { return find_name(atoms_, atom, "output atom"); }

Subset PreTable::apply(const Subset& event) const {
    Subset out = ~Subset(num_points_);
    for (const auto& src : sources_) {
        if (const auto it = src.explicit_sets.find(event); it != src.explicit_sets.end()) {
            out &= it->second;
            continue;
        }
        if (src.singletons.empty()) {
            throw ValidationError("pre-image of " + subset_name(*this, event) + " is not given");
        }
        Subset u(num_points_);
        for (std::size_t a = event.find_first(); a != Subset::npos; a = event.find_next(a)) {
            u |= src.singletons[a];
        }
        out &= u;
    }
    return out;
}

Rational upper_back(const FiniteMeasurableSpace& space, const PreTable& pre, const Subset& event) {
    return space.measure(space.lift(pre.apply(event)));
}

Subset dual_pre(const FiniteMeasurableSpace& space, const PreTable& pre, const Subset& event) {
    return ~space.lift(pre.apply(~event));
}

Rational lower_back(const FiniteMeasurableSpace& space, const PreTable& pre, const Subset& event) {
    return space.measure(dual_pre(space, pre, event));
}

PreTable combine_pre(const PreTable& a, const PreTable& b) {
    if (a.atoms() != b.atoms() || a.num_points() != b.num_points()) {
        throw ValidationError("cannot combine pre-image tables over different spaces");
    }
    std::vector<PreTable::Source> sources = a.sources();
    sources.insert(sources.end(), b.sources().begin(), b.sources().end());
    return {a.atoms(), a.num_points(), std::move(sources)};
}

Subset exact_pre(const std::vector<std::size_t>& f, const Subset& event) {
    Subset out(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) {
        if (event.test(f[x])) {
            out.set(x);
        }
    }
    return out;
}

void validate_pre(const PreTable& pre, const std::vector<std::size_t>& f) {
    const auto check = [&](const Subset& event) {
        const Subset missed = exact_pre(f, event) - pre.apply(event);
        if (missed.any()) {
            throw ValidationError("pre-image of " + subset_name(pre, event) + " misses point index " +
                                  std::to_string(missed.find_first()));
        }
    };
    for (std::size_t a = 0; a < pre.atoms().size(); ++a) {
        Subset e = pre.no_atoms();
        e.set(a);
        if (std::any_of(pre.sources().begin(), pre.sources().end(),
                        [&](const PreTable::Source& s) { return !s.singletons.empty() || s.explicit_sets.contains(e); })) {
            check(e);
        }
    }
    for (const auto& src : pre.sources()) {
        for (const auto& entry : src.explicit_sets) {
            check(entry.first);
        }
    }
}

std::string subset_name(const PreTable& pre, const Subset& event) {
    std::string out = "{";
    for (std::size_t a = event.find_first(); a != Subset::npos; a = event.find_next(a)) {
        out += (out.size() > 1 ? "," : "") + pre.atoms()[a];
    }
    return out + "}";
}

BackwardInstance load_backward_instance(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("backward instance is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("backward instance must be a JSON object");
    }
    std::optional<BackwardInstance> inst;
    try {
        std::vector<std::string> points = string_list(require(doc, "points"), "points");
        const json& jblocks = require(doc, "blocks");
        if (!jblocks.is_array()) {
            throw ConfigError("blocks must be a list of point lists");
        }
        std::vector<std::vector<std::size_t>> blocks;
        for (const auto& b : jblocks) {
            std::vector<std::size_t> idx;
            for (const auto& p : string_list(b, "each block")) {
                idx.push_back(find_name(points, p, "point"));
            }
            blocks.push_back(std::move(idx));
        }
        const json& jweights = require(doc, "weights");
        if (!jweights.is_array()) {
            throw ConfigError("weights must be a list");
        }
        std::vector<Rational> weights;
        for (const auto& w : jweights) {
            weights.push_back(rational_of(w));
        }
        FiniteMeasurableSpace space(std::move(points), std::move(blocks), std::move(weights));

        std::vector<std::string> atoms = string_list(require(doc, "output_atoms"), "output_atoms");
        PreTable::Source src;
        const json& jpre = require(doc, "pre_sharp");
        if (!jpre.is_object()) {
            throw ConfigError("pre_sharp must map each output atom to a point list");
        }
        if (!jpre.empty()) {
            src.singletons.assign(atoms.size(), space.empty_set());
            std::vector<bool> seen(atoms.size(), false);
            for (const auto& [atom, pts] : jpre.items()) {
                const std::size_t a = find_name(atoms, atom, "output atom");
                src.singletons[a] = point_set(space, pts, "pre_sharp." + atom);
                seen[a] = true;
            }
            for (std::size_t a = 0; a < atoms.size(); ++a) {
                if (!seen[a]) {
                    throw ConfigError("pre_sharp has no entry for output atom '" + atoms[a] + "'");
                }
            }
        }
        if (doc.contains("pre_sharp_sets")) {
            for (const auto& row : doc.at("pre_sharp_sets")) {
                if (!row.is_object()) {
                    throw ConfigError("pre_sharp_sets rows need 'event' and 'points'");
                }
                Subset event(atoms.size());
                for (const auto& a : string_list(require(row, "event"), "pre_sharp_sets.event")) {
                    event.set(find_name(atoms, a, "output atom"));
                }
                src.explicit_sets[event] =
                    point_set(space, require(row, "points"), "pre_sharp_sets.points");
            }
        }
        PreTable pre(std::move(atoms), space.size(), {std::move(src)});

        std::optional<std::vector<std::size_t>> concrete;
        if (doc.contains("concrete")) {
            const json& jc = doc.at("concrete");
            if (!jc.is_object()) {
                throw ConfigError("concrete must map every point to an output atom");
            }
            std::vector<std::optional<std::size_t>> f(space.size());
            for (const auto& [pt, atom] : jc.items()) {
                if (!atom.is_string()) {
                    throw ConfigError("concrete." + pt + " must be an output atom name");
                }
                f[space.index_of(pt)] = pre.index_of(atom.get<std::string>());
            }
            std::vector<std::size_t> total;
            for (std::size_t x = 0; x < f.size(); ++x) {
                if (!f[x]) {
                    throw ConfigError("concrete function has no value for point '" + space.points()[x] + "'");
                }
                total.push_back(*f[x]);
            }
            concrete = std::move(total);
        }

        std::vector<BackwardEvent> events;
        const bool events_given = doc.contains("events");
        if (events_given) {
            const json& jev = doc.at("events");
            if (!jev.is_array()) {
                throw ConfigError("events must be a list");
            }
            for (const auto& e : jev) {
                if (e.is_array()) {
                    const Subset s = atom_set(pre, e, "event");
                    events.push_back({subset_name(pre, s), s});
                } else if (e.is_object() && e.contains("atoms")) {
                    const Subset s = atom_set(pre, e.at("atoms"), "event atoms");
                    events.push_back({e.value("name", subset_name(pre, s)), s});
                } else {
                    throw ConfigError("each event is an atom list or {\"name\", \"atoms\"}");
                }
            }
        }
        inst.emplace(BackwardInstance{std::move(space), std::move(pre), std::move(concrete), std::move(events),
                                      events_given});
    } catch (const ValidationError& e) {
        // A malformed file, as opposed to a pre-image table that fails validation below.
        throw ConfigError(std::string("backward instance: ") + e.what());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("backward instance: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("backward instance: ") + e.what());
    }
    if (inst->concrete) {
        validate_pre(inst->pre, *inst->concrete);
    }
    return std::move(*inst);
}

std::vector<BackwardRow> backward_report(const BackwardInstance& inst) {
    std::vector<BackwardEvent> events = inst.events;
    if (!inst.events_given) {
        const std::size_t n = inst.pre.atoms().size();
        if (n > 16) {
            throw ValidationError("too many output atoms to list every event; give 'events'");
        }
        std::vector<Subset> all;
        for (unsigned long m = 0; m < (1UL << n); ++m) {
            all.emplace_back(n, m);
        }
        std::stable_sort(all.begin(), all.end(), [](const Subset& a, const Subset& b) { return a.count() < b.count(); });
        for (const auto& s : all) {
            events.push_back({subset_name(inst.pre, s), s});
        }
    }
    std::vector<BackwardRow> rows;
    for (const auto& e : events) {
        rows.push_back({e.name, lower_back(inst.space, inst.pre, e.atoms), upper_back(inst.space, inst.pre, e.atoms)});
    }
    return rows;
}

} // namespace probbounds
