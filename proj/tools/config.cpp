// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "probbounds/errors.hpp"
#include "probbounds/events.hpp"
#include "probbounds/parser.hpp"

namespace probbounds::app {

using nlohmann::json;

namespace {

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object()) {
        throw ConfigError(where + " must be an object");
    }
    for (const auto& [key, _] : obj.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
            throw ConfigError("unknown key '" + key + "' in " + where);
        }
    }
}

std::string as_string(const json& j, const std::string& what) {
    if (!j.is_string()) {
        throw ConfigError(what + " must be a string");
    }
    return j.get<std::string>();
}

// Normalized rational text from a JSON number or string.
std::string rational_text(const json& j, const std::string& what) {
    std::string text;
    if (j.is_string()) {
        text = j.get<std::string>();
    } else if (j.is_number()) {
        text = j.dump();
    } else {
        throw ConfigError(what + " must be a number or a string like \"1/3\"");
    }
    try {
        return Rational::parse(text).str();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

std::uint64_t as_count(const json& j, const std::string& what) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
        throw ConfigError(what + " must be a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

ValueDomain parse_domain(const std::string& s) {
    if (s == "interval") {
        return ValueDomain::Interval;
    }
    if (s == "sign") {
        return ValueDomain::Sign;
    }
    throw ConfigError("analysis domain must be 'interval' or 'sign', got '" + s + "'");
}

template <typename T, typename F>
T config_call(const std::string& what, F&& f) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(what + ": " + e.what());
    } catch (const TableError& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

EventSpec parse_event(const json& j) {
    EventSpec e;
    if (j.is_string()) {
        e.preset = j.get<std::string>();
        if (e.preset != "sign-powerset") {
            throw ConfigError("unknown event preset '" + e.preset + "'");
        }
        return e;
    }
    if (j.is_object() && j.contains("preset")) {
        check_keys(j, {"preset", "from", "to", "step"}, "event preset");
        e.preset = as_string(j["preset"], "event preset");
        if (e.preset == "sign-powerset") {
            if (j.size() != 1) {
                throw ConfigError("sign-powerset takes no parameters");
            }
            return e;
        }
        if (e.preset != "unit-bins") {
            throw ConfigError("unknown event preset '" + e.preset + "'");
        }
        if (!j.contains("from") || !j.contains("to")) {
            throw ConfigError("unit-bins needs 'from' and 'to'");
        }
        e.from = rational_text(j["from"], "unit-bins from");
        e.to = rational_text(j["to"], "unit-bins to");
        if (j.contains("step")) {
            e.step = rational_text(j["step"], "unit-bins step");
        }
        return e;
    }
    check_keys(j, {"name", "intervals", "bottom"}, "event");
    if (!j.contains("intervals")) {
        throw ConfigError("event needs 'intervals' (use \"{}\" for none)");
    }
    e.intervals = as_string(j["intervals"], "event intervals");
    if (j.contains("bottom")) {
        if (!j["bottom"].is_boolean()) {
            throw ConfigError("event bottom must be true or false");
        }
        e.bottom = j["bottom"].get<bool>();
    }
    e.name = j.contains("name") ? as_string(j["name"], "event name") : "";
    return e;
}

json event_json(const EventSpec& e) {
    if (e.preset == "sign-powerset") {
        return json{{"preset", e.preset}};
    }
    if (e.preset == "unit-bins") {
        return json{{"preset", e.preset}, {"from", e.from}, {"to", e.to}, {"step", e.step}};
    }
    json j{{"intervals", e.intervals}, {"bottom", e.bottom}};
    if (!e.name.empty()) {
        j["name"] = e.name;
    }
    return j;
}

PartitionSpec parse_partition(const json& j) {
    check_keys(j, {"mode", "names", "domain", "grid", "cells"}, "partition");
    PartitionSpec p;
    if (!j.contains("mode")) {
        throw ConfigError("partition needs 'mode' (int or real)");
    }
    p.mode = config_call<PartitionMode>("partition mode", [&] { return parse_partition_mode(as_string(j["mode"], "partition mode")); });
    if (j.contains("names")) {
        for (const auto& n : j["names"]) {
            p.names.push_back(as_string(n, "partition name"));
        }
    }
    const bool grid = j.contains("grid");
    const bool cells = j.contains("cells");
    if (grid == cells) {
        throw ConfigError("partition needs exactly one of 'grid' or 'cells'");
    }
    if (grid) {
        if (!j.contains("domain")) {
            throw ConfigError("grid partition needs 'domain'");
        }
        for (const auto& d : j["domain"]) {
            p.domain.push_back(as_string(d, "partition domain entry"));
        }
        for (const auto& g : j["grid"]) {
            const auto k = as_count(g, "grid subdivision");
            if (k == 0 || k > UINT32_MAX) {
                throw ConfigError("grid subdivisions must be positive");
            }
            p.grid.push_back(static_cast<std::uint32_t>(k));
        }
    } else {
        if (j.contains("domain")) {
            throw ConfigError("explicit cells take no 'domain'; it is their bounding hull");
        }
        for (const auto& c : j["cells"]) {
            check_keys(c, {"box", "weight"}, "partition cell");
            if (!c.contains("box") || !c.contains("weight")) {
                throw ConfigError("partition cell needs 'box' and 'weight'");
            }
            std::vector<std::string> box;
            for (const auto& b : c["box"]) {
                box.push_back(as_string(b, "cell box entry"));
            }
            p.cell_boxes.push_back(std::move(box));
            p.cell_weights.push_back(rational_text(c["weight"], "cell weight"));
        }
    }
    return p;
}

json partition_json(const PartitionSpec& p) {
    json j{{"mode", to_string(p.mode)}};
    if (!p.names.empty()) {
        j["names"] = p.names;
    }
    if (!p.grid.empty()) {
        j["domain"] = p.domain;
        j["grid"] = p.grid;
    } else {
        json cells = json::array();
        for (std::size_t i = 0; i < p.cell_boxes.size(); ++i) {
            cells.push_back({{"box", p.cell_boxes[i]}, {"weight", p.cell_weights[i]}});
        }
        j["cells"] = cells;
    }
    return j;
}

TerminationSpec parse_termination(const json& j) {
    TerminationSpec t;
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "syntactic") {
            t.source = TerminationSpec::Source::Syntactic;
        } else if (s != "none") {
            throw ConfigError("termination must be 'syntactic', 'none' or an object, got '" + s + "'");
        }
        return t;
    }
    check_keys(j, {"default", "cells"}, "termination");
    t.source = TerminationSpec::Source::Facts;
    t.facts.fallback.reset();
    if (j.contains("default") && !j["default"].is_null()) {
        t.facts.fallback = config_call<Verdict>("termination default",
                                                [&] { return parse_verdict(as_string(j["default"], "termination default")); });
    }
    if (j.contains("cells")) {
        if (!j["cells"].is_object()) {
            throw ConfigError("termination cells must map cell indices to verdicts");
        }
        for (const auto& [key, v] : j["cells"].items()) {
            std::size_t idx = 0;
            try {
                std::size_t used = 0;
                idx = std::stoul(key, &used);
                if (used != key.size()) {
                    throw std::invalid_argument(key);
                }
            } catch (const std::exception&) {
                throw ConfigError("termination cell key '" + key + "' is not an index");
            }
            t.facts.cells[idx] = config_call<Verdict>("termination cell " + key,
                                                      [&] { return parse_verdict(as_string(v, "verdict")); });
        }
    }
    return t;
}

} // namespace

std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) {
        throw ConfigError("cannot read '" + p.string() + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

AnalysisConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
    check_keys(doc, {"schema", "program", "partition", "analysis", "tables", "termination", "boundaries", "events",
                     "oracle", "compare", "refine"},
               "config");
    if (!doc.contains("schema") || doc["schema"] != 1) {
        throw ConfigError("config needs \"schema\": 1");
    }
    AnalysisConfig c;
    c.base_dir = base_dir;
    if (!doc.contains("program")) {
        throw ConfigError("config needs 'program'");
    }
    c.program = as_string(doc["program"], "program");
    if (!doc.contains("partition")) {
        throw ConfigError("config needs 'partition'");
    }
    c.partition = parse_partition(doc["partition"]);
    if (doc.contains("analysis")) {
        const json& a = doc["analysis"];
        check_keys(a, {"domain", "partial_correctness", "unroll"}, "analysis");
        c.domain = parse_domain(a.contains("domain") ? as_string(a["domain"], "analysis domain") : "interval");
        if (a.contains("partial_correctness")) {
            if (!a["partial_correctness"].is_boolean()) {
                throw ConfigError("partial_correctness must be true or false");
            }
            c.partial_correctness = a["partial_correctness"].get<bool>();
        }
        if (a.contains("unroll")) {
            c.unroll = static_cast<unsigned>(as_count(a["unroll"], "unroll"));
        }
    }
    if (doc.contains("tables")) {
        for (const auto& t : doc["tables"]) {
            c.tables.push_back(as_string(t, "table path"));
        }
    }
    if (doc.contains("termination")) {
        c.termination = parse_termination(doc["termination"]);
    }
    if (doc.contains("boundaries")) {
        c.boundaries = config_call<BoundaryPolicy>(
            "boundaries", [&] { return parse_boundary_policy(as_string(doc["boundaries"], "boundaries")); });
    }
    if (doc.contains("events")) {
        const json& ev = doc["events"];
        if (ev.is_array()) {
            for (const auto& e : ev) {
                c.events.push_back(parse_event(e));
            }
        } else {
            c.events.push_back(parse_event(ev));
        }
    }
    if (doc.contains("oracle")) {
        const json& o = doc["oracle"];
        check_keys(o, {"method", "samples", "seed", "confidence", "budget"}, "oracle");
        if (o.contains("method")) {
            c.oracle.method = as_string(o["method"], "oracle method");
            if (c.oracle.method != "none" && c.oracle.method != "mc" && c.oracle.method != "exhaustive") {
                throw ConfigError("oracle method must be none, mc or exhaustive");
            }
        }
        if (o.contains("samples")) {
            c.oracle.samples = as_count(o["samples"], "oracle samples");
        }
        if (o.contains("seed")) {
            c.oracle.seed = as_count(o["seed"], "oracle seed");
        }
        if (o.contains("confidence")) {
            if (!o["confidence"].is_number()) {
                throw ConfigError("oracle confidence must be a number");
            }
            c.oracle.confidence = o["confidence"].get<double>();
            if (!(c.oracle.confidence > 0 && c.oracle.confidence < 1)) {
                throw ConfigError("oracle confidence must lie strictly between 0 and 1");
            }
        }
        if (o.contains("budget")) {
            c.oracle.budget = as_count(o["budget"], "oracle budget");
        }
    }
    if (doc.contains("compare")) {
        const auto s = as_string(doc["compare"], "compare");
        if (s != "monniaux" && s != "none") {
            throw ConfigError("compare must be 'monniaux' or 'none'");
        }
        c.compare_monniaux = s == "monniaux";
    }
    if (doc.contains("refine")) {
        const auto k = as_count(doc["refine"], "refine");
        if (k == 0 || k > 64) {
            throw ConfigError("refine must be between 1 and 64");
        }
        c.refine = static_cast<std::uint32_t>(k);
    }
    return c;
}

AnalysisConfig load_config(const std::filesystem::path& file) {
    json doc;
    try {
        doc = json::parse(read_text(file));
    } catch (const json::parse_error& e) {
        throw ConfigError(file.string() + ": " + e.what());
    }
    try {
        return parse_config(doc, file.parent_path());
    } catch (const ConfigError& e) {
        throw ConfigError(file.string() + ": " + e.what());
    }
}

json to_json(const AnalysisConfig& c) {
    json j{{"schema", 1}, {"program", c.program}, {"partition", partition_json(c.partition)}};
    if (c.domain) {
        j["analysis"] = {{"domain", to_string(*c.domain)},
                         {"partial_correctness", c.partial_correctness},
                         {"unroll", c.unroll}};
    }
    if (!c.tables.empty()) {
        j["tables"] = c.tables;
    }
    switch (c.termination.source) {
    case TerminationSpec::Source::None: break;
    case TerminationSpec::Source::Syntactic: j["termination"] = "syntactic"; break;
    case TerminationSpec::Source::Facts: {
        json t{{"default", nullptr}, {"cells", json::object()}};
        if (c.termination.facts.fallback) {
            t["default"] = to_string(*c.termination.facts.fallback);
        }
        for (const auto& [cell, v] : c.termination.facts.cells) {
            t["cells"][std::to_string(cell)] = to_string(v);
        }
        j["termination"] = t;
        break;
    }
    }
    j["boundaries"] = to_string(c.boundaries);
    json ev = json::array();
    for (const auto& e : c.events) {
        ev.push_back(event_json(e));
    }
    j["events"] = ev;
    j["oracle"] = {{"method", c.oracle.method},
                   {"samples", c.oracle.samples},
                   {"seed", c.oracle.seed},
                   {"confidence", c.oracle.confidence},
                   {"budget", c.oracle.budget}};
    j["compare"] = c.compare_monniaux ? "monniaux" : "none";
    j["refine"] = c.refine;
    return j;
}

Resolved resolve(const AnalysisConfig& c) {
    const std::string text = read_text(c.base_dir / c.program);
    Resolved r{parse_program(text), nullptr, NumKind::Real, {}};
    r.output_kind = r.program.return_kind;

    const PartitionSpec& ps = c.partition;
    std::vector<std::string> names = ps.names;
    if (names.empty()) {
        for (std::size_t i = 0; i < r.program.num_params; ++i) {
            names.push_back(r.program.param(i).name);
        }
    }
    const NumKind kind = value_kind(ps.mode);
    auto parse_box = [&](const std::vector<std::string>& box) {
        return config_call<Box>("partition box", [&] {
            Box b;
            for (const auto& s : box) {
                b.push_back(Interval::parse(s, kind));
            }
            return b;
        });
    };
    InputPartition part = [&] {
        if (!ps.grid.empty()) {
            return InputPartition::grid(names, parse_box(ps.domain), ps.grid, ps.mode);
        }
        std::vector<Cell> cells;
        for (std::size_t i = 0; i < ps.cell_boxes.size(); ++i) {
            cells.push_back({parse_box(ps.cell_boxes[i]), Rational::parse(ps.cell_weights[i])});
        }
        return InputPartition::explicit_cells(names, std::move(cells), ps.mode);
    }();
    if (c.refine > 1) {
        part = part.refine(c.refine);
    }
    r.partition = std::make_shared<const InputPartition>(std::move(part));

    std::set<std::string> seen;
    auto add = [&](OutputEvent e) {
        if (!seen.insert(e.name).second) {
            throw ConfigError("duplicate event name '" + e.name + "'");
        }
        r.events.push_back(std::move(e));
    };
    for (const auto& e : c.events) {
        if (e.preset == "sign-powerset") {
            for (auto& x : sign_powerset_events()) {
                add(std::move(x));
            }
        } else if (e.preset == "unit-bins") {
            const auto bins = config_call<std::vector<OutputEvent>>("unit-bins", [&] {
                return unit_bin_events(Rational::parse(e.from), Rational::parse(e.to), Rational::parse(e.step),
                                       r.output_kind);
            });
            for (const auto& x : bins) {
                add(x);
            }
        } else {
            const AbstractOutput shape = config_call<AbstractOutput>(
                "event '" + e.intervals + "'", [&] { return AbstractOutput::parse(e.intervals, e.bottom, r.output_kind); });
            add({e.name.empty() ? shape.str() : e.name, shape});
        }
    }
    return r;
}

ImgTable build_image_table(const AnalysisConfig& c, const Resolved& r) {
    std::optional<ImgTable> table;
    if (!c.tables.empty()) {
        if (c.refine > 1) {
            throw ConfigError("external tables are given per cell and cannot be refined");
        }
        for (const auto& t : c.tables) {
            const auto path = c.base_dir / t;
            if (!std::filesystem::exists(path)) {
                throw ConfigError("cannot read '" + path.string() + "'");
            }
            ImgTable next = load_table_file(r.partition, path.string(), r.output_kind);
            table = table ? combine(*table, next) : std::move(next);
        }
    } else {
        AnalyzerOptions opts;
        opts.domain = c.domain.value_or(ValueDomain::Interval);
        opts.unroll = c.unroll;
        opts.partial_correctness = c.partial_correctness;
        table = build_table(r.program, r.partition, opts);
    }

    TerminationFacts facts;
    switch (c.termination.source) {
    case TerminationSpec::Source::None: return *table;
    case TerminationSpec::Source::Syntactic: facts = TerminationFacts::all(syntactic_check(r.program)); break;
    case TerminationSpec::Source::Facts:
        facts = c.termination.facts;
        {
            // Verdicts name the unrefined cells.
            const auto& parents = r.partition->parents();
            const std::size_t coarse =
                parents.empty() ? r.partition->size() : *std::max_element(parents.begin(), parents.end()) + 1;
            for (const auto& [cell, _] : facts.cells) {
                if (cell >= coarse) {
                    throw ConfigError("termination verdict for cell " + std::to_string(cell) +
                                      ", which the partition does not have");
                }
            }
        }
        if (c.refine > 1) {
            // each child inherits its parent's verdict
            TerminationFacts fine{facts.fallback, {}};
            const auto& parents = r.partition->parents();
            for (std::size_t i = 0; i < parents.size(); ++i) {
                if (const auto it = facts.cells.find(parents[i]); it != facts.cells.end()) {
                    fine.cells[i] = it->second;
                }
            }
            facts = std::move(fine);
        }
        break;
    }
    return combine(*table, facts_to_table(facts, r.partition, AbstractOutput::top(r.output_kind, false)));
}

} // namespace probbounds::app
