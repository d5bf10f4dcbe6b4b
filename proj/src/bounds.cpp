// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#include "probbounds/bounds.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"
#include "probbounds/errors.hpp"

namespace probbounds {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

void check_compatible(const Program& p, const InputPartition& part, ValueDomain domain) {
    if (part.dims() != p.num_params) {
        throw AnalysisError("partition has " + std::to_string(part.dims()) + " dimensions, program '" + p.name +
                            "' takes " + std::to_string(p.num_params) + " parameters");
    }
    if (part.mode() == PartitionMode::ContinuousReal) {
        for (std::size_t i = 0; i < p.num_params; ++i) {
            if (p.param(i).kind == NumKind::Int) {
                throw AnalysisError("int parameter '" + p.param(i).name + "' cannot take a continuous input");
            }
        }
    }
    if (domain == ValueDomain::Sign && (part.mode() != PartitionMode::DiscreteInt || !p.all_int())) {
        throw AnalysisError("sign analysis needs an int program over an int partition");
    }
}

AbstractOutput analyze_cell(const Program& p, const Box& box, const AnalyzerOptions& opts) {
    return opts.domain == ValueDomain::Sign ? sign_analyze(p, box, opts) : interval_analyze(p, box, opts);
}

TableProvenance provenance_of(const AnalyzerOptions& opts) {
    return opts.domain == ValueDomain::Sign ? TableProvenance::BuiltInSign : TableProvenance::BuiltInInterval;
}

bool same_partition(const InputPartition& a, const InputPartition& b) {
    if (&a == &b) {
        return true;
    }
    if (a.size() != b.size() || a.dims() != b.dims() || a.mode() != b.mode()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.cell(i).box != b.cell(i).box || a.cell(i).weight != b.cell(i).weight) {
            return false;
        }
    }
    return true;
}

bool parse_flag(const std::string& s, std::size_t line) {
    if (s == "1" || s == "true" || s == "yes" || s == "bot") {
        return true;
    }
    if (s == "0" || s == "false" || s == "no" || s.empty()) {
        return false;
    }
    throw TableError("line " + std::to_string(line) + ": bottom flag must be 0 or 1, got '" + s + "'");
}

EventBounds evaluate(const ImgTable& t, const OutputEvent& e, BoundaryPolicy policy) {
    EventBounds b{e.name, Rational(0), Rational(0)};
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        const Rational& w = t.partition->cell(i).weight;
        if (overlap(t.entries[i], e.shape, policy)) {
            b.upper += w;
            ++b.overlapping_cells;
        }
        if (subset(t.entries[i], e.shape)) {
            b.lower += w;
            ++b.contained_cells;
        }
    }
    return b;
}

void check_unique(const std::vector<OutputEvent>& events) {
    std::set<std::string> seen;
    for (const auto& e : events) {
        if (!seen.insert(e.name).second) {
            throw std::invalid_argument("duplicate event name '" + e.name + "'");
        }
    }
}

} // namespace

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (const char c : s) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

const char* to_string(TableProvenance p) {
    switch (p) {
    case TableProvenance::BuiltInInterval: return "built-in-interval";
    case TableProvenance::BuiltInSign: return "built-in-sign";
    case TableProvenance::External: return "external";
    case TableProvenance::Combined: return "combined";
    }
    return "external";
}

ImgTable build_table(const Program& p, std::shared_ptr<const InputPartition> partition, const AnalyzerOptions& opts) {
    check_compatible(p, *partition, opts.domain);
    ImgTable t{partition, std::vector<AbstractOutput>(partition->size()), provenance_of(opts)};
    detail::parallel_for(partition->size(),
                         [&](std::size_t i) { t.entries[i] = analyze_cell(p, partition->cell(i).box, opts); });
    return t;
}

ImgTable build_table_serial(const Program& p, std::shared_ptr<const InputPartition> partition,
                            const AnalyzerOptions& opts) {
    check_compatible(p, *partition, opts.domain);
    ImgTable t{partition, {}, provenance_of(opts)};
    t.entries.reserve(partition->size());
    for (const auto& c : partition->cells()) {
        t.entries.push_back(analyze_cell(p, c.box, opts));
    }
    return t;
}

ImgTable load_table(std::shared_ptr<const InputPartition> partition, std::istream& in, NumKind output_kind) {
    std::vector<std::optional<AbstractOutput>> rows(partition->size());
    std::vector<std::size_t> row_line(partition->size(), 0);
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
        const std::string s = trim(line);
        if (s.empty() || s.front() == '#') {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(s);
        for (std::string f; std::getline(ss, f, ';');) {
            fields.push_back(trim(f));
        }
        if (fields.size() != 3) {
            throw TableError("line " + std::to_string(n) + ": expected 'cell ; intervals ; bottom', got '" + s + "'");
        }
        std::size_t idx = 0;
        try {
            std::size_t used = 0;
            idx = std::stoul(fields[0], &used);
            if (used != fields[0].size()) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception&) {
            throw TableError("line " + std::to_string(n) + ": bad cell index '" + fields[0] + "'");
        }
        if (idx >= rows.size()) {
            throw TableError("line " + std::to_string(n) + ": cell " + std::to_string(idx) + " out of range (" +
                             std::to_string(rows.size()) + " cells)");
        }
        if (rows[idx]) {
            throw TableError("line " + std::to_string(n) + ": cell " + std::to_string(idx) +
                             " already given on line " + std::to_string(row_line[idx]));
        }
        const bool bottom = parse_flag(fields[2], n);
        try {
            rows[idx] = AbstractOutput::parse(fields[1], bottom, output_kind);
        } catch (const std::exception& e) {
            throw TableError("line " + std::to_string(n) + ": " + e.what());
        }
        row_line[idx] = n;
    }
    ImgTable t{std::move(partition), {}, TableProvenance::External};
    t.entries.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i]) {
            throw TableError("no row for cell " + std::to_string(i));
        }
        t.entries.push_back(std::move(*rows[i]));
    }
    return t;
}

ImgTable load_table_file(std::shared_ptr<const InputPartition> partition, const std::string& path,
                         NumKind output_kind) {
    std::ifstream in(path);
    if (!in) {
        throw TableError("cannot open table file '" + path + "'");
    }
    try {
        return load_table(std::move(partition), in, output_kind);
    } catch (const TableError& e) {
        throw TableError(path + ": " + e.what());
    }
}

void write_table(const ImgTable& t, std::ostream& out) {
    out << "# cell ; intervals ; bottom\n";
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        out << i << " ; " << t.entries[i].intervals_str() << " ; " << (t.entries[i].may_diverge() ? 1 : 0) << '\n';
    }
}

ImgTable combine(const ImgTable& a, const ImgTable& b) {
    if (!same_partition(*a.partition, *b.partition)) {
        throw TableError("cannot combine tables over different partitions");
    }
    ImgTable t{a.partition, {}, TableProvenance::Combined};
    t.entries.reserve(a.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        t.entries.push_back(intersect_outputs(a.entries[i], b.entries[i]));
    }
    return t;
}

std::vector<std::size_t> pre_sharp(const ImgTable& t, const AbstractOutput& event, BoundaryPolicy policy) {
    std::vector<std::size_t> cells;
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        if (overlap(t.entries[i], event, policy)) {
            cells.push_back(i);
        }
    }
    return cells;
}

Rational upper_bound(const ImgTable& t, const AbstractOutput& event, BoundaryPolicy policy) {
    return evaluate(t, {"", event}, policy).upper;
}

Rational lower_bound(const ImgTable& t, const AbstractOutput& event) {
    return evaluate(t, {"", event}, BoundaryPolicy::Closed).lower;
}

BoundsReport bounds_report(const ImgTable& t, const std::vector<OutputEvent>& events, BoundaryPolicy policy) {
    check_unique(events);
    BoundsReport r{std::vector<EventBounds>(events.size()), t.partition->size(), to_string(t.provenance)};
    detail::parallel_for(events.size(), [&](std::size_t i) { r.rows[i] = evaluate(t, events[i], policy); });
    return r;
}

BoundsReport bounds_report_serial(const ImgTable& t, const std::vector<OutputEvent>& events, BoundaryPolicy policy) {
    check_unique(events);
    BoundsReport r{{}, t.partition->size(), to_string(t.provenance)};
    for (const auto& e : events) {
        r.rows.push_back(evaluate(t, e, policy));
    }
    return r;
}

std::string decimal(const Rational& r, int digits) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    const mpz_class num = abs(r.get().get_num()) * scale;
    const mpz_class& den = r.get().get_den();
    const mpz_class q = (2 * num + den) / (2 * den);
    std::string s = q.get_str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits)) {
            s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        }
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    return (r.sign() < 0 && q != 0 ? "-" : "") + s;
}

void write_csv(const BoundsReport& r, std::ostream& out) {
    out << "event,lower_num,lower_den,upper_num,upper_den,lower_dec,upper_dec\n";
    for (const auto& row : r.rows) {
        out << csv_field(row.name) << ',' << row.lower.numerator_str() << ',' << row.lower.denominator_str() << ','
            << row.upper.numerator_str() << ',' << row.upper.denominator_str() << ',' << decimal(row.lower) << ','
            << decimal(row.upper) << '\n';
    }
}

void write_human(const BoundsReport& r, std::ostream& out) {
    std::size_t name_w = 5;
    std::size_t lo_w = 5;
    std::size_t up_w = 5;
    for (const auto& row : r.rows) {
        name_w = std::max(name_w, row.name.size());
        lo_w = std::max(lo_w, row.lower.str().size());
        up_w = std::max(up_w, row.upper.str().size());
    }
    out << "partition: " << r.partition_size << " cells, table: " << r.provenance << '\n';
    out << std::left << std::setw(static_cast<int>(name_w)) << "event" << "  " << std::setw(static_cast<int>(lo_w))
        << "lower" << "  " << std::setw(static_cast<int>(up_w)) << "upper" << "  " << std::setw(10) << "lower~"
        << "  " << std::setw(10) << "upper~" << "  cells\n";
    for (const auto& row : r.rows) {
        out << std::setw(static_cast<int>(name_w)) << row.name << "  " << std::setw(static_cast<int>(lo_w))
            << row.lower.str() << "  " << std::setw(static_cast<int>(up_w)) << row.upper.str() << "  "
            << std::setw(10) << decimal(row.lower) << "  " << std::setw(10) << decimal(row.upper) << "  "
            << row.contained_cells << "/" << row.overlapping_cells << '\n';
    }
}

} // namespace probbounds
