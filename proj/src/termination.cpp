// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#include "probbounds/termination.hpp"

#include <string>

#include "probbounds/errors.hpp"

namespace probbounds {

const char* to_string(Verdict v) { return v == Verdict::Terminates ? "terminates" : "unknown"; }

Verdict parse_verdict(std::string_view s) {
    if (s == "terminates") {
        return Verdict::Terminates;
    }
    if (s == "unknown") {
        return Verdict::Unknown;
    }
    throw TableError("termination verdict must be 'terminates' or 'unknown', got '" + std::string(s) + "'");
}

Verdict TerminationFacts::at(std::size_t cell) const {
    if (const auto it = cells.find(cell); it != cells.end()) {
        return it->second;
    }
    if (!fallback) {
        throw TableError("no termination verdict for cell " + std::to_string(cell));
    }
    return *fallback;
}

ImgTable facts_to_table(const TerminationFacts& facts, std::shared_ptr<const InputPartition> partition,
                        const AbstractOutput& value_domain) {
    if (!facts.cells.empty() && facts.cells.rbegin()->first >= partition->size()) {
        throw TableError("termination verdict for cell " + std::to_string(facts.cells.rbegin()->first) +
                         " but the partition has " + std::to_string(partition->size()) + " cells");
    }
    ImgTable t{partition, {}, TableProvenance::External};
    t.entries.reserve(partition->size());
    for (std::size_t i = 0; i < partition->size(); ++i) {
        t.entries.emplace_back(value_domain.numeric(), facts.at(i) == Verdict::Unknown);
    }
    return t;
}

Verdict syntactic_check(const Program& p) { return has_loop(p) ? Verdict::Unknown : Verdict::Terminates; }

} // namespace probbounds
