#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "guicheck/app_model.hpp"

namespace guicheck {

using LocationId = std::string;

// Extended event flow graph: a labeled directed graph over event-labeled
// locations. A sequence of events is "possible" when it is the labeling of
// some path starting at an initial location; the empty sequence is always
// possible.
struct Eefg {
    std::map<LocationId, EventId> locations; // the labeling
    std::set<LocationId> initial;
    std::set<std::pair<LocationId, LocationId>> edges;
    std::set<EventId> alphabet; // derived: range of the labeling

    // Validates endpoints/initial against locations and derives the alphabet.
    void finalize();
};

Eefg parse_eefg(const std::string& text);
Eefg load_eefg(const std::string& path);
std::string serialize_eefg(const Eefg& g);

bool is_possible(const Eefg& g, const EventSequence& s);

// All possible sequences of length <= k, by graph traversal.
std::set<EventSequence> enumerate_possible(const Eefg& g, std::size_t k);

// Black-box ripper: explores the simulated application breadth-first over
// concrete states (deduplicating visited states); from every visited state it
// runs all executions of at most `depth` events and records each consecutively
// executed event pair as an edge. Produces a classical EFG (one location per
// witnessed event, location id = event id).
Eefg rip_efg(const AppSpec& app, std::size_t depth);

struct RipResult {
    Eefg efg;
    // For each emitted edge (e, e'), an executable sequence from the initial
    // state whose last two events are e, e'.
    std::map<std::pair<EventId, EventId>, EventSequence> witnesses;
};
RipResult rip_efg_traced(const AppSpec& app, std::size_t depth);

// Graphviz rendering; initial locations are marked with an arrow from a point.
std::string export_dot(const Eefg& g);

} // namespace guicheck
