#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "guicheck/app_model.hpp"

namespace guicheck {

struct ReplayResult {
    bool executable = true;
    // Present iff not executable: the prefix of the input up to and including
    // the first non-executable event.
    std::optional<EventSequence> infeasible_prefix;
    // Assertion violations observed after each executed event (1-based step).
    std::vector<std::pair<std::size_t, std::vector<std::string>>> violations;
    ConcreteState final_state;
};

// An event can fire iff its widget is enabled, its window is visible, and no
// other modal window is visible.
bool is_executable(const ConcreteState& state, const AppSpec& app, const EventId& event);

// Replays s on a fresh initial state with gui effects on, stopping at the
// first non-executable event. Opening a second modal window while one is
// already visible is an error (no modal stacking).
ReplayResult replay(const AppSpec& app, const EventSequence& s);

} // namespace guicheck
