#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "guicheck/program.hpp"

namespace guicheck {

struct AnalysisLimits {
    std::size_t max_states = 1'000'000; // distinct (block, valuation) states
    std::size_t max_depth = 64;         // events per explored sequence

    void validate() const;
};

struct AnalysisMetrics {
    std::size_t states_explored = 0;
    std::size_t frontier_peak = 0;
};

struct Verdict {
    enum class Kind { Safe, Unsafe, Unknown };

    Kind kind = Kind::Safe;
    EventSequence sequence;            // Unsafe: shortest violating sequence
    ProgramTrace trace;                // Unsafe: its feasible trace
    std::vector<std::string> violated; // Unsafe: assertion ids false at the end
    std::string reason;                // Unknown: state-limit | depth-limit | domain-anomaly
    std::string diagnostics;           // Unknown: free text
};

struct AnalysisResult {
    Verdict verdict;
    AnalysisMetrics metrics;
};

// Exhaustive breadth-first exploration of the program's (block, valuation)
// state space. Assertions are evaluated at the cut point after each handler
// block. Unsafe reports a minimum-length violating sequence; ties are broken
// by lexicographic event-id order, then by location id (via the canonical
// trace). Safe means the frontier was exhausted within the limits.
AnalysisResult run_static_analysis(const LoopProgram& p, const AppSpec& app,
                                   const AnalysisLimits& lim);

// Labels of the trace's handler blocks, START/EXIT excluded.
EventSequence trace_to_event_sequence(const ProgramTrace& t, const LoopProgram& p);

} // namespace guicheck
