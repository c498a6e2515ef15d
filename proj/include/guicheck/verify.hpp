#pragma once

#include <optional>
#include <string>
#include <vector>

#include "guicheck/analyzer.hpp"
#include "guicheck/nfa.hpp"
#include "guicheck/replayer.hpp"

namespace guicheck {

struct VerifyConfig {
    std::size_t max_iterations = 10;
    AnalysisLimits limits;
    RefineMode mode = RefineMode::Prefix;
    bool minimize = false;
    std::string dot_dir; // when non-empty, EEFG dot files are written there
};

struct IterationRecord {
    std::string verdict; // "safe" | "unsafe" | "unknown"
    std::optional<EventSequence> counterexample;
    std::optional<bool> executable;
    std::optional<EventSequence> infeasible_prefix;
    bool replay_violation = false;
    std::size_t states_explored = 0;
    double elapsed_ms = 0.0;
};

struct VerifyReport {
    enum class Outcome { Success, Fail, Unknown };

    Outcome outcome = Outcome::Unknown;
    std::string reason;     // Unknown: analyzer reason | domain-anomaly | iteration-cap
    EventSequence sequence; // Fail: the confirmed violating sequence
    std::vector<IterationRecord> iterations;
    Eefg final_efg;
};

// The verification loop: build the message-loop program, analyze, replay a
// counterexample, and either confirm the failure, refine the EEFG and retry,
// or stop with success/unknown. A counterexample that replays executably but
// does not violate concretely is a saturation artifact and yields
// unknown(domain-anomaly) rather than a false positive.
VerifyReport verify(const AppSpec& app, const Eefg& g, const VerifyConfig& cfg);

const char* outcome_name(VerifyReport::Outcome o);

} // namespace guicheck
