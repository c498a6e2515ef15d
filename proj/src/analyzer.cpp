#include "guicheck/analyzer.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace guicheck {

void AnalysisLimits::validate() const {
    if (max_states == 0 || max_depth == 0) throw Error("analysis limits must be positive");
}

namespace {

using StateKey = std::pair<std::size_t, std::vector<std::int64_t>>; // (block, valuation)

} // namespace

AnalysisResult run_static_analysis(const LoopProgram& p, const AppSpec& app,
                                   const AnalysisLimits& lim) {
    lim.validate();
    for (std::size_t i = LoopProgram::kExit + 1; i < p.blocks.size(); ++i)
        if (!app.has_event(p.blocks[i].event))
            throw Error("program references event " + p.blocks[i].event +
                        " unknown to the application");

    AnalysisResult res;
    AnalysisMetrics& m = res.metrics;

    ConcreteState scratch = initial_state(app);
    const std::vector<std::int64_t> init_valuation = scratch.valuation;

    // Level-synchronized BFS. Each frontier entry keeps the lexicographically
    // least event sequence discovering its (block, valuation) state, which
    // makes the returned counterexample the lex-least among the shortest.
    std::set<StateKey> visited;
    std::map<StateKey, EventSequence> frontier;
    visited.insert({LoopProgram::kStart, init_valuation});
    frontier.emplace(StateKey{LoopProgram::kStart, init_valuation}, EventSequence{});
    m.states_explored = 1;
    m.frontier_peak = 1;

    for (std::size_t depth = 0;; ++depth) {
        if (frontier.empty()) {
            res.verdict.kind = Verdict::Kind::Safe;
            return res;
        }
        if (depth >= lim.max_depth) {
            res.verdict.kind = Verdict::Kind::Unknown;
            res.verdict.reason = "depth-limit";
            res.verdict.diagnostics = "sequences longer than " + std::to_string(lim.max_depth) +
                                      " events were not explored";
            return res;
        }

        std::map<StateKey, EventSequence> next;
        const EventSequence* best_seq = nullptr;
        std::vector<std::string> best_violated;

        for (const auto& [key, seq] : frontier) {
            for (std::size_t succ : p.blocks[key.first].successors) {
                if (succ == LoopProgram::kExit) continue;
                scratch.valuation = key.second;
                exec_handler_inplace(app, p.blocks[succ].event, scratch, GuiEffects::Off);

                StateKey nk{succ, scratch.valuation};
                if (visited.count(nk)) continue;
                EventSequence nseq = seq;
                nseq.push_back(p.blocks[succ].event);
                auto it = next.find(nk);
                if (it == next.end())
                    next.emplace(std::move(nk), std::move(nseq));
                else if (nseq < it->second)
                    it->second = std::move(nseq);
            }
        }

        m.states_explored += next.size();
        m.frontier_peak = std::max(m.frontier_peak, next.size());

        // cut-point check on the newly discovered states
        for (const auto& [key, seq] : next) {
            scratch.valuation = key.second;
            std::vector<std::string> violated = check_assertions(app, scratch);
            if (violated.empty()) continue;
            if (!best_seq || seq < *best_seq) {
                best_seq = &seq;
                best_violated = std::move(violated);
            }
        }
        if (best_seq) {
            res.verdict.kind = Verdict::Kind::Unsafe;
            res.verdict.sequence = *best_seq;
            res.verdict.violated = std::move(best_violated);
            auto trace = trace_of_sequence(p, app, res.verdict.sequence);
            if (!trace) throw Error("internal: counterexample is not a program path");
            res.verdict.trace = std::move(*trace);
            return res;
        }

        for (const auto& [key, seq] : next) visited.insert(key);
        if (visited.size() > lim.max_states) {
            res.verdict.kind = Verdict::Kind::Unknown;
            res.verdict.reason = "state-limit";
            res.verdict.diagnostics = "more than " + std::to_string(lim.max_states) +
                                      " distinct states reached";
            return res;
        }
        frontier = std::move(next);
    }
}

EventSequence trace_to_event_sequence(const ProgramTrace& t, const LoopProgram& p) {
    if (t.states.size() < 2 || t.states.front().block != LoopProgram::kStart ||
        t.states.back().block != LoopProgram::kExit)
        throw Error("trace does not belong to this program");
    EventSequence s;
    for (std::size_t i = 1; i + 1 < t.states.size(); ++i) {
        const std::size_t b = t.states[i].block;
        if (b <= LoopProgram::kExit || b >= p.blocks.size())
            throw Error("trace does not belong to this program");
        s.push_back(p.blocks[b].event);
    }
    return s;
}

} // namespace guicheck
