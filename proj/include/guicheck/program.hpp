#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "guicheck/app_model.hpp"
#include "guicheck/eefg.hpp"

namespace guicheck {

using BlockId = std::string;

// The mock message-loop program built from an application model and an EEFG:
// one block per location (running that location's event handler), plus START
// (variable initialization, nondeterministic jump to the initial locations)
// and EXIT (the assertion cut point). Every location block can jump to EXIT.
struct LoopProgram {
    static constexpr std::size_t kStart = 0;
    static constexpr std::size_t kExit = 1;

    struct Block {
        BlockId id;
        LocationId loc;  // empty for START/EXIT
        EventId event;   // empty for START/EXIT
        std::vector<std::size_t> successors; // ascending block indices
    };

    // blocks[kStart] = START, blocks[kExit] = EXIT, then one block per
    // location in ascending location-id order.
    std::vector<Block> blocks;
    std::map<LocationId, std::size_t> block_of_loc;

    std::size_t size() const { return blocks.size(); }
};

// "START"/"EXIT" are reserved block ids; location ids may not use them.
LoopProgram build_message_loop(const AppSpec& app, const Eefg& g);

struct ProgramState {
    std::size_t block = 0;                // program counter
    std::vector<std::int64_t> valuation;  // by the app's var_index

    auto operator<=>(const ProgramState&) const = default;
};

// states.front() is START with the initial valuation, states.back() is EXIT;
// each interior state is the post-handler cut point of its block.
struct ProgramTrace {
    std::vector<ProgramState> states;
};

// The feasible trace of s (gui effects off), through the lexicographically
// least location-id path realizing s; nullopt when s is not a path label.
std::optional<ProgramTrace> trace_of_sequence(const LoopProgram& p, const AppSpec& app,
                                              const EventSequence& s);

// Event sequences of all complete control paths START -> ... -> EXIT with at
// most k handler blocks; the empty sequence is always included.
std::set<EventSequence> program_sequences(const LoopProgram& p, std::size_t k);

// Debug-only textual form of the program; never parsed back.
std::string dump_program(const LoopProgram& p, const AppSpec& app);

std::string export_dot(const LoopProgram& p);

} // namespace guicheck
