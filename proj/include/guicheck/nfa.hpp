#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "guicheck/eefg.hpp"

namespace guicheck {

// Nondeterministic finite automaton over event ids, single initial state,
// no epsilon transitions.
struct Nfa {
    std::vector<EventId> alphabet; // sorted, unique
    std::size_t num_states = 0;
    std::size_t initial = 0;
    std::vector<char> accepting;                              // size num_states
    std::vector<std::map<EventId, std::vector<std::size_t>>> delta; // sorted target lists

    void add_transition(std::size_t from, const EventId& symbol, std::size_t to);
    std::size_t transition_count() const;
    void validate() const;
};

// One state per location plus a fresh initial state; every state accepting
// (the initial one too, so the empty sequence stays possible).
Nfa efg_to_nfa(const Eefg& g);

// Complete DFA for s.Sigma*: a chain of |s|+1 states plus a dead sink.
Nfa prefix_automaton(const EventSequence& s, const std::vector<EventId>& alphabet);

// NFA for Sigma*.s.Sigma*.
Nfa factor_automaton(const EventSequence& s, const std::vector<EventId>& alphabet);

// Subset construction; the result is deterministic and complete.
Nfa determinize(const Nfa& a);

Nfa complement(const Nfa& a);
Nfa intersect(const Nfa& a, const Nfa& b);

// Drops states unreachable from the initial state or not co-reachable to an
// accepting state; the initial state is always kept.
Nfa trim(const Nfa& a);

bool accepts(const Nfa& a, const EventSequence& w);
std::set<EventSequence> enumerate_words(const Nfa& a, std::size_t k);

// Partition-refinement minimization of determinize(a), keeping states with
// different incoming-symbol sets apart so an EEFG can still be reconstructed.
Nfa minimize_dfa(const Nfa& a);

// Inverse of efg_to_nfa for trim automata whose non-initial states each have a
// unique incoming symbol; conflicts report the offending state and symbols.
Eefg nfa_to_efg(const Nfa& a);

enum class RefineMode { Prefix, Factor };

// Removes s_inf.Sigma* (Prefix) or Sigma*.s_inf.Sigma* (Factor) from the
// graph's possible-sequence language via complement and product, then
// reconstructs an EEFG. s_inf must be non-empty and possible in g.
Eefg refine_efg(const Eefg& g, const EventSequence& s_inf,
                RefineMode mode = RefineMode::Prefix, bool minimize = false);

} // namespace guicheck
