#include "guicheck/nfa.hpp"

#include <algorithm>
#include <deque>

namespace guicheck {

void Nfa::add_transition(std::size_t from, const EventId& symbol, std::size_t to) {
    auto& targets = delta[from][symbol];
    auto it = std::lower_bound(targets.begin(), targets.end(), to);
    if (it == targets.end() || *it != to) targets.insert(it, to);
}

std::size_t Nfa::transition_count() const {
    std::size_t n = 0;
    for (const auto& m : delta)
        for (const auto& [sym, targets] : m) n += targets.size();
    return n;
}

void Nfa::validate() const {
    if (num_states == 0) throw Error("automaton needs at least the initial state");
    if (initial >= num_states) throw Error("initial state out of range");
    if (accepting.size() != num_states || delta.size() != num_states)
        throw Error("automaton tables out of sync");
    for (std::size_t q = 0; q < num_states; ++q) {
        for (const auto& [sym, targets] : delta[q]) {
            if (!std::binary_search(alphabet.begin(), alphabet.end(), sym))
                throw Error("transition symbol " + sym + " not in the alphabet");
            for (std::size_t t : targets)
                if (t >= num_states) throw Error("transition target out of range");
        }
    }
}

Nfa efg_to_nfa(const Eefg& g) {
    Nfa a;
    a.alphabet.assign(g.alphabet.begin(), g.alphabet.end());

    std::map<LocationId, std::size_t> state_of; // q0 = 0, locations in id order
    a.num_states = 1;
    for (const auto& [id, event] : g.locations) state_of.emplace(id, a.num_states++);
    a.accepting.assign(a.num_states, 1); // all accepting; q0 keeps epsilon possible
    a.delta.resize(a.num_states);

    for (const LocationId& l : g.initial)
        a.add_transition(0, g.locations.at(l), state_of.at(l));
    for (const auto& [from, to] : g.edges)
        a.add_transition(state_of.at(from), g.locations.at(to), state_of.at(to));
    return a;
}

Nfa prefix_automaton(const EventSequence& s, const std::vector<EventId>& alphabet) {
    if (s.empty()) throw Error("prefix automaton needs a non-empty sequence");
    std::vector<EventId> sigma = alphabet;
    std::sort(sigma.begin(), sigma.end());
    sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
    for (const EventId& e : s)
        if (!std::binary_search(sigma.begin(), sigma.end(), e))
            throw Error("sequence event " + e + " not in the alphabet");

    Nfa a;
    a.alphabet = std::move(sigma);
    const std::size_t n = s.size();
    const std::size_t dead = n + 1;
    a.num_states = n + 2; // chain 0..n plus dead sink
    a.accepting.assign(a.num_states, 0);
    a.accepting[n] = 1;
    a.delta.resize(a.num_states);
    for (std::size_t i = 0; i < n; ++i)
        for (const EventId& e : a.alphabet)
            a.add_transition(i, e, e == s[i] ? i + 1 : dead);
    for (const EventId& e : a.alphabet) {
        a.add_transition(n, e, n);
        a.add_transition(dead, e, dead);
    }
    return a;
}

Nfa factor_automaton(const EventSequence& s, const std::vector<EventId>& alphabet) {
    if (s.empty()) throw Error("factor automaton needs a non-empty sequence");
    std::vector<EventId> sigma = alphabet;
    std::sort(sigma.begin(), sigma.end());
    sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
    for (const EventId& e : s)
        if (!std::binary_search(sigma.begin(), sigma.end(), e))
            throw Error("sequence event " + e + " not in the alphabet");

    Nfa a;
    a.alphabet = std::move(sigma);
    const std::size_t n = s.size();
    a.num_states = n + 1;
    a.accepting.assign(a.num_states, 0);
    a.accepting[n] = 1;
    a.delta.resize(a.num_states);
    for (const EventId& e : a.alphabet) {
        a.add_transition(0, e, 0);
        a.add_transition(n, e, n);
    }
    for (std::size_t i = 0; i < n; ++i) a.add_transition(i, s[i], i + 1);
    return a;
}

Nfa determinize(const Nfa& a) {
    Nfa d;
    d.alphabet = a.alphabet;

    std::map<std::vector<std::size_t>, std::size_t> index; // sorted subset -> state
    std::deque<std::vector<std::size_t>> queue;
    std::vector<std::vector<std::size_t>> subsets;

    auto intern = [&](std::vector<std::size_t> subset) {
        auto it = index.find(subset);
        if (it != index.end()) return it->second;
        std::size_t id = subsets.size();
        index.emplace(subset, id);
        subsets.push_back(std::move(subset));
        queue.push_back(subsets.back());
        return id;
    };

    intern({a.initial});
    while (!queue.empty()) {
        std::vector<std::size_t> subset = std::move(queue.front());
        queue.pop_front();
        const std::size_t from = index.at(subset);
        d.delta.resize(subsets.size());
        for (const EventId& sym : d.alphabet) {
            std::set<std::size_t> targets;
            for (std::size_t q : subset) {
                auto it = a.delta[q].find(sym);
                if (it != a.delta[q].end()) targets.insert(it->second.begin(), it->second.end());
            }
            std::size_t to = intern({targets.begin(), targets.end()});
            d.delta.resize(subsets.size());
            d.delta[from][sym].push_back(to);
        }
    }

    d.num_states = subsets.size();
    d.initial = 0;
    d.delta.resize(d.num_states);
    d.accepting.assign(d.num_states, 0);
    for (std::size_t i = 0; i < subsets.size(); ++i)
        for (std::size_t q : subsets[i])
            if (a.accepting[q]) d.accepting[i] = 1;
    return d;
}

Nfa complement(const Nfa& a) {
    Nfa d = determinize(a); // complete by construction
    for (std::size_t q = 0; q < d.num_states; ++q) d.accepting[q] = d.accepting[q] ? 0 : 1;
    return d;
}

Nfa intersect(const Nfa& a, const Nfa& b) {
    Nfa p;
    std::set_intersection(a.alphabet.begin(), a.alphabet.end(), b.alphabet.begin(),
                          b.alphabet.end(), std::back_inserter(p.alphabet));

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
    std::deque<std::pair<std::size_t, std::size_t>> queue;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;

    auto intern = [&](std::pair<std::size_t, std::size_t> pr) {
        auto it = index.find(pr);
        if (it != index.end()) return it->second;
        std::size_t id = pairs.size();
        index.emplace(pr, id);
        pairs.push_back(pr);
        queue.push_back(pr);
        return id;
    };

    intern({a.initial, b.initial});
    std::vector<std::map<EventId, std::vector<std::size_t>>> delta;
    while (!queue.empty()) {
        auto [qa, qb] = queue.front();
        queue.pop_front();
        const std::size_t from = index.at({qa, qb});
        delta.resize(pairs.size());
        for (const EventId& sym : p.alphabet) {
            auto ia = a.delta[qa].find(sym);
            auto ib = b.delta[qb].find(sym);
            if (ia == a.delta[qa].end() || ib == b.delta[qb].end()) continue;
            for (std::size_t ta : ia->second)
                for (std::size_t tb : ib->second) {
                    std::size_t to = intern({ta, tb});
                    delta.resize(pairs.size());
                    auto& v = delta[from][sym];
                    if (v.empty() || v.back() != to) v.push_back(to);
                }
        }
    }

    p.num_states = pairs.size();
    p.initial = 0;
    p.accepting.assign(p.num_states, 0);
    for (std::size_t i = 0; i < pairs.size(); ++i)
        p.accepting[i] = a.accepting[pairs[i].first] && b.accepting[pairs[i].second];
    p.delta = std::move(delta);
    p.delta.resize(p.num_states);
    for (auto& m : p.delta)
        for (auto& [sym, targets] : m) {
            std::sort(targets.begin(), targets.end());
            targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        }
    return p;
}

Nfa trim(const Nfa& a) {
    std::vector<char> reachable(a.num_states, 0);
    {
        std::deque<std::size_t> queue{a.initial};
        reachable[a.initial] = 1;
        while (!queue.empty()) {
            std::size_t q = queue.front();
            queue.pop_front();
            for (const auto& [sym, targets] : a.delta[q])
                for (std::size_t t : targets)
                    if (!reachable[t]) {
                        reachable[t] = 1;
                        queue.push_back(t);
                    }
        }
    }
    std::vector<char> coreachable(a.num_states, 0);
    {
        std::vector<std::vector<std::size_t>> rev(a.num_states);
        for (std::size_t q = 0; q < a.num_states; ++q)
            for (const auto& [sym, targets] : a.delta[q])
                for (std::size_t t : targets) rev[t].push_back(q);
        std::deque<std::size_t> queue;
        for (std::size_t q = 0; q < a.num_states; ++q)
            if (a.accepting[q]) {
                coreachable[q] = 1;
                queue.push_back(q);
            }
        while (!queue.empty()) {
            std::size_t q = queue.front();
            queue.pop_front();
            for (std::size_t r : rev[q])
                if (!coreachable[r]) {
                    coreachable[r] = 1;
                    queue.push_back(r);
                }
        }
    }

    std::vector<std::size_t> remap(a.num_states, SIZE_MAX);
    Nfa t;
    t.alphabet = a.alphabet;
    for (std::size_t q = 0; q < a.num_states; ++q)
        if ((reachable[q] && coreachable[q]) || q == a.initial) remap[q] = t.num_states++;
    t.initial = remap[a.initial];
    t.accepting.assign(t.num_states, 0);
    t.delta.resize(t.num_states);
    for (std::size_t q = 0; q < a.num_states; ++q) {
        if (remap[q] == SIZE_MAX) continue;
        t.accepting[remap[q]] = a.accepting[q];
        for (const auto& [sym, targets] : a.delta[q])
            for (std::size_t to : targets)
                if (remap[to] != SIZE_MAX && (reachable[to] && coreachable[to]))
                    t.add_transition(remap[q], sym, remap[to]);
    }
    return t;
}

bool accepts(const Nfa& a, const EventSequence& w) {
    std::set<std::size_t> current{a.initial};
    for (const EventId& sym : w) {
        std::set<std::size_t> next;
        for (std::size_t q : current) {
            auto it = a.delta[q].find(sym);
            if (it != a.delta[q].end()) next.insert(it->second.begin(), it->second.end());
        }
        current = std::move(next);
        if (current.empty()) return false;
    }
    for (std::size_t q : current)
        if (a.accepting[q]) return true;
    return false;
}

std::set<EventSequence> enumerate_words(const Nfa& a, std::size_t k) {
    std::set<EventSequence> out;
    auto any_accepting = [&](const std::vector<std::size_t>& subset) {
        for (std::size_t q : subset)
            if (a.accepting[q]) return true;
        return false;
    };

    std::vector<std::pair<EventSequence, std::vector<std::size_t>>> frontier;
    frontier.emplace_back(EventSequence{}, std::vector<std::size_t>{a.initial});
    if (any_accepting(frontier.front().second)) out.insert(EventSequence{});

    for (std::size_t len = 1; len <= k && !frontier.empty(); ++len) {
        std::vector<std::pair<EventSequence, std::vector<std::size_t>>> next;
        for (const auto& [word, subset] : frontier) {
            for (const EventId& sym : a.alphabet) {
                std::set<std::size_t> targets;
                for (std::size_t q : subset) {
                    auto it = a.delta[q].find(sym);
                    if (it != a.delta[q].end())
                        targets.insert(it->second.begin(), it->second.end());
                }
                if (targets.empty()) continue;
                EventSequence w = word;
                w.push_back(sym);
                std::vector<std::size_t> tv(targets.begin(), targets.end());
                if (any_accepting(tv)) out.insert(w);
                next.emplace_back(std::move(w), std::move(tv));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

Nfa minimize_dfa(const Nfa& a) {
    Nfa d = trim(determinize(a));

    // Initial partition keyed by (accepting, incoming-symbol set) so merged
    // states keep a consistent incoming label for EEFG reconstruction.
    std::vector<std::set<EventId>> incoming(d.num_states);
    for (std::size_t q = 0; q < d.num_states; ++q)
        for (const auto& [sym, targets] : d.delta[q])
            for (std::size_t t : targets) incoming[t].insert(sym);

    std::vector<std::size_t> cls(d.num_states);
    {
        std::map<std::pair<bool, std::set<EventId>>, std::size_t> key_to_class;
        for (std::size_t q = 0; q < d.num_states; ++q) {
            auto key = std::make_pair(static_cast<bool>(d.accepting[q]), incoming[q]);
            auto [it, fresh] = key_to_class.emplace(key, key_to_class.size());
            cls[q] = it->second;
        }
    }

    for (;;) {
        std::map<std::vector<std::size_t>, std::size_t> sig_to_class;
        std::vector<std::size_t> next_cls(d.num_states);
        for (std::size_t q = 0; q < d.num_states; ++q) {
            std::vector<std::size_t> sig{cls[q]};
            for (const EventId& sym : d.alphabet) {
                auto it = d.delta[q].find(sym);
                sig.push_back(it == d.delta[q].end() ? SIZE_MAX : cls[it->second.front()]);
            }
            auto [it, fresh] = sig_to_class.emplace(std::move(sig), sig_to_class.size());
            next_cls[q] = it->second;
        }
        bool changed = false;
        for (std::size_t q = 0; q < d.num_states; ++q) changed = changed || next_cls[q] != cls[q];
        cls = std::move(next_cls);
        if (!changed) break;
    }

    std::size_t num_classes = 0;
    for (std::size_t c : cls) num_classes = std::max(num_classes, c + 1);

    Nfa m;
    m.alphabet = d.alphabet;
    m.num_states = num_classes;
    m.initial = cls[d.initial];
    m.accepting.assign(num_classes, 0);
    m.delta.resize(num_classes);
    for (std::size_t q = 0; q < d.num_states; ++q) {
        if (d.accepting[q]) m.accepting[cls[q]] = 1;
        for (const auto& [sym, targets] : d.delta[q])
            m.add_transition(cls[q], sym, cls[targets.front()]);
    }
    return trim(m);
}

Eefg nfa_to_efg(const Nfa& a) {
    std::vector<std::set<EventId>> incoming(a.num_states);
    for (std::size_t q = 0; q < a.num_states; ++q)
        for (const auto& [sym, targets] : a.delta[q])
            for (std::size_t t : targets) {
                if (t == a.initial)
                    throw Error("initial state has an incoming transition on " + sym);
                incoming[t].insert(sym);
            }

    Eefg g;
    std::vector<LocationId> loc_of(a.num_states);
    for (std::size_t q = 0; q < a.num_states; ++q) {
        if (q == a.initial) continue;
        if (incoming[q].empty())
            throw Error("state " + std::to_string(q) + " is unreachable; trim the automaton first");
        if (incoming[q].size() > 1) {
            auto it = incoming[q].begin();
            const EventId first = *it++;
            throw Error("incoming-label conflict at state " + std::to_string(q) + ": symbols " +
                        first + " and " + *it);
        }
        loc_of[q] = "q" + std::to_string(q);
        g.locations.emplace(loc_of[q], *incoming[q].begin());
    }
    for (std::size_t q = 0; q < a.num_states; ++q)
        for (const auto& [sym, targets] : a.delta[q])
            for (std::size_t t : targets) {
                if (q == a.initial)
                    g.initial.insert(loc_of[t]);
                else
                    g.edges.emplace(loc_of[q], loc_of[t]);
            }
    g.finalize();
    return g;
}

Eefg refine_efg(const Eefg& g, const EventSequence& s_inf, RefineMode mode, bool minimize) {
    if (s_inf.empty()) throw Error("cannot refine with an empty sequence");
    if (!is_possible(g, s_inf))
        throw Error("sequence is not possible in the graph");

    const std::vector<EventId> sigma(g.alphabet.begin(), g.alphabet.end());
    Nfa efg_nfa = efg_to_nfa(g);
    Nfa removed = mode == RefineMode::Prefix ? prefix_automaton(s_inf, sigma)
                                             : factor_automaton(s_inf, sigma);
    Nfa product = trim(intersect(efg_nfa, complement(removed)));
    if (minimize) product = minimize_dfa(product);
    return nfa_to_efg(product);
}

} // namespace guicheck
