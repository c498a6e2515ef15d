#include "guicheck/eefg.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

#include "guicheck/json_io.hpp"
#include "guicheck/replayer.hpp"

namespace guicheck {

void Eefg::finalize() {
    alphabet.clear();
    for (const auto& [id, event] : locations) alphabet.insert(event);
    for (const LocationId& l : initial)
        if (!locations.count(l)) throw Error("initial names unknown location " + l);
    for (const auto& [a, b] : edges) {
        if (!locations.count(a)) throw Error("edge names unknown location " + a);
        if (!locations.count(b)) throw Error("edge names unknown location " + b);
    }
}

namespace {

// Dense index view used by the traversal algorithms.
struct EefgIndex {
    std::vector<LocationId> ids; // sorted
    std::vector<EventId> label;
    std::vector<std::vector<std::size_t>> succ; // ascending
    std::vector<std::size_t> initial;           // ascending
    std::map<LocationId, std::size_t> index_of;

    explicit EefgIndex(const Eefg& g) {
        for (const auto& [id, event] : g.locations) {
            index_of.emplace(id, ids.size());
            ids.push_back(id);
            label.push_back(event);
        }
        succ.resize(ids.size());
        for (const auto& [a, b] : g.edges) succ[index_of.at(a)].push_back(index_of.at(b));
        for (auto& v : succ) std::sort(v.begin(), v.end());
        for (const LocationId& l : g.initial) initial.push_back(index_of.at(l));
        std::sort(initial.begin(), initial.end());
    }
};

} // namespace

Eefg parse_eefg(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(std::string("syntax error: ") + e.what());
    }
    return eefg_from_json(j);
}

Eefg load_eefg(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_eefg(buf.str());
}

std::string serialize_eefg(const Eefg& g) {
    return eefg_to_json(g).dump(2) + "\n";
}

bool is_possible(const Eefg& g, const EventSequence& s) {
    for (const EventId& e : s)
        if (!g.alphabet.count(e)) throw Error("unknown event " + e);
    if (s.empty()) return true;

    EefgIndex ix(g);
    std::vector<std::size_t> current;
    for (std::size_t l : ix.initial)
        if (ix.label[l] == s[0]) current.push_back(l);
    for (std::size_t i = 1; i < s.size() && !current.empty(); ++i) {
        std::set<std::size_t> next;
        for (std::size_t l : current)
            for (std::size_t m : ix.succ[l])
                if (ix.label[m] == s[i]) next.insert(m);
        current.assign(next.begin(), next.end());
    }
    return !current.empty();
}

std::set<EventSequence> enumerate_possible(const Eefg& g, std::size_t k) {
    std::set<EventSequence> out;
    out.insert(EventSequence{});
    if (k == 0 || g.locations.empty()) return out;

    EefgIndex ix(g);
    // Each live word maps to the exact set of locations reachable under it.
    std::vector<std::pair<EventSequence, std::vector<std::size_t>>> frontier;
    {
        std::map<EventId, std::vector<std::size_t>> by_label;
        for (std::size_t l : ix.initial) by_label[ix.label[l]].push_back(l);
        for (auto& [e, locs] : by_label) {
            out.insert({e});
            frontier.emplace_back(EventSequence{e}, std::move(locs));
        }
    }
    for (std::size_t len = 2; len <= k && !frontier.empty(); ++len) {
        std::vector<std::pair<EventSequence, std::vector<std::size_t>>> next;
        for (const auto& [word, locs] : frontier) {
            std::map<EventId, std::set<std::size_t>> by_label;
            for (std::size_t l : locs)
                for (std::size_t m : ix.succ[l]) by_label[ix.label[m]].insert(m);
            for (const auto& [e, targets] : by_label) {
                EventSequence w = word;
                w.push_back(e);
                out.insert(w);
                next.emplace_back(std::move(w),
                                  std::vector<std::size_t>(targets.begin(), targets.end()));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

RipResult rip_efg_traced(const AppSpec& app, std::size_t depth) {
    if (depth < 1) throw Error("rip depth must be at least 1");

    RipResult result;
    const ConcreteState s0 = initial_state(app);

    std::vector<EventId> initial_events;
    for (const EventId& e : app.alphabet)
        if (is_executable(s0, app, e)) initial_events.push_back(e);

    std::map<ConcreteState, EventSequence> discovery; // state -> path from s0
    std::deque<ConcreteState> queue;
    discovery.emplace(s0, EventSequence{});
    queue.push_back(s0);

    while (!queue.empty()) {
        const ConcreteState state = queue.front();
        queue.pop_front();
        const EventSequence base = discovery.at(state);

        // All executions of at most `depth` events from this state; every
        // consecutively executed pair becomes an edge with a replay witness.
        struct Frame {
            ConcreteState st;
            EventSequence window;
        };
        std::vector<Frame> stack;
        stack.push_back({state, {}});
        while (!stack.empty()) {
            Frame f = std::move(stack.back());
            stack.pop_back();
            if (f.window.size() >= depth) continue;
            for (const EventId& e : app.alphabet) {
                if (!is_executable(f.st, app, e)) continue;
                ConcreteState nxt = exec_handler(app, e, f.st, GuiEffects::On);
                EventSequence window = f.window;
                window.push_back(e);
                if (window.size() >= 2) {
                    auto key = std::make_pair(window[window.size() - 2], e);
                    if (!result.witnesses.count(key)) {
                        EventSequence witness = base;
                        witness.insert(witness.end(), window.begin(), window.end());
                        result.witnesses.emplace(key, std::move(witness));
                    }
                }
                if (!discovery.count(nxt)) {
                    EventSequence path = base;
                    path.insert(path.end(), window.begin(), window.end());
                    discovery.emplace(nxt, std::move(path));
                    queue.push_back(nxt);
                }
                stack.push_back({std::move(nxt), std::move(window)});
            }
        }
    }

    Eefg& g = result.efg;
    for (const EventId& e : initial_events) {
        g.locations.emplace(e, e);
        g.initial.insert(e);
    }
    for (const auto& [edge, witness] : result.witnesses) {
        g.locations.emplace(edge.first, edge.first);
        g.locations.emplace(edge.second, edge.second);
        g.edges.insert(edge);
    }
    g.finalize();
    return result;
}

Eefg rip_efg(const AppSpec& app, std::size_t depth) {
    return rip_efg_traced(app, depth).efg;
}

namespace {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

} // namespace

std::string export_dot(const Eefg& g) {
    std::ostringstream os;
    os << "digraph eefg {\n";
    if (!g.locations.empty()) {
        os << "  rankdir=LR;\n";
        os << "  node [shape=box, style=rounded];\n";
        for (const auto& [id, event] : g.locations) {
            std::string label = id == event ? id : id + " : " + event;
            os << "  " << dot_quote("loc:" + id) << " [label=" << dot_quote(label) << "];\n";
        }
        if (!g.initial.empty()) {
            os << "  init [shape=point];\n";
            for (const LocationId& l : g.initial)
                os << "  init -> " << dot_quote("loc:" + l) << ";\n";
        }
        for (const auto& [a, b] : g.edges)
            os << "  " << dot_quote("loc:" + a) << " -> " << dot_quote("loc:" + b) << ";\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace guicheck
