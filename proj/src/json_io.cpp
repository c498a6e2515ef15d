#include "guicheck/json_io.hpp"

namespace guicheck {

using nlohmann::json;

json eefg_to_json(const Eefg& g) {
    json locs = json::array();
    for (const auto& [id, event] : g.locations) locs.push_back({{"id", id}, {"event", event}});
    json initial = json::array();
    for (const LocationId& l : g.initial) initial.push_back(l);
    json edges = json::array();
    for (const auto& [a, b] : g.edges) edges.push_back(json::array({a, b}));
    return {{"locations", locs}, {"initial", initial}, {"edges", edges}};
}

Eefg eefg_from_json(const json& j) {
    Eefg g;
    try {
        if (!j.is_object()) throw Error("eefg must be a JSON object");
        for (const json& jl : j.value("locations", json::array())) {
            const LocationId id = jl.at("id").get<std::string>();
            const EventId event = jl.at("event").get<std::string>();
            if (!g.locations.emplace(id, event).second)
                throw Error("duplicate location id " + id);
        }
        for (const json& ji : j.value("initial", json::array()))
            g.initial.insert(ji.get<std::string>());
        for (const json& je : j.value("edges", json::array())) {
            if (!je.is_array() || je.size() != 2)
                throw Error("edge must be a pair of location ids");
            g.edges.emplace(je[0].get<std::string>(), je[1].get<std::string>());
        }
    } catch (const json::exception& e) {
        throw Error(std::string("malformed eefg: ") + e.what());
    }
    g.finalize();
    return g;
}

json state_to_json(const AppSpec& app, const ConcreteState& s) {
    json valuation = json::object();
    for (const auto& [name, idx] : app.var_index) valuation[name] = s.valuation[idx];
    json enabled = json::object();
    for (const auto& [id, idx] : app.widget_index) enabled[id] = static_cast<bool>(s.enabled[idx]);
    json visible = json::object();
    for (const auto& [id, idx] : app.window_index) visible[id] = static_cast<bool>(s.visible[idx]);
    return {{"valuation", valuation}, {"enabled", enabled}, {"visible", visible}};
}

json replay_result_to_json(const AppSpec& app, const ReplayResult& r) {
    json violations = json::array();
    for (const auto& [step, ids] : r.violations)
        violations.push_back({{"step", step}, {"assertions", ids}});
    json j = {{"executable", r.executable},
              {"violations", violations},
              {"final_state", state_to_json(app, r.final_state)}};
    j["infeasible_prefix"] = r.infeasible_prefix ? json(*r.infeasible_prefix) : json(nullptr);
    return j;
}

json trace_to_json(const LoopProgram& p, const AppSpec& app, const ProgramTrace& t) {
    json steps = json::array();
    for (const ProgramState& st : t.states) {
        json valuation = json::object();
        for (const auto& [name, idx] : app.var_index) valuation[name] = st.valuation[idx];
        steps.push_back({{"block", p.blocks[st.block].id}, {"valuation", valuation}});
    }
    return steps;
}

json analysis_to_json(const LoopProgram& p, const AppSpec& app, const AnalysisResult& r) {
    json j;
    switch (r.verdict.kind) {
    case Verdict::Kind::Safe: j["verdict"] = "safe"; break;
    case Verdict::Kind::Unsafe:
        j["verdict"] = "unsafe";
        j["sequence"] = r.verdict.sequence;
        j["violated"] = r.verdict.violated;
        j["trace"] = trace_to_json(p, app, r.verdict.trace);
        break;
    case Verdict::Kind::Unknown:
        j["verdict"] = "unknown";
        j["reason"] = r.verdict.reason;
        j["diagnostics"] = r.verdict.diagnostics;
        break;
    }
    j["states_explored"] = r.metrics.states_explored;
    j["frontier_peak"] = r.metrics.frontier_peak;
    return j;
}

json report_to_json(const VerifyReport& rep) {
    json iterations = json::array();
    for (const IterationRecord& rec : rep.iterations) {
        json it = {{"verdict", rec.verdict},
                   {"states_explored", rec.states_explored},
                   {"elapsed_ms", rec.elapsed_ms}};
        it["counterexample"] = rec.counterexample ? json(*rec.counterexample) : json(nullptr);
        it["executable"] = rec.executable ? json(*rec.executable) : json(nullptr);
        it["infeasible_prefix"] =
            rec.infeasible_prefix ? json(*rec.infeasible_prefix) : json(nullptr);
        if (rec.counterexample && rec.executable && *rec.executable)
            it["replay_violation"] = rec.replay_violation;
        iterations.push_back(std::move(it));
    }

    json j;
    j["outcome"] = outcome_name(rep.outcome);
    j["sequence"] = rep.outcome == VerifyReport::Outcome::Fail ? json(rep.sequence) : json(nullptr);
    if (rep.outcome == VerifyReport::Outcome::Unknown) j["reason"] = rep.reason;
    j["iterations"] = iterations;
    j["final_efg"] = eefg_to_json(rep.final_efg);
    return j;
}

} // namespace guicheck
