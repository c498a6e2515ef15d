#include "guicheck/verify.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

#include "guicheck/program.hpp"

namespace guicheck {

namespace {

void dump_dot(const std::string& dir, const std::string& name, const Eefg& g) {
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / name);
    out << export_dot(g);
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace

const char* outcome_name(VerifyReport::Outcome o) {
    switch (o) {
    case VerifyReport::Outcome::Success: return "success";
    case VerifyReport::Outcome::Fail: return "fail";
    case VerifyReport::Outcome::Unknown: return "unknown";
    }
    return "?";
}

VerifyReport verify(const AppSpec& app, const Eefg& g, const VerifyConfig& cfg) {
    if (cfg.max_iterations < 1) throw Error("max_iterations must be at least 1");
    cfg.limits.validate();
    for (const EventId& e : g.alphabet)
        if (!app.has_event(e))
            throw Error("alphabet mismatch: event " + e + " has no handler in the application");

    VerifyReport rep;
    Eefg current = g;
    dump_dot(cfg.dot_dir, "efg_iter1.dot", current);

    for (std::size_t iter = 1; iter <= cfg.max_iterations; ++iter) {
        const auto t0 = std::chrono::steady_clock::now();
        LoopProgram p = build_message_loop(app, current);
        AnalysisResult ar = run_static_analysis(p, app, cfg.limits);

        IterationRecord rec;
        rec.states_explored = ar.metrics.states_explored;

        if (ar.verdict.kind == Verdict::Kind::Safe) {
            rec.verdict = "safe";
            rec.elapsed_ms = ms_since(t0);
            rep.iterations.push_back(std::move(rec));
            rep.outcome = VerifyReport::Outcome::Success;
            rep.final_efg = std::move(current);
            dump_dot(cfg.dot_dir, "efg_final.dot", rep.final_efg);
            return rep;
        }
        if (ar.verdict.kind == Verdict::Kind::Unknown) {
            rec.verdict = "unknown";
            rec.elapsed_ms = ms_since(t0);
            rep.iterations.push_back(std::move(rec));
            rep.outcome = VerifyReport::Outcome::Unknown;
            rep.reason = ar.verdict.reason;
            rep.final_efg = std::move(current);
            dump_dot(cfg.dot_dir, "efg_final.dot", rep.final_efg);
            return rep;
        }

        rec.verdict = "unsafe";
        rec.counterexample = ar.verdict.sequence;
        ReplayResult rr = replay(app, ar.verdict.sequence);
        rec.executable = rr.executable;
        rec.infeasible_prefix = rr.infeasible_prefix;
        rec.replay_violation = !rr.violations.empty();

        if (rr.executable) {
            rec.elapsed_ms = ms_since(t0);
            rep.iterations.push_back(std::move(rec));
            if (!rr.violations.empty()) {
                rep.outcome = VerifyReport::Outcome::Fail;
                rep.sequence = ar.verdict.sequence;
            } else {
                // executable but concretely fine: saturating-domain artifact
                rep.outcome = VerifyReport::Outcome::Unknown;
                rep.reason = "domain-anomaly";
            }
            rep.final_efg = std::move(current);
            dump_dot(cfg.dot_dir, "efg_final.dot", rep.final_efg);
            return rep;
        }

        current = refine_efg(current, *rr.infeasible_prefix, cfg.mode, cfg.minimize);
        rec.elapsed_ms = ms_since(t0);
        rep.iterations.push_back(std::move(rec));
        dump_dot(cfg.dot_dir, "efg_iter" + std::to_string(iter + 1) + ".dot", current);
    }

    rep.outcome = VerifyReport::Outcome::Unknown;
    rep.reason = "iteration-cap";
    rep.final_efg = std::move(current);
    dump_dot(cfg.dot_dir, "efg_final.dot", rep.final_efg);
    return rep;
}

} // namespace guicheck
