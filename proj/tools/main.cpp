#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "guicheck/json_io.hpp"
#include "guicheck/program.hpp"

namespace gc = guicheck;

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw gc::Error("cannot write file " + path);
    out << text;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty())
        std::cout << text;
    else
        write_text(out_path, text);
}

gc::AppSpec load_app(const std::string& path, const std::vector<std::string>& assert_ids) {
    gc::AppSpec app = gc::load_app_spec(path);
    if (!assert_ids.empty()) app = gc::with_assertions(app, assert_ids);
    return app;
}

struct CommonOpts {
    std::string app_path;
    std::string efg_path;
    std::vector<std::string> assert_ids;
    std::vector<std::string> seq;
    std::string out_path;
    std::string report_path;
    std::string dot_dir;
    std::string mode = "prefix";
    bool minimize = false;
    std::size_t depth = 2;
    std::size_t max_iters = 10;
    std::size_t max_states = 1'000'000;
    std::size_t max_depth = 64;
};

gc::RefineMode parse_mode(const std::string& mode) {
    if (mode == "prefix") return gc::RefineMode::Prefix;
    if (mode == "factor") return gc::RefineMode::Factor;
    throw gc::Error("mode must be prefix or factor");
}

int run_rip(const CommonOpts& o) {
    gc::AppSpec app = gc::load_app_spec(o.app_path);
    gc::Eefg g = gc::rip_efg(app, o.depth);
    emit(o.out_path, gc::serialize_eefg(g));
    if (!o.dot_dir.empty()) {
        std::filesystem::create_directories(o.dot_dir);
        write_text((std::filesystem::path(o.dot_dir) / "efg.dot").string(), gc::export_dot(g));
    }
    return 0;
}

int run_build(const CommonOpts& o) {
    gc::AppSpec app = load_app(o.app_path, o.assert_ids);
    gc::Eefg g = gc::load_eefg(o.efg_path);
    gc::LoopProgram p = gc::build_message_loop(app, g);
    emit(o.out_path, gc::dump_program(p, app));
    if (!o.dot_dir.empty()) {
        std::filesystem::create_directories(o.dot_dir);
        write_text((std::filesystem::path(o.dot_dir) / "program.dot").string(),
                   gc::export_dot(p));
    }
    return 0;
}

int run_analyze(const CommonOpts& o) {
    gc::AppSpec app = load_app(o.app_path, o.assert_ids);
    gc::Eefg g = gc::load_eefg(o.efg_path);
    gc::LoopProgram p = gc::build_message_loop(app, g);
    gc::AnalysisLimits lim{o.max_states, o.max_depth};
    gc::AnalysisResult res = gc::run_static_analysis(p, app, lim);
    emit(o.out_path, gc::analysis_to_json(p, app, res).dump(2) + "\n");
    switch (res.verdict.kind) {
    case gc::Verdict::Kind::Safe: return 0;
    case gc::Verdict::Kind::Unsafe: return 1;
    case gc::Verdict::Kind::Unknown: return 2;
    }
    return 2;
}

int run_replay(const CommonOpts& o) {
    gc::AppSpec app = load_app(o.app_path, o.assert_ids);
    gc::ReplayResult r = gc::replay(app, o.seq);
    emit(o.out_path, gc::replay_result_to_json(app, r).dump(2) + "\n");
    if (!r.executable) return 2;
    return r.violations.empty() ? 0 : 1;
}

int run_refine(const CommonOpts& o) {
    gc::Eefg g = gc::load_eefg(o.efg_path);
    gc::Eefg refined = gc::refine_efg(g, o.seq, parse_mode(o.mode), o.minimize);
    emit(o.out_path, gc::serialize_eefg(refined));
    if (!o.dot_dir.empty()) {
        std::filesystem::create_directories(o.dot_dir);
        write_text((std::filesystem::path(o.dot_dir) / "efg_before.dot").string(),
                   gc::export_dot(g));
        write_text((std::filesystem::path(o.dot_dir) / "efg_after.dot").string(),
                   gc::export_dot(refined));
    }
    return 0;
}

int run_verify(const CommonOpts& o) {
    gc::AppSpec app = load_app(o.app_path, o.assert_ids);
    gc::Eefg g = gc::load_eefg(o.efg_path);
    gc::VerifyConfig cfg;
    cfg.max_iterations = o.max_iters;
    cfg.limits = {o.max_states, o.max_depth};
    cfg.mode = parse_mode(o.mode);
    cfg.minimize = o.minimize;
    cfg.dot_dir = o.dot_dir;
    gc::VerifyReport rep = gc::verify(app, g, cfg);

    const std::string text = gc::report_to_json(rep).dump(2) + "\n";
    std::cout << text;
    if (!o.report_path.empty()) write_text(o.report_path, text);

    switch (rep.outcome) {
    case gc::VerifyReport::Outcome::Success: return 0;
    case gc::VerifyReport::Outcome::Fail: return 1;
    case gc::VerifyReport::Outcome::Unknown: return 2;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App cli{"guicheck - black-box verification of GUI application models"};
    cli.require_subcommand(1);
    CommonOpts o;

    auto add_analysis_limits = [&](CLI::App* c) {
        c->add_option("--max-states", o.max_states, "state cap for the analyzer");
        c->add_option("--max-depth", o.max_depth, "events-per-sequence cap for the analyzer");
    };

    CLI::App* rip = cli.add_subcommand("rip", "infer a classical EFG from the app model");
    rip->add_option("--app", o.app_path, "app model JSON")->required();
    rip->add_option("--depth", o.depth, "exploration window length (default 2)");
    rip->add_option("-o,--out", o.out_path, "output EEFG JSON path (default stdout)");
    rip->add_option("--dot", o.dot_dir, "directory for DOT output");

    CLI::App* build = cli.add_subcommand("build", "construct and dump the message-loop program");
    build->add_option("--app", o.app_path, "app model JSON")->required();
    build->add_option("--efg", o.efg_path, "EEFG JSON")->required();
    build->add_option("--assert-id", o.assert_ids, "check only these assertions");
    build->add_option("-o,--out", o.out_path, "output path (default stdout)");
    build->add_option("--dot", o.dot_dir, "directory for the program CFG DOT");

    CLI::App* analyze = cli.add_subcommand("analyze", "run the static analysis once");
    analyze->add_option("--app", o.app_path, "app model JSON")->required();
    analyze->add_option("--efg", o.efg_path, "EEFG JSON")->required();
    analyze->add_option("--assert-id", o.assert_ids, "check only these assertions");
    analyze->add_option("-o,--out", o.out_path, "output path (default stdout)");
    add_analysis_limits(analyze);

    CLI::App* replay = cli.add_subcommand("replay", "replay an event sequence on the app model");
    replay->add_option("--app", o.app_path, "app model JSON")->required();
    replay->add_option("--seq", o.seq, "comma-separated event sequence")
        ->required()
        ->delimiter(',');
    replay->add_option("-o,--out", o.out_path, "output path (default stdout)");

    CLI::App* refine = cli.add_subcommand("refine", "remove a sequence language from an EEFG");
    refine->add_option("--efg", o.efg_path, "EEFG JSON")->required();
    refine->add_option("--seq", o.seq, "comma-separated infeasible sequence")
        ->required()
        ->delimiter(',');
    refine->add_option("--mode", o.mode, "prefix (default) or factor");
    refine->add_flag("--minimize", o.minimize, "minimize the refined automaton");
    refine->add_option("-o,--out", o.out_path, "output EEFG JSON path (default stdout)");
    refine->add_option("--dot", o.dot_dir, "directory for DOT output");

    CLI::App* verify = cli.add_subcommand("verify", "run the full verification loop");
    verify->add_option("--app", o.app_path, "app model JSON")->required();
    verify->add_option("--efg", o.efg_path, "EEFG JSON")->required();
    verify->add_option("--assert-id", o.assert_ids, "check only these assertions");
    verify->add_option("--max-iters", o.max_iters, "iteration cap (default 10)");
    verify->add_option("--mode", o.mode, "refinement mode: prefix (default) or factor");
    verify->add_flag("--minimize", o.minimize, "minimize refined automata");
    verify->add_option("--report", o.report_path, "also write the report JSON here");
    verify->add_option("--dot", o.dot_dir, "directory for per-iteration EEFG DOT files");
    add_analysis_limits(verify);

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = cli.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (*rip) return run_rip(o);
        if (*build) return run_build(o);
        if (*analyze) return run_analyze(o);
        if (*replay) return run_replay(o);
        if (*refine) return run_refine(o);
        if (*verify) return run_verify(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
