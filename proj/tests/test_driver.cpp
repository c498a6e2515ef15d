#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "guicheck/verify.hpp"
#include "test_support.hpp"

using namespace guicheck;
namespace gt = guicheck::testing;

namespace {

VerifyReport verify_fig2(const std::string& assertion_id, std::size_t max_iters = 10,
                         RefineMode mode = RefineMode::Prefix) {
    AppSpec app = with_assertions(gt::fig3_app(), {assertion_id});
    VerifyConfig cfg;
    cfg.max_iterations = max_iters;
    cfg.mode = mode;
    return verify(app, gt::fig2_efg(), cfg);
}

} // namespace

TEST_CASE("x != 3: fail in one iteration without refinement") {
    VerifyReport rep = verify_fig2("x3");
    CHECK(rep.outcome == VerifyReport::Outcome::Fail);
    CHECK(rep.sequence == EventSequence{"e1", "e2", "e2", "e3"});
    REQUIRE(rep.iterations.size() == 1);
    CHECK(rep.iterations[0].verdict == "unsafe");
    CHECK(rep.iterations[0].executable == true);
    CHECK(rep.iterations[0].replay_violation);
}

TEST_CASE("x != 7: refinement loop hits the cap, every counterexample non-executable") {
    VerifyReport rep = verify_fig2("x7", 10);
    CHECK(rep.outcome == VerifyReport::Outcome::Unknown);
    CHECK(rep.reason == "iteration-cap");
    REQUIRE(rep.iterations.size() == 10);

    REQUIRE(rep.iterations[0].counterexample);
    CHECK(*rep.iterations[0].counterexample == EventSequence{"e1", "e2", "e2", "e2", "e3"});
    REQUIRE(rep.iterations[0].infeasible_prefix);
    CHECK(*rep.iterations[0].infeasible_prefix ==
          EventSequence{"e1", "e2", "e2", "e2", "e3"});

    AppSpec app = with_assertions(gt::fig3_app(), {"x7"});
    for (const IterationRecord& rec : rep.iterations) {
        REQUIRE(rec.counterexample);
        CHECK(rec.executable == false);
        CHECK_FALSE(replay(app, *rec.counterexample).executable);
    }

    // counterexample lengths never shrink as the language is cut down
    for (std::size_t i = 1; i < rep.iterations.size(); ++i)
        CHECK(rep.iterations[i].counterexample->size() >=
              rep.iterations[i - 1].counterexample->size());

    // the final graph no longer admits any of the removed prefixes
    for (const IterationRecord& rec : rep.iterations)
        CHECK_FALSE(is_possible(rep.final_efg, *rec.infeasible_prefix));
}

TEST_CASE("x != 5: success thanks to frontier exhaustion") {
    VerifyReport rep = verify_fig2("x5");
    CHECK(rep.outcome == VerifyReport::Outcome::Success);
    REQUIRE(rep.iterations.size() == 1);
    CHECK(rep.iterations[0].verdict == "safe");
    CHECK_FALSE(rep.iterations[0].counterexample);
}

TEST_CASE("refinement progress across the first iteration") {
    VerifyReport rep = verify_fig2("x7", 2);
    REQUIRE(rep.iterations.size() == 2);
    const EventSequence removed = *rep.iterations[0].infeasible_prefix;

    Eefg g0 = gt::fig2_efg();
    Eefg g1 = refine_efg(g0, removed, RefineMode::Prefix);
    CHECK_FALSE(is_possible(g1, removed));
    for (const EventSequence& w : enumerate_possible(g0, 6)) {
        const bool starts = w.size() >= removed.size() &&
                            std::equal(removed.begin(), removed.end(), w.begin());
        CHECK(is_possible(g1, w) == !starts);
    }
}

TEST_CASE("report fidelity: iterations replay standalone") {
    VerifyReport rep = verify_fig2("x7", 5);
    AppSpec app = with_assertions(gt::fig3_app(), {"x7"});
    Eefg g = gt::fig2_efg();
    for (const IterationRecord& rec : rep.iterations) {
        LoopProgram p = build_message_loop(app, g);
        AnalysisResult ar = run_static_analysis(p, app, AnalysisLimits{});
        REQUIRE(ar.verdict.kind == Verdict::Kind::Unsafe);
        CHECK(ar.verdict.sequence == *rec.counterexample);
        CHECK(ar.metrics.states_explored == rec.states_explored);
        g = refine_efg(g, *rec.infeasible_prefix, RefineMode::Prefix);
    }

    VerifyReport again = verify_fig2("x7", 5);
    REQUIRE(again.iterations.size() == rep.iterations.size());
    for (std::size_t i = 0; i < rep.iterations.size(); ++i) {
        CHECK(again.iterations[i].counterexample == rep.iterations[i].counterexample);
        CHECK(again.iterations[i].states_explored == rep.iterations[i].states_explored);
    }
}

TEST_CASE("factor mode also terminates on the worked example") {
    VerifyReport rep = verify_fig2("x7", 10, RefineMode::Factor);
    // factor removal cuts a superset of the prefix language; whatever the
    // terminal outcome, no fail may be reported without a concrete violation
    if (rep.outcome == VerifyReport::Outcome::Fail) {
        AppSpec app = with_assertions(gt::fig3_app(), {"x7"});
        ReplayResult rr = replay(app, rep.sequence);
        CHECK(rr.executable);
        CHECK_FALSE(rr.violations.empty());
    }
}

TEST_CASE("property: no false positives end to end") {
    std::mt19937 rng(987654);
    int fails = 0;
    for (int trial = 0; trial < 60; ++trial) {
        AppSpec app = gt::random_app(rng, 4, 2);
        Eefg g = gt::random_eefg(rng, app.alphabet, 6);
        VerifyConfig cfg;
        cfg.max_iterations = 6;
        cfg.limits = AnalysisLimits{100'000, 8};
        VerifyReport rep = verify(app, g, cfg);

        if (rep.outcome == VerifyReport::Outcome::Fail) {
            ++fails;
            ReplayResult rr = replay(app, rep.sequence);
            CHECK(rr.executable);
            CHECK_FALSE(rr.violations.empty());
        }
        if (rep.outcome == VerifyReport::Outcome::Success) {
            // last verdict must be safe
            CHECK(rep.iterations.back().verdict == "safe");
        }
    }
    CHECK(fails >= 10);
}

TEST_CASE("analyzer limits propagate as unknown outcomes") {
    AppSpec app = with_assertions(gt::fig3_app(), {"x5"});
    VerifyConfig cfg;
    cfg.limits = AnalysisLimits{1'000'000, 2};
    VerifyReport rep = verify(app, gt::fig2_efg(), cfg);
    CHECK(rep.outcome == VerifyReport::Outcome::Unknown);
    CHECK(rep.reason == "depth-limit");
    REQUIRE(rep.iterations.size() == 1);
    CHECK(rep.iterations[0].verdict == "unknown");

    cfg.limits = AnalysisLimits{3, 64};
    rep = verify(app, gt::fig2_efg(), cfg);
    CHECK(rep.outcome == VerifyReport::Outcome::Unknown);
    CHECK(rep.reason == "state-limit");
}

TEST_CASE("input validation") {
    AppSpec app = gt::fig3_app();
    Eefg foreign;
    foreign.locations.emplace("l1", "zz");
    foreign.initial.insert("l1");
    foreign.finalize();
    VerifyConfig cfg;
    CHECK_THROWS_AS(verify(app, foreign, cfg), Error);

    VerifyConfig zero;
    zero.max_iterations = 0;
    CHECK_THROWS_AS(verify(app, gt::fig2_efg(), zero), Error);
}
