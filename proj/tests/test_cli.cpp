#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>

#include <json.hpp>

#include "guicheck/eefg.hpp"
#include "test_support.hpp"

using namespace guicheck;
namespace gt = guicheck::testing;
using nlohmann::json;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CLI_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string app_arg() { return "--app " + gt::data_path("fig3_app.json"); }
std::string efg_arg() { return "--efg " + gt::data_path("fig2_efg.json"); }

} // namespace

TEST_CASE("verify: unsafe app exits 1 and names the sequence") {
    CliResult r = run_cli("verify " + app_arg() + " " + efg_arg() + " --assert-id x3");
    CHECK(r.exit_code == 1);
    json rep = json::parse(r.out);
    CHECK(rep["outcome"] == "fail");
    CHECK(rep["sequence"] == json::array({"e1", "e2", "e2", "e3"}));
    CHECK(rep["iterations"].size() == 1);
}

TEST_CASE("verify: default run checks all assertions") {
    CliResult r = run_cli("verify " + app_arg() + " " + efg_arg());
    CHECK(r.exit_code == 1);
    json rep = json::parse(r.out);
    CHECK(rep["sequence"] == json::array({"e1", "e2", "e2", "e3"}));
}

TEST_CASE("verify: x7 loops to the cap and exits 2") {
    CliResult r = run_cli("verify " + app_arg() + " " + efg_arg() + " --assert-id x7");
    CHECK(r.exit_code == 2);
    json rep = json::parse(r.out);
    CHECK(rep["outcome"] == "unknown");
    CHECK(rep["reason"] == "iteration-cap");
    CHECK(rep["iterations"][0]["counterexample"] ==
          json::array({"e1", "e2", "e2", "e2", "e3"}));
    CHECK(rep["iterations"][0]["executable"] == false);
}

TEST_CASE("analyze: safe assertion exits 0") {
    CliResult r = run_cli("analyze " + app_arg() + " " + efg_arg() + " --assert-id x5");
    CHECK(r.exit_code == 0);
    json v = json::parse(r.out);
    CHECK(v["verdict"] == "safe");
    CHECK(v["states_explored"].get<int>() > 0);
}

TEST_CASE("analyze: unsafe assertion exits 1 with a trace") {
    CliResult r = run_cli("analyze " + app_arg() + " " + efg_arg() + " --assert-id x7");
    CHECK(r.exit_code == 1);
    json v = json::parse(r.out);
    CHECK(v["verdict"] == "unsafe");
    CHECK(v["sequence"] == json::array({"e1", "e2", "e2", "e2", "e3"}));
    CHECK(v["trace"].back()["block"] == "EXIT");
    CHECK(v["trace"].back()["valuation"]["x"] == 7);
}

TEST_CASE("analyze: exhausted depth limit exits 2") {
    CliResult r =
        run_cli("analyze " + app_arg() + " " + efg_arg() + " --assert-id x5 --max-depth 2");
    CHECK(r.exit_code == 2);
    json v = json::parse(r.out);
    CHECK(v["verdict"] == "unknown");
    CHECK(v["reason"] == "depth-limit");
}

TEST_CASE("replay: executability and violations map to exit codes") {
    CliResult ok = run_cli("replay " + app_arg() + " --seq e1,e2,e2");
    CHECK(ok.exit_code == 0);
    CHECK(json::parse(ok.out)["executable"] == true);

    CliResult viol = run_cli("replay " + app_arg() + " --seq e1,e2,e2,e3");
    CHECK(viol.exit_code == 1);
    json jv = json::parse(viol.out);
    CHECK(jv["violations"][0]["step"] == 4);
    CHECK(jv["violations"][0]["assertions"] == json::array({"x3"}));

    CliResult inf = run_cli("replay " + app_arg() + " --seq e1,e2,e2,e2,e3");
    CHECK(inf.exit_code == 2);
    json ji = json::parse(inf.out);
    CHECK(ji["executable"] == false);
    CHECK(ji["infeasible_prefix"] == json::array({"e1", "e2", "e2", "e2", "e3"}));
}

TEST_CASE("rip: produces the worked example graph") {
    CliResult r = run_cli("rip " + app_arg() + " --depth 2");
    CHECK(r.exit_code == 0);
    Eefg ripped = parse_eefg(r.out);
    CHECK(gt::classical_sig(ripped) == gt::classical_sig(gt::fig2_efg()));
}

TEST_CASE("refine: output graph drops the removed prefix") {
    CliResult r = run_cli("refine " + efg_arg() + " --seq e1,e2,e2,e2,e3");
    CHECK(r.exit_code == 0);
    Eefg refined = parse_eefg(r.out);
    CHECK_FALSE(is_possible(refined, {"e1", "e2", "e2", "e2", "e3"}));
    CHECK(is_possible(refined, {"e1", "e2", "e2", "e3"}));
}

TEST_CASE("build: dumps the message loop") {
    CliResult r = run_cli("build " + app_arg() + " " + efg_arg());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("START:") != std::string::npos);
    CHECK(r.out.find("goto e1, e2, e3;") != std::string::npos);
}

TEST_CASE("usage and input errors exit 3") {
    CHECK(run_cli("verify --app /nonexistent.json " + efg_arg()).exit_code == 3);
    CHECK(run_cli("verify").exit_code == 3);
    CHECK(run_cli("frobnicate").exit_code == 3);
    CHECK(run_cli("verify " + app_arg() + " " + efg_arg() + " --assert-id nope").exit_code == 3);
}
