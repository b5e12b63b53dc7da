#include <fstream>
#include <iterator>

#include "commands.hpp"
#include "doctest.h"

using namespace qtoric;
using namespace qtoric::cli;

namespace {

json load(const std::string& name)
{
    std::ifstream f(std::string(QTORIC_TEST_DATA) + "/" + name);
    REQUIRE(f);
    return json::parse(std::string(std::istreambuf_iterator<char>(f), {}));
}

} // namespace

TEST_CASE("atlas report carries the P2 chart matrices")
{
    Result r = run("atlas", {load("p2def.json")}, {});
    CHECK(r.code == Ok);
    CHECK(r.report["cocycle"] == true);
    const json& charts = r.report["charts"];
    REQUIRE(charts.size() == 3);
    CHECK(charts[0]["A"] == json::parse(R"([["1","0"],["0","1"]])"));
    CHECK(charts[1]["A"] == json::parse(R"j([["(-b)/(a)","1"],["(1)/(a)","0"]])j"));
    CHECK(charts[2]["A"] == json::parse(R"j([["0","(1)/(b)"],["1","(-a)/(b)"]])j"));
}

TEST_CASE("exit codes")
{
    CHECK(run("validate", {load("broken.json")}, {}).code == False);
    CHECK(run("validate", {load("p2def.json")}, {}).code == Ok);
    CHECK(run("validate", {}, {}).code == BadInput);
    CHECK(run("nope", {}, {}).code == BadInput);
    CHECK(run("validate", {json::parse(R"({"fan": {"rays": [[0.5]], "cones": [[1]]}})")}, {}).code == BadInput);
    CHECK(run("validate", {json::parse(R"({"parameters": ["a"], "fan": {"rays": [["a"]], "cones": [[1]]}})")}, {})
              .code == BadInput);
    // an exact zero at the witness cannot be decided
    json degenerate = load("p2def.json");
    degenerate["witness"]["a"] = "0";
    CHECK(run("properties", {degenerate}, {}).code == Undecided);

    Result w = run("wps-weights", {}, {{"a", "-2"}, {"b", "-3"}});
    CHECK(w.report == json::parse(R"({"weights":[1,2,3]})"));
    CHECK(run("wps-weights", {}, {{"a", "1/2"}, {"b", "-3"}}).code == BadInput);
    CHECK(run("moduli-equiv-2d", {}, {{"a", "sqrt(2)"}, {"b", "sqrt(3)"}}).code == False);
}

TEST_CASE("every command's report re-parses and is deterministic")
{
    std::vector<std::tuple<std::string, std::vector<json>, Options>> calls = {
        {"validate", {load("blowup.json")}, {}},
        {"properties", {load("p2def.json")}, {}},
        {"comb-type", {load("blowup.json")}, {}},
        {"comb-equiv", {load("blowup.json"), load("blowup.json")}, {}},
        {"standardize", {load("p2def.json")}, {}},
        {"morphism-check", {load("p2def.json"), load("p2def.json")}, {{"map", R"({"L": [["1","0"],["0","1"]]})"}}},
        {"cal-morphism-check", {load("p1cal.json"), load("p1cal.json")}, {}},
        {"atlas", {load("blowup.json")}, {}},
        {"irrelevant", {load("blowup.json")}, {}},
        {"gale", {load("blowup.json")}, {}},
        {"lvmb-build", {load("p1cal.json")}, {}},
        {"lvmb-check", {load("hopf.json")}, {}},
        {"lvm-check", {load("torus.json")}, {}},
        {"polytope", {load("hopf.json")}, {}},
        {"kh-check", {load("hopf.json")}, {}},
        {"moduli-act", {}, {{"hbar", R"([["a"]])"}, {"H", "[[2,1],[1,1]]"}}},
        {"moduli-equiv-2d", {}, {{"a", "3/7"}, {"b", "5/2"}}},
        {"p2-orbit", {}, {{"a", "-2"}, {"b", "-3"}}},
        {"wps-weights", {}, {{"a", "-1/2"}, {"b", "-1"}}},
        {"hopf-equiv", {}, {{"l3", R"(["2","3"])"}, {"l4", R"(["-1","5"])"}, {"m3", R"(["3","3"])"}, {"m4", R"(["-1","5"])"}}},
    };
    for (const auto& [cmd, in, opts] : calls) {
        CAPTURE(cmd);
        Result a = run(cmd, in, opts), b = run(cmd, in, opts);
        CHECK(a.code == Ok);
        CHECK(a.code == b.code);
        CHECK(json::parse(a.report.dump()) == a.report);
        CHECK(a.report == b.report);
        CHECK_FALSE(a.report.contains("error"));
    }
    CHECK(calls.size() + 1 == command_names().size()); // lvmb-to-fan is covered below
}

TEST_CASE("emitted files feed back into the tool")
{
    for (const char* name : {"p2def.json", "blowup.json", "p1cal.json"}) {
        Result s = run("standardize", {load(name)}, {});
        REQUIRE(s.code == Ok);
        CHECK(run("validate", {s.report}, {}).code == Ok);
    }
    Result built = run("lvmb-build", {load("p1cal.json")}, {});
    Result back = run("lvmb-to-fan", {built.report}, {});
    CHECK(back.code == Ok);
    CHECK(run("validate", {back.report}, {}).code == Ok);
    CHECK(run("lvmb-check", {built.report}, {}).code == Ok);
}
