#include "cli/runner.hpp"

#include <doctest.h>

#include <fstream>
#include <set>
#include <string>

using namespace tilinglab::cli;

namespace {

bool is_tolerance_key(const std::string& key)
{
    static const std::set<std::string> exact = {"tol", "error_bar", "tail_bound", "resolution"};
    return exact.contains(key) || (key.size() > 4 && key.ends_with("_tol"));
}

bool carries_tolerance(const Json& object)
{
    for (auto it = object.begin(); it != object.end(); ++it)
        if (is_tolerance_key(it.key())) return true;
    return false;
}

/// Paths of floating-point values with no tolerance field in their own object or an enclosing one.
void unaccompanied_floats(const Json& j, bool covered, const std::string& path, std::vector<std::string>& out)
{
    if (j.is_number_float()) {
        if (!covered) out.push_back(path);
    } else if (j.is_object()) {
        const bool here = covered || carries_tolerance(j);
        for (auto it = j.begin(); it != j.end(); ++it) unaccompanied_floats(it.value(), here, path + "." + it.key(), out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) unaccompanied_floats(j[i], covered, path + "[" + std::to_string(i) + "]", out);
    }
}

JobResult run(const std::string& text) { return run_job_text(text); }

std::string error_message(const JobResult& r) { return r.output["error"]["message"].get<std::string>(); }

} // namespace

TEST_CASE("every corpus entry produces its expected verdict and exit code")
{
    const CorpusRun result = run_corpus();
    REQUIRE(result.rows.size() == corpus().size());
    for (const CorpusRow& row : result.rows) {
        CAPTURE(row.name);
        CHECK(row.actual == row.expected);
        if (row.expected == "pass") CHECK(row.exit_code == 0);
        if (row.expected == "fail" || row.expected == "inapplicable") CHECK(row.exit_code == 1);
        if (row.expected == "error") {
            CHECK(row.exit_code == 2);
            CHECK(row.output["exit_code"] == 2);
            CHECK(row.output["error"]["type"].is_string());
            CHECK(row.output["error"]["message"].is_string());
        }
    }
    CHECK(result.all_match);
}

TEST_CASE("corpus covers every command")
{
    std::set<std::string> seen;
    for (const CorpusEntry& e : corpus()) seen.insert(e.job["command"].get<std::string>());
    for (const Command& c : commands()) {
        CAPTURE(c.name);
        CHECK(seen.contains(c.name));
    }
}

TEST_CASE("envelopes echo resolved params that reproduce the run")
{
    for (const CorpusEntry& e : corpus()) {
        const JobResult first = run_job(e.job);
        if (first.output.contains("error")) continue;
        CAPTURE(e.name);
        const Json& env = first.output;
        CHECK(env["command"] == e.job["command"]);
        CHECK(env["library"]["name"] == "tilinglab");
        CHECK(env["input_hash"].get<std::string>().size() == 16);
        CHECK_FALSE(env.contains("timing"));

        Json again;
        again["command"] = env["command"];
        again["params"] = env["params"];
        const JobResult second = run_job(again);
        CHECK(second.exit_code == first.exit_code);
        CHECK(second.output.dump() == env.dump());
    }
}

TEST_CASE("input hash ignores key order and tracks values")
{
    const JobResult a = run(R"({"command":"notched","params":{"delta":["1/2","1/3"],"tol":1e-9}})");
    const JobResult b = run(R"({"params":{"tol":1e-9,"delta":["1/2","1/3"]},"command":"notched"})");
    const JobResult c = run(R"({"command":"notched","params":{"delta":["1/2","1/4"]}})");
    REQUIRE(a.exit_code == 0);
    CHECK(a.output["input_hash"] == b.output["input_hash"]);
    CHECK(a.output["input_hash"] != c.output["input_hash"]);
    CHECK(a.output["params"].dump() == b.output["params"].dump());
}

TEST_CASE("no float leaves without a tolerance, error bar, tail bound or resolution")
{
    RunOptions timed;
    timed.timing = true;
    for (const CorpusEntry& e : corpus()) {
        const JobResult r = run_job(e.job, timed);
        CAPTURE(e.name);
        std::vector<std::string> bad;
        unaccompanied_floats(r.output, false, "$", bad);
        CHECK_MESSAGE(bad.empty(), (bad.empty() ? std::string() : bad.front()));
        if (!r.output.contains("error")) {
            REQUIRE(r.output.contains("timing"));
            CHECK(r.output["timing"].contains("resolution"));
        }
    }
}

TEST_CASE("the float walker notices a bare float")
{
    std::vector<std::string> bad;
    unaccompanied_floats(Json::parse(R"({"a":{"x":0.5},"b":{"x":0.5,"tol":1e-9},"c":{"d_tol":1e-3,"y":[1.5]}})"),
                         false, "$", bad);
    REQUIRE(bad.size() == 1);
    CHECK(bad.front() == "$.a.x");
}

TEST_CASE("rationals are strings in params and results")
{
    const JobResult r = run(R"({"command":"notched","params":{"delta":["1/2","1/3"]}})");
    CHECK(r.output["result"]["determinant"] == "5/6");
    CHECK(r.output["result"]["lattice"]["basis"][0][1].is_string());
    CHECK(r.output["params"]["radius"] == "20");
}

TEST_CASE("unknown keys are rejected at every level")
{
    const char* jobs[] = {
        R"({"command":"disk-certificate","params":{},"colour":1})",
        R"({"command":"disk-certificate","params":{"colour":1}})",
        R"({"command":"verify-tiling","params":{"tile":{"kind":"unit_cube","dim":2,"colour":1},"translations":{"kind":"integer","dim":2}}})",
        R"({"command":"verify-tiling","params":{"tile":[{"corner":["0"],"widths":["1"],"colour":1}],"translations":{"kind":"integer","dim":1}}})",
        R"({"command":"verify-tiling","params":{"tile":{"kind":"unit_cube","dim":2},"translations":{"kind":"integer","dim":2,"colour":1}}})",
        R"({"command":"verify-tiling","params":{"tile":{"kind":"regular_hexagon","side":1.0,"colour":1},"translations":{"kind":"hexagonal_lattice"}}})",
        R"({"command":"packing-transfer","params":{"f":{"kind":"unit_cube","dim":1},"g":{"kind":"fejer","colour":2},"translations":{"kind":"integer","dim":1}}})",
        R"({"command":"gabor-check","params":{"k":{"kind":"integer","dim":1},"l":{"kind":"integer","dim":1},"e":{"kind":"unit_cube","dim":1},"tests":[{"kind":"bump","center":[0.0],"radius":1.0,"colour":1}]}})",
        R"({"command":"cube-spectrum","params":{"translations":{"kind":"shifted_columns","shifts":{"0":"1/3"},"colour":1}}})",
    };
    for (const char* text : jobs) {
        CAPTURE(text);
        const JobResult r = run(text);
        CHECK(r.exit_code == 2);
        REQUIRE(r.output.contains("error"));
        CHECK(r.output["error"]["type"] == "validation");
        CHECK(error_message(r).find("colour") != std::string::npos);
    }
}

TEST_CASE("malformed jobs map to exit code 2 with a typed error")
{
    CHECK(run("{not json").exit_code == 2);
    CHECK(run("[1,2]").exit_code == 2);
    CHECK(run(R"({"params":{}})").exit_code == 2);

    const JobResult wrong_type = run(R"({"command":"notched","params":{"delta":5}})");
    CHECK(wrong_type.exit_code == 2);
    CHECK(error_message(wrong_type).find("params.delta") != std::string::npos);

    const JobResult singular =
        run(R"({"command":"verify-tiling","params":{"tile":{"kind":"unit_cube","dim":2},"translations":{"basis":[["1","2"],["2","4"]]}}})");
    CHECK(singular.exit_code == 2);
    CHECK(singular.output["error"]["type"] == "singular_lattice");

    const JobResult even = run(R"({"command":"extended-cube","params":{"gamma":["1/2","1/3"],"k":2}})");
    CHECK(even.output["error"]["type"] == "precondition");
    CHECK(even.output["command"] == "extended-cube");
}

TEST_CASE("top-level overrides land in params")
{
    const JobResult r = run(R"({"command":"notched","params":{"delta":["1/2","1/3"]},"radius":"6","tol":1e-7})");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output["params"]["radius"] == "6");
    CHECK(r.output["params"]["tol"] == 1e-7);

    const JobResult grid = run(R"({"command":"rigid-motion-demo","params":{},"grid_exponent":3})");
    CHECK(grid.exit_code == 2);
    CHECK(error_message(grid).find("grid_exponent") != std::string::npos);

    const JobResult seeded = run(R"({"command":"cube-spectrum","params":{"translations":{"kind":"integer","dim":1}},"seed":5})");
    CHECK(seeded.output["params"]["seed"] == 5);
}

TEST_CASE("output is identical across runs and thread counts")
{
    RunOptions one;
    one.threads = 1;
    RunOptions eight;
    eight.threads = 8;
    const std::string a = run_corpus(one).to_json().dump();
    const std::string b = run_corpus(eight).to_json().dump();
    const std::string c = run_corpus(one).to_json().dump();
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("text and markdown formats")
{
    const JobResult r = run(R"({"command":"disk-certificate"})");
    REQUIRE(r.exit_code == 0);
    CHECK(format_text(r).starts_with("disk-certificate: pass"));
    CHECK(format_markdown(r).starts_with("# disk-certificate"));
    CHECK(summary_line(r).find("pass") != std::string::npos);

    const JobResult report = run(R"({"command":"report"})");
    CHECK(format_markdown(report).starts_with("# Tiling and spectral certificates"));

    const JobResult err = run(R"({"command":"nope"})");
    CHECK(format_text(err).starts_with("error [validation]"));
}

TEST_CASE("jobspec schema lists the registry parameters with their defaults")
{
    std::ifstream in(std::string(TILINGLAB_SCHEMA_DIR) + "/jobspec.schema.json");
    REQUIRE(in);
    const Json schema = Json::parse(in);
    const Json& names = schema["properties"]["command"]["enum"];
    REQUIRE(names.size() == commands().size());
    for (const Command& c : commands()) {
        CAPTURE(c.name);
        const Json* params = nullptr;
        for (const Json& branch : schema["allOf"])
            if (branch["if"]["properties"]["command"]["const"] == c.name) params = &branch["then"]["properties"]["params"];
        REQUIRE(params != nullptr);
        CHECK((*params)["additionalProperties"] == false);
        const Json& props = (*params)["properties"];
        std::vector<std::string> keys;
        for (auto it = props.begin(); it != props.end(); ++it) keys.push_back(it.key());
        std::vector<std::string> expected;
        for (auto it = c.defaults.begin(); it != c.defaults.end(); ++it) expected.push_back(it.key());
        CHECK(keys == expected);
        for (auto it = c.defaults.begin(); it != c.defaults.end(); ++it) {
            if (it.value().is_null()) continue;
            CAPTURE(it.key());
            CHECK(props[it.key()]["default"] == it.value());
        }
    }
}
