#include "cli/runner.hpp"

#include "tilinglab/core/errors.hpp"
#include "tilinglab/core/parallel.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

#ifndef TILINGLAB_VERSION
#define TILINGLAB_VERSION "unknown"
#endif

namespace tilinglab::cli {

namespace {

const char* const kOverrides[] = {"tol", "radius", "window", "seed", "grid_exponent"};

struct WorkerScope {
    explicit WorkerScope(std::optional<std::size_t> n) : active(n.has_value())
    {
        if (active) set_worker_count_override(*n);
    }
    ~WorkerScope()
    {
        if (active) set_worker_count_override(0);
    }
    bool active;
};

std::string command_name(const Json& job)
{
    if (job.is_object() && job.contains("command") && job["command"].is_string()) return job["command"].get<std::string>();
    return "";
}

JobResult error_result(const Json& job, const std::string& type, const std::string& message, int code)
{
    JobResult r;
    r.exit_code = code;
    Json err;
    err["type"] = type;
    err["message"] = message;
    r.output["error"] = err;
    const std::string name = command_name(job);
    r.output["command"] = name.empty() ? Json(nullptr) : Json(name);
    r.output["exit_code"] = code;
    r.summary = {type + ": " + message};
    return r;
}

/// Resolved params after folding the top-level overrides into the given params.
Json merged_params(const Command& command, const Json& job)
{
    Json given = job.contains("params") ? job["params"] : Json::object();
    if (given.is_null()) given = Json::object();
    if (!given.is_object()) throw ValidationError("params: expected an object");
    for (const char* key : kOverrides) {
        if (!job.contains(key)) continue;
        if (!command.defaults.contains(key))
            throw ValidationError(std::string("'") + key + "' does not apply to " + command.name);
        given[key] = job[key];
    }
    return resolve_params(command, given);
}

void validate_job_keys(const Json& job)
{
    if (!job.is_object()) throw ValidationError("job: expected an object");
    for (auto it = job.begin(); it != job.end(); ++it) {
        const std::string& k = it.key();
        bool known = k == "command" || k == "params";
        for (const char* o : kOverrides) known = known || k == o;
        if (!known) throw ValidationError("job: unknown key '" + k + "'");
    }
    if (!job.contains("command") || !job["command"].is_string()) throw ValidationError("job: 'command' must be a string");
}

} // namespace

JobResult run_job(const Json& job, const RunOptions& options)
{
    WorkerScope workers(options.threads);
    try {
        validate_job_keys(job);
        const Command& command = find_command(job["command"].get<std::string>());
        const Json params = merged_params(command, job);

        const auto start = std::chrono::steady_clock::now();
        CommandOutcome outcome = command.run(Params(params));
        const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;

        JobResult r;
        r.exit_code = outcome.verdict == "pass" ? 0 : 1;
        Json& e = r.output;
        e["command"] = command.name;
        e["params"] = params;
        e["verdict"] = outcome.verdict;
        e["result"] = std::move(outcome.result);
        e["library"] = Json{{"name", "tilinglab"}, {"version", TILINGLAB_VERSION}};
        const nlohmann::json canonical = {{"command", command.name}, {"params", nlohmann::json::parse(params.dump())}};
        e["input_hash"] = fnv1a_hex(canonical.dump());
        if (options.timing) {
            using clock = std::chrono::steady_clock;
            const double resolution = static_cast<double>(clock::period::num) / static_cast<double>(clock::period::den);
            e["timing"] = Json{{"wall_seconds", wall.count()}, {"resolution", resolution}};
        }
        r.summary = std::move(outcome.summary);
        return r;
    } catch (const ValidationError& ex) {
        return error_result(job, "validation", ex.what(), 2);
    } catch (const nlohmann::json::exception& ex) {
        return error_result(job, "validation", ex.what(), 2);
    } catch (const CapacityError& ex) {
        return error_result(job, "capacity", ex.what(), 2);
    } catch (const SingularLatticeError& ex) {
        return error_result(job, "singular_lattice", ex.what(), 2);
    } catch (const PreconditionError& ex) {
        return error_result(job, "precondition", ex.what(), 2);
    } catch (const DomainError& ex) {
        return error_result(job, "domain", ex.what(), 2);
    } catch (const Error& ex) {
        return error_result(job, "library", ex.what(), 2);
    } catch (const std::exception& ex) {
        return error_result(job, "internal", ex.what(), 3);
    }
}

JobResult run_job_text(const std::string& text, const RunOptions& options)
{
    Json job;
    try {
        job = Json::parse(text);
    } catch (const nlohmann::json::parse_error& ex) {
        return error_result(Json(), "validation", ex.what(), 2);
    }
    return run_job(job, options);
}

std::string format_json(const JobResult& r) { return r.output.dump(2) + "\n"; }

std::string summary_line(const JobResult& r)
{
    std::ostringstream os;
    if (r.output.contains("error")) {
        os << "error (exit " << r.exit_code << "): " << r.output["error"]["message"].get<std::string>();
    } else {
        os << r.output["command"].get<std::string>() << ": " << r.output["verdict"].get<std::string>();
        if (!r.summary.empty()) os << "; " << r.summary.front();
    }
    return os.str();
}

std::string format_text(const JobResult& r)
{
    std::ostringstream os;
    if (r.output.contains("error")) {
        os << "error [" << r.output["error"]["type"].get<std::string>() << "] "
           << r.output["error"]["message"].get<std::string>() << "\n";
        return os.str();
    }
    os << r.output["command"].get<std::string>() << ": " << r.output["verdict"].get<std::string>() << "\n";
    for (const std::string& line : r.summary) os << "  " << line << "\n";
    os << "  input " << r.output["input_hash"].get<std::string>() << "\n";
    if (r.output.contains("timing"))
        os << "  wall " << std::setprecision(4) << r.output["timing"]["wall_seconds"].get<double>() << " s\n";
    return os.str();
}

std::string format_markdown(const JobResult& r)
{
    if (r.output.contains("error")) {
        return "**error** (" + r.output["error"]["type"].get<std::string>() + "): " +
               r.output["error"]["message"].get<std::string>() + "\n";
    }
    const Json& result = r.output["result"];
    if (result.is_object() && result.contains("markdown")) return result["markdown"].get<std::string>();
    std::ostringstream os;
    os << "# " << r.output["command"].get<std::string>() << "\n\n";
    os << "- verdict: **" << r.output["verdict"].get<std::string>() << "**\n";
    for (const std::string& line : r.summary) os << "- " << line << "\n";
    os << "\n```json\n" << r.output["params"].dump(2) << "\n```\n";
    return os.str();
}

namespace {

Json job(const std::string& command, Json params)
{
    Json j;
    j["command"] = command;
    j["params"] = std::move(params);
    return j;
}

Json unit_cube(int dim) { return Json{{"kind", "unit_cube"}, {"dim", dim}}; }
Json integer_lattice(int dim) { return Json{{"kind", "integer"}, {"dim", dim}}; }
Json diagonal(Json d) { return Json{{"kind", "diagonal"}, {"diagonal", std::move(d)}}; }

std::vector<CorpusEntry> build_corpus()
{
    using A = Json::array_t;
    std::vector<CorpusEntry> c;
    c.push_back({"notched-2d", job("notched", {{"delta", A{"1/2", "1/3"}}}), "pass"});
    c.push_back({"notched-3d-cycle",
                 job("notched", {{"delta", A{"1/2", "1/3", "1/4"}}, {"cycle", A{2, 0, 1}}, {"radius", "8"}}), "pass"});
    c.push_back({"notched-full-notch", job("notched", {{"delta", A{"1", "1"}}}), "error"});
    c.push_back({"extended-cube-k1", job("extended-cube", {{"gamma", A{"1/2", "1/3"}}, {"k", 1}}), "pass"});
    c.push_back({"extended-cube-k2", job("extended-cube", {{"gamma", A{"1/2", "1/3"}}, {"k", 2}}), "error"});
    c.push_back({"extended-cube-3d-k3", job("extended-cube", {{"gamma", A{"1/2", "1/3", "1/4"}}, {"k", 3}, {"radius", "8"}}),
                 "pass"});
    c.push_back({"cyclic-variants-3d", job("cyclic-variants", {{"delta", A{"1/2", "1/3", "1/5"}}}), "pass"});
    c.push_back({"tiling-square", job("verify-tiling", {{"tile", unit_cube(2)}, {"translations", integer_lattice(2)}}),
                 "pass"});
    c.push_back({"tiling-sparse",
                 job("verify-tiling", {{"tile", unit_cube(2)}, {"translations", diagonal(A{"2", "1"})}}), "fail"});
    c.push_back({"tiling-notched-fourier",
                 job("verify-tiling",
                     {{"tile", Json{{"kind", "box_union"},
                                    {"boxes", A{Json{{"corner", A{"-1/2", "-1/2"}}, {"widths", A{"1/2", "1"}}},
                                                Json{{"corner", A{"0", "-1/2"}}, {"widths", A{"1/2", "2/3"}}}}}}},
                      {"translations", Json{{"basis", A{A{"1", "-1/2"}, A{"-1/3", "1"}}}}},
                      {"method", "fourier"}}),
                 "pass"});
    c.push_back({"tiling-shifted-columns",
                 job("verify-tiling", {{"tile", unit_cube(2)},
                                       {"translations", Json{{"kind", "shifted_columns"},
                                                             {"shifts", Json{{"0", "1/3"}, {"1", "1/2"}}}}}}),
                 "pass"});
    c.push_back({"tiling-hexagon", job("verify-tiling", {{"tile", Json{{"kind", "regular_hexagon"}, {"side", 1.0}}},
                                                         {"translations", Json{{"kind", "hexagonal_lattice"}}},
                                                         {"samples", 512}}),
                 "pass"});
    c.push_back({"tiling-ap-union",
                 job("verify-tiling", {{"tile", Json{{"kind", "intervals"}, {"pieces", A{A{"0", "1/2"}, A{"1", "3/2"}}}}},
                                       {"translations", Json{{"kind", "ap_union"},
                                                             {"progressions", A{Json{{"alpha", "2"}, {"beta", "0"}},
                                                                                Json{{"alpha", "2"}, {"beta", "1/2"}}}}}}}),
                 "pass"});
    c.push_back({"tiling-ap-union-perturbed",
                 job("verify-tiling", {{"tile", Json{{"kind", "intervals"}, {"pieces", A{A{"0", "1/2"}, A{"1", "3/2"}}}}},
                                       {"translations", Json{{"kind", "ap_union"},
                                                             {"progressions", A{Json{{"alpha", "2"}, {"beta", "0"}},
                                                                                Json{{"alpha", "2"}, {"beta", "3/4"}}}}}}}),
                 "fail"});
    c.push_back({"polygon-square-half",
                 job("verify-tiling", {{"tile", Json{{"kind", "polygon"},
                                                     {"vertices", A{A{"0", "0"}, A{"1", "0"}, A{"1", "1"}, A{"0", "1"}}}}},
                                       {"translations", diagonal(A{"1/2", "1"})},
                                       {"samples", 512}}),
                 "fail"});
    c.push_back({"packing-sparse",
                 job("verify-packing", {{"tile", unit_cube(2)}, {"translations", diagonal(A{"2", "1"})}}), "pass"});
    c.push_back({"packing-dense",
                 job("verify-packing", {{"tile", unit_cube(2)}, {"translations", diagonal(A{"1/2", "1"})}}), "fail"});
    c.push_back({"zero-grid-square", job("zero-grid", {{"e", A{"1", "0"}}, {"tau", A{"0", "1"}}}), "pass"});
    c.push_back({"hajos-shear", job("hajos", {{"matrix", A{A{"1", "1/2"}, A{"0", "1"}}}}), "pass"});
    c.push_back({"minkowski-diagonal", job("minkowski", {{"matrix", A{A{"2", "0"}, A{"0", "1/2"}}}}), "pass"});
    c.push_back({"direct-sum-rotated",
                 job("direct-sum-check",
                     {{"lattices", A{integer_lattice(2), Json{{"kind", "rotated_integer"}, {"angle", 0.5}}}},
                      {"bound", 12}}),
                 "pass"});
    c.push_back({"direct-sum-repeated",
                 job("direct-sum-check", {{"lattices", A{integer_lattice(2), integer_lattice(2)}}, {"bound", 4}}), "fail"});
    c.push_back({"three-lattice-default", job("three-lattice-obstruction", Json::object()), "pass"});
    c.push_back({"multitile-rotated",
                 job("multitile-build",
                     {{"lattices", A{integer_lattice(2), Json{{"kind", "rotated_integer"}, {"angle", 0.5}}}},
                      {"iterations", 4},
                      {"grid_exponent", 6},
                      {"direct_sum_bound", 12},
                      {"target_coverage", 0.5}}),
                 "pass"});
    c.push_back({"multitile-obstructed",
                 job("multitile-build",
                     {{"lattices", A{diagonal(A{"2", "1"}), diagonal(A{"1", "2"}),
                                     Json{{"basis", A{A{"1", "1"}, A{"1", "-1"}}}}}}}),
                 "fail"});
    c.push_back({"soft-tile-pair",
                 job("soft-tile", {{"domains", A{unit_cube(2), Json{{"kind", "box_union"},
                                                                   {"boxes", A{Json{{"corner", A{"0", "0"}},
                                                                                    {"widths", A{"1/2", "2"}}}}}}}},
                                   {"h", "1/2"},
                                   {"lattice", integer_lattice(2)}}),
                 "pass"});
    c.push_back({"steinhaus-3d", job("steinhaus-certify", Json::object()), "pass"});
    c.push_back({"steinhaus-4d", job("steinhaus-certify", {{"form", "paper4d"}, {"range", 6}}), "pass"});
    c.push_back({"steinhaus-identity",
                 job("steinhaus-certify", {{"form", A{A{1, 0, 0}, A{0, 1, 0}, A{0, 0, 1}}}, {"range", 10}}), "fail"});
    c.push_back({"steinhaus-search-small", job("steinhaus-search", {{"bound", 11}, {"range", 10}}), "pass"});
    c.push_back({"steinhaus-search-plane", job("steinhaus-search", {{"dimension", 2}, {"bound", 8}, {"range", 12}}),
                 "pass"});
    c.push_back({"steinhaus-radii", job("steinhaus-radii", Json::object()), "pass"});
    c.push_back({"cube-spectrum-square", job("cube-spectrum", {{"translations", integer_lattice(2)}}), "pass"});
    c.push_back({"cube-spectrum-columns",
                 job("cube-spectrum", {{"translations", Json{{"kind", "shifted_columns"},
                                                             {"shifts", Json{{"0", "1/3"}, {"1", "1/2"}}}}}}),
                 "pass"});
    c.push_back({"lattice-spectrum-slab",
                 job("lattice-spectrum",
                     {{"domain", A{Json{{"corner", A{"0", "0"}}, {"widths", A{"1/2", "2"}}}}},
                      {"lattice", diagonal(A{"1/2", "2"})}}),
                 "pass"});
    c.push_back({"packing-transfer-fejer",
                 job("packing-transfer", {{"f", unit_cube(1)}, {"g", Json{{"kind", "fejer"}}},
                                          {"translations", integer_lattice(1)}}),
                 "pass"});
    c.push_back({"packing-transfer-dense",
                 job("packing-transfer", {{"f", unit_cube(1)}, {"g", Json{{"kind", "fejer"}}},
                                          {"translations", diagonal(A{"1/2"})}, {"samples", 64}}),
                 "inapplicable"});
    c.push_back({"rigid-motion", job("rigid-motion-demo", {{"exponent", 6}}), "pass"});
    c.push_back({"gabor-unit", job("gabor-check", {{"k", integer_lattice(1)}, {"l", integer_lattice(1)},
                                                   {"e", unit_cube(1)}}),
                 "pass"});
    c.push_back({"disk", job("disk-certificate", Json::object()), "pass"});
    c.push_back({"report", job("report", Json::object()), "pass"});
    c.push_back({"unknown-command", job("tile-everything", Json::object()), "error"});
    c.push_back({"unknown-param", job("disk-certificate", {{"radius", 2}}), "error"});
    c.push_back({"missing-required", job("notched", Json::object()), "error"});
    return c;
}

} // namespace

const std::vector<CorpusEntry>& corpus()
{
    static const std::vector<CorpusEntry> entries = build_corpus();
    return entries;
}

Json CorpusRun::to_json() const
{
    Json rows_json = Json::array();
    for (const CorpusRow& row : rows) {
        Json j;
        j["name"] = row.name;
        j["expected"] = row.expected;
        j["actual"] = row.actual;
        j["exit_code"] = row.exit_code;
        j["matches"] = row.matches;
        j["output"] = row.output;
        rows_json.push_back(j);
    }
    Json out;
    out["entries"] = rows_json;
    out["all_match"] = all_match;
    return out;
}

std::string CorpusRun::table() const
{
    std::ostringstream os;
    os << std::left << std::setw(28) << "entry" << std::setw(14) << "expected" << std::setw(14) << "actual"
       << "exit  result\n";
    for (const CorpusRow& row : rows) {
        os << std::left << std::setw(28) << row.name << std::setw(14) << row.expected << std::setw(14) << row.actual
           << std::setw(6) << row.exit_code << (row.matches ? "PASS" : "FAIL") << "\n";
    }
    std::size_t matched = 0;
    for (const CorpusRow& row : rows) matched += row.matches ? 1 : 0;
    os << matched << "/" << rows.size() << " entries match\n";
    return os.str();
}

CorpusRun run_corpus(const RunOptions& options)
{
    CorpusRun run;
    for (const CorpusEntry& entry : corpus()) {
        const JobResult r = run_job(entry.job, options);
        CorpusRow row;
        row.name = entry.name;
        row.expected = entry.expected;
        row.exit_code = r.exit_code;
        row.actual = r.output.contains("error") ? "error" : r.output["verdict"].get<std::string>();
        row.matches = row.actual == entry.expected;
        row.output = r.output;
        run.all_match = run.all_match && row.matches;
        run.rows.push_back(std::move(row));
    }
    return run;
}

} // namespace tilinglab::cli
