#include "cli/runner.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace tilinglab::cli;

namespace {

struct Overrides {
    std::optional<double> tol;
    std::optional<long> seed;
    std::optional<std::string> radius;
    std::optional<std::string> window;
    std::optional<long> grid_exponent;
};

void add_overrides(CLI::App* app, Overrides& o)
{
    app->add_option("--tol", o.tol, "numerical tolerance");
    app->add_option("--seed", o.seed, "sampling seed");
    app->add_option("--radius", o.radius, "search or dual radius");
    app->add_option("--window", o.window, "half width of the sampling window");
    app->add_option("--grid-exponent", o.grid_exponent, "grid side 2^-g");
}

/// Numeric overrides take the JSON type of the command default where one exists.
Json typed_override(const Json& job, const std::string& key, const std::string& text)
{
    const Json* def = nullptr;
    if (job.contains("command") && job["command"].is_string()) {
        for (const Command& c : commands())
            if (c.name == job["command"].get<std::string>() && c.defaults.contains(key)) def = &c.defaults[key];
    }
    try {
        if (def != nullptr && def->is_number_float()) return std::stod(text);
        if (def != nullptr && def->is_number_integer()) return std::stol(text);
    } catch (const std::exception&) {
        throw ValidationError("--" + key + ": expected a number, got '" + text + "'");
    }
    return text;
}

void apply_overrides(Json& job, const Overrides& o)
{
    if (!job.is_object()) return;
    if (o.tol) job["tol"] = *o.tol;
    if (o.seed) job["seed"] = *o.seed;
    if (o.radius) job["radius"] = typed_override(job, "radius", *o.radius);
    if (o.window) job["window"] = typed_override(job, "window", *o.window);
    if (o.grid_exponent) job["grid_exponent"] = *o.grid_exponent;
}

std::string read_input(const std::string& file)
{
    if (file.empty() || file == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    }
    std::ifstream in(file);
    if (!in) throw ValidationError("cannot read " + file);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int emit(const JobResult& r, const std::string& format)
{
    if (r.output.contains("error")) {
        std::cerr << r.output.dump() << "\n";
    } else if (format == "text") {
        std::cout << format_text(r);
    } else if (format == "markdown") {
        std::cout << format_markdown(r);
    } else {
        std::cout << format_json(r);
    }
    std::cerr << summary_line(r) << "\n";
    return r.exit_code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact and numerical certificates for translational tilings and spectra", "tilinglab"};
    app.set_version_flag("--version", TILINGLAB_VERSION);

    std::string format = "json";
    std::optional<std::size_t> threads;
    bool timing = false;
    bool run_builtin_corpus = false;
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text", "markdown"}));
    app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 1024));
    app.add_flag("--timing", timing, "add wall-clock timing to the envelope");
    app.add_flag("--corpus", run_builtin_corpus, "run the built-in corpus and print a pass/fail table");

    Overrides overrides;
    std::string job_file = "-";
    CLI::App* run = app.add_subcommand("run", "run a JSON job from a file or stdin");
    run->add_option("file", job_file, "job file, or - for stdin");
    run->fallthrough();
    add_overrides(run, overrides);

    app.add_subcommand("list", "list the commands with their defaults");

    std::string params_text = "{}";
    for (const Command& c : commands()) {
        CLI::App* sub = app.add_subcommand(c.name, c.description);
        sub->add_option("-p,--params", params_text, "params as a JSON object");
        sub->fallthrough();
        add_overrides(sub, overrides);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const RunOptions options{threads, timing};

    if (run_builtin_corpus) {
        const CorpusRun result = run_corpus(options);
        if (format == "json") {
            std::cout << result.to_json().dump(2) << "\n";
            std::cerr << result.table();
        } else {
            std::cout << result.table();
        }
        return result.all_match ? 0 : 1;
    }

    if (app.got_subcommand("list")) {
        for (const Command& c : commands()) {
            std::cout << c.name << "  " << c.description << "\n    " << c.defaults.dump() << "\n";
        }
        return 0;
    }

    try {
        Json job;
        if (app.got_subcommand("run")) {
            try {
                job = Json::parse(read_input(job_file));
            } catch (const nlohmann::json::parse_error& e) {
                throw ValidationError(std::string("job: ") + e.what());
            }
        } else {
            const auto subs = app.get_subcommands();
            if (subs.empty()) {
                std::cout << app.help();
                return 2;
            }
            job["command"] = subs.front()->get_name();
            try {
                job["params"] = Json::parse(params_text);
            } catch (const nlohmann::json::parse_error& e) {
                throw ValidationError(std::string("--params: ") + e.what());
            }
        }
        apply_overrides(job, overrides);
        return emit(run_job(job, options), format);
    } catch (const ValidationError& e) {
        Json err;
        err["error"] = Json{{"type", "validation"}, {"message", e.what()}};
        err["command"] = nullptr;
        err["exit_code"] = 2;
        std::cerr << err.dump() << "\n";
        return 2;
    }
}
