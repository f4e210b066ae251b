#pragma once

#include "cli/commands.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tilinglab::cli {

struct RunOptions {
    /// Worker override for the duration of the run; empty leaves the current setting.
    std::optional<std::size_t> threads;
    bool timing = false;
};

/// Exit codes: 0 pass, 1 fail or inapplicable, 2 invalid input or library error, 3 internal error.
struct JobResult {
    int exit_code = 0;
    /// Envelope on success, error object otherwise.
    Json output;
    std::vector<std::string> summary;
    bool ok() const { return exit_code <= 1; }
};

/// JobSpec: {command, params, and optional top-level tol, radius, window, seed, grid_exponent}.
JobResult run_job(const Json& job, const RunOptions& options = {});
/// Parses text as JSON first; syntax errors become exit code 2.
JobResult run_job_text(const std::string& text, const RunOptions& options = {});

std::string format_json(const JobResult& r);
std::string format_text(const JobResult& r);
std::string format_markdown(const JobResult& r);
/// One line for stderr.
std::string summary_line(const JobResult& r);

struct CorpusEntry {
    std::string name;
    Json job;
    /// "pass", "fail", "inapplicable" or "error".
    std::string expected;
};

const std::vector<CorpusEntry>& corpus();

struct CorpusRow {
    std::string name;
    std::string expected;
    std::string actual;
    int exit_code = 0;
    bool matches = false;
    Json output;
};

struct CorpusRun {
    std::vector<CorpusRow> rows;
    bool all_match = true;
    Json to_json() const;
    std::string table() const;
};

CorpusRun run_corpus(const RunOptions& options = {});

} // namespace tilinglab::cli
