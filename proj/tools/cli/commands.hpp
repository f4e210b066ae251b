#pragma once

#include "cli/json_io.hpp"

#include <functional>
#include <string>
#include <vector>

namespace tilinglab::cli {

struct CommandOutcome {
    /// "pass", "fail" or "inapplicable".
    std::string verdict;
    Json result;
    /// Human-readable lines for the text and markdown formats.
    std::vector<std::string> summary;
};

struct Command {
    std::string name;
    std::string description;
    /// Every accepted key in output order, with its default. Keys listed in required have no default.
    Json defaults;
    std::vector<std::string> required;
    std::function<CommandOutcome(const Params&)> run;
};

const std::vector<Command>& commands();
/// ValidationError for unknown names.
const Command& find_command(const std::string& name);

/// Defaults overlaid with the given keys, in the order of the defaults. Unknown or missing
/// required keys raise ValidationError.
Json resolve_params(const Command& command, const Json& given);

} // namespace tilinglab::cli
