#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace slag::cli {

/// Keys are kept in std::map order, so dumps are sorted and reproducible.
using Json = nlohmann::json;

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitUsage = 2;

enum class Format { Json, Csv };

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Json>> rows;
};

struct CommandResult {
    Json report = Json::object();
    Table table;  // empty unless the command produces a table
    int exitCode = kExitPass;
};

/// git-describe-style version fixed at configure time.
std::string version_string();

/// Every tolerance a command may compare against, by name.
Json tolerance_set();

/// Adds version and tolerances, and records the pass flag.
void finalize_report(CommandResult& result, const std::string& command);

/// JSON: the report. CSV: the table, or key,value rows of the flattened report.
std::string render(const CommandResult& result, Format format);

Format parse_format(const std::string& s);

}  // namespace slag::cli
