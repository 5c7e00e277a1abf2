#include "slag_cli/report.hpp"

#include <sstream>
#include <stdexcept>

#ifndef SLAG_VERSION_STRING
#define SLAG_VERSION_STRING "unknown"
#endif

namespace slag::cli {

std::string version_string() { return SLAG_VERSION_STRING; }

Json tolerance_set() {
    return Json{
        {"angleSum", 1e-8},
        {"slResidual", 1e-8},
        {"lawlorInvariant", 1e-8},
        {"jltInvariant", 1e-7},
        {"expanderResidual", 1e-7},
        {"inversion", 1e-6},
        {"maslovInteger", 1e-6},
        {"odeOverlap", 1e-8},
        {"odeBoundSlack", 1e-9},
        {"taylorC1", 1e-12},
        {"modeResidual", 1e-6},
        {"inversionTransform", 1e-6},
        {"chartRoundTrip", 1e-12},
        {"liouvilleExteriorDerivative", 1e-6},
        {"limitContinuity", 1e-2},
    };
}

void finalize_report(CommandResult& result, const std::string& command) {
    result.report["command"] = command;
    result.report["version"] = version_string();
    result.report["tolerances"] = tolerance_set();
    result.report["pass"] = result.exitCode == kExitPass;
}

namespace {

std::string csvField(const Json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

}  // namespace

std::string render(const CommandResult& result, Format format) {
    if (format == Format::Json) return result.report.dump(2) + "\n";
    std::ostringstream out;
    if (!result.table.header.empty()) {
        for (std::size_t i = 0; i < result.table.header.size(); ++i)
            out << (i ? "," : "") << csvField(result.table.header[i]);
        out << "\n";
        for (const auto& row : result.table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csvField(row[i]);
            out << "\n";
        }
        return out.str();
    }
    out << "key,value\n";
    const Json flat = result.report.flatten();
    for (const auto& [key, value] : flat.items()) out << csvField(key) << "," << csvField(value) << "\n";
    return out.str();
}

Format parse_format(const std::string& s) {
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    throw std::invalid_argument("unknown format '" + s + "' (expected json or csv)");
}

}  // namespace slag::cli
