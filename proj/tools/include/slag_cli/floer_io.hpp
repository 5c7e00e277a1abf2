#pragma once

#include <optional>
#include <vector>

#include "slag/floer.hpp"
#include "slag_cli/report.hpp"

namespace slag::cli {

/// {"generators":[{"id","degree","fL","fLp","tag"?}],"differential":[["p","q"]],"m"?,"slPair"?}
/// tag is "ordinary" (default), "infinity0" or "infinityPhi".
struct FloerDocument {
    std::vector<Generator> generators;
    StripCounts counts;
    std::optional<int> m;
    bool slPair = false;
};

/// Throws std::invalid_argument on schema violations.
FloerDocument parse_floer_document(const Json& doc);
Json floer_document_to_json(const FloerDocument& doc);

std::string tag_name(GeneratorTag tag);
GeneratorTag parse_tag(const std::string& s);

}  // namespace slag::cli
