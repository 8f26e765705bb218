#pragma once

// JSON file formats. Complex entries are [re, im] pairs (plain numbers are
// accepted as real entries). Schema errors carry the JSON pointer of the
// offending value.

#include <string>

#include <json.hpp>

#include "avqc/catalog.hpp"
#include "avqc/channels.hpp"
#include "avqc/coding.hpp"

namespace avqc {

using Json = nlohmann::json;

Json load_json_file(const std::string& path);

ComplexMatrix matrix_from_json(const Json& j, const std::string& pointer);
Json matrix_to_json(const ComplexMatrix& m);

// {"dim_in": k, "dim_out": m, "kraus": [matrix, ...]}
KrausChannel channel_from_json(const Json& j, const std::string& pointer = "");
Json channel_to_json(const KrausChannel& ch);

// {"theta": [labels], "channels": {label: channel}}
AVQCFamily family_from_json(const Json& j, const std::string& pointer = "");
Json family_to_json(const AVQCFamily& fam);

// {"alphabet": [labels], "states": {label: matrix}, "prior": [...]}
CQSource source_from_json(const Json& j, const std::string& pointer = "");
Json source_to_json(const CQSource& src);

// {"n": n, "encoder": [[...]], "decoder": [matrix, ...]}
BlockCode code_from_json(const Json& j, const std::string& pointer = "");
Json code_to_json(const BlockCode& code);

Json report_to_json(const VerificationReport& report);

}  // namespace avqc
