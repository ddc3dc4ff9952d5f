#pragma once

// Command-line surface and the JSON wire format. Pattern documents carry
// either an explicit entry list or a character grid; lattice documents carry
// a universe and generator subsets. Reports serialize deterministically
// except for the timing block.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "bimod/csl.hpp"
#include "bimod/pattern_core.hpp"
#include "bimod/verify.hpp"

namespace bimod {

Pattern parse_pattern_document(const nlohmann::json& doc);
CslInput parse_csl_document(const nlohmann::json& doc);
bool is_csl_document(const nlohmann::json& doc);

nlohmann::json to_json(const IndexSet& s);
nlohmann::json to_json(const Pattern& p);
nlohmann::json to_json(const ProjectionFamily& f);
nlohmann::json to_json(const Partition& part);
nlohmann::json to_json(const BimoduleAnalysis& a);
nlohmann::json to_json(const CslAnalysis& a);
nlohmann::json to_json(const VerifierReport& r);
nlohmann::json to_json(const FuzzSummary& s);

// Dispatches analyze / verify / csl / random. Returns the process exit code:
// 0 success or all verifiers passed, 1 invariant violation or verifier
// failure, 2 malformed input or flags.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace bimod
