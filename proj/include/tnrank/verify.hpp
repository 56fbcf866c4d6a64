#pragma once

#include <string>
#include <vector>

#include "tnrank/io.hpp"

namespace tnrank {

enum class ClaimStatus { pass, fail, finding, error };
std::string_view to_string(ClaimStatus s);

struct ClaimInfo {
    std::string id;
    std::string group;
    /// Findings are reported but never affect the exit status.
    bool gated = true;
};

struct ClaimResult {
    ClaimInfo info;
    ClaimStatus status = ClaimStatus::error;
    Json expected = Json::object();
    Json computed = Json::object();
    std::string note;
};

/// Every claim, sorted by id.
std::vector<ClaimInfo> list_claims();

/// Runs the claims selected by a comma-separated list of groups and ids
/// ("" or "all" selects everything). Results are sorted by id. Throws
/// std::invalid_argument if a token matches nothing.
std::vector<ClaimResult> run_claims(const std::string& filter = "", std::size_t threads = 0);

/// {"id", "group", "gated", "status", "expected", "computed", "note"}.
Json claim_to_json(const ClaimResult& r);

/// True iff no gated claim failed or errored.
bool gated_claims_pass(const std::vector<ClaimResult>& results);

}  // namespace tnrank
