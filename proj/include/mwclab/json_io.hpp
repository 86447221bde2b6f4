// SPDX-License-Identifier: Apache-2.0
//
// JSON forms of the result records. Field names are part of the artifact
// schema; tests parse them back.
#pragma once

#include "mwclab/guarantees.hpp"
#include "mwclab/harness.hpp"
#include "mwclab/matrixlab.hpp"
#include "mwclab/mc_oracle.hpp"
#include "mwclab/mmv_recovery.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace mwclab {

using Json = nlohmann::ordered_json;

void to_json(Json& j, const QualityReport& r);
void to_json(Json& j, const BoundsCheck& r);
void to_json(Json& j, const MomentConstants& r);
void to_json(Json& j, const GuaranteeResult& r);
void to_json(Json& j, const CoherenceGuarantees& r);
void to_json(Json& j, const RipRequirement& r);
void to_json(Json& j, const SearchResult& r);
void to_json(Json& j, const ExripEstimate& r);
void to_json(Json& j, const ValidityReport& r);
void to_json(Json& j, const RecoveryReport& r);
void to_json(Json& j, const FamilySpec& r);

/// Everything needed to rerun a CLI invocation. Wall time makes it vary
/// between runs, so it is written separately from the artifacts.
struct RunRecord {
    std::vector<std::string> command;
    std::string preset;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    Json outputs = Json::object();
    double wall_time_s = 0.0;
};

void to_json(Json& j, const RunRecord& r);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

} // namespace mwclab
