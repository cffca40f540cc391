// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "iodir/channels.hpp"
#include "iodir/game.hpp"
#include "iodir/sdp.hpp"
#include "iodir/supermaps.hpp"
#include "iodir/witness.hpp"

namespace iodir::io {

using Json = nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& p);
// Writes to a sibling temporary file, then renames over the target.
void write_file_atomic(const std::filesystem::path& p, const std::string& content);

// 10 significant digits.
std::string format_number(double x);

// {"re": [[..]], "im": [[..]]}, row-major.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// {"labels": [..], "dims": [..], "re": [[..]], "im": [[..]]}
Json operator_to_json(const HermitianOperator& op);
HermitianOperator operator_from_json(const Json& j);

// Operator fields plus "roles": {label: "slot-input" | "slot-output" | "global-input" | "global-output"}.
Json setup_to_json(const SetupOperator& s);
SetupOperator setup_from_json(const Json& j);

// {"in_dim": n, "out_dim": m, "kraus": [{"re", "im"}, ..]}
Json channel_to_json(const KrausMap& k);
KrausMap channel_from_json(const Json& j);

// [{"name", "u": {"re","im"}, "v": {...}, "tag": "PLUS"|"MINUS", "weight"?}, ..].
// Missing weights mean a uniform measure.
Json pairs_to_json(const std::vector<WeightedPair>& pairs);
std::vector<WeightedPair> pairs_from_json(const Json& j);

// Operator fields plus optional "certificate": {"w0", "w1", "w2", "w3"} (operator objects).
Json witness_to_json(const Witness& w);
Witness witness_from_json(const Json& j);

Json solve_report_to_json(const sdp::SolveReport& r, bool include_matrices = false);

// CSV a,b,c,d,e,coeff (restricted: b,c,e,coeff); zero rows omitted.
std::string decomposition_to_csv(const Decomposition& d);
Decomposition decomposition_from_csv(const std::string& text);

// CSV a,b,c,d,e,probability[,counts,shots]. d = -1 marks a traced B_ot.
// Rows carrying counts and shots are read as counts/shots.
std::string probabilities_to_csv(const std::vector<ProbabilityRecord>& probs);
std::vector<ProbabilityRecord> probabilities_from_csv(const std::string& text);

}  // namespace iodir::io
