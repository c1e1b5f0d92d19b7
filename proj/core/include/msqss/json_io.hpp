// Copyright 2026 The msqss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "msqss/adversary.hpp"
#include "msqss/efficiency.hpp"
#include "msqss/protocol.hpp"

namespace msqss {

using ordered_json = nlohmann::ordered_json;

ordered_json config_to_json(const ProtocolConfig& config);
ProtocolConfig config_from_json(const ordered_json& j);

// Full run record: configuration, per-party records, the public log, check
// reports, and the outcome.  Exact values only; ratios appear as "p/q"
// strings so the output is identical across platforms.
ordered_json transcript_to_json(const Transcript& t);

// Columns: attack,params,L,M,epsilon,trials,detected,rate,lo,hi,predicted.
// Rates carry six decimals; predicted is empty when no closed form exists.
std::string detection_csv(const std::vector<DetectionStats>& rows);

// Columns: protocol,M,epsilon,eta with eta in decimal form.
std::string efficiency_csv(const std::vector<SharingScheme>& schemes,
                           int participants_lo, int participants_hi,
                           const std::vector<Rational>& epsilons);

// Reproducibility record written next to an output: the invoked command,
// the exact configuration, the seed, and the SHA-256 of the output bytes.
ordered_json manifest_json(const std::string& command,
                           const ordered_json& config, std::uint64_t seed,
                           const std::string& output_sha256);

// Canonical serialization: two-space indent and a trailing newline.
std::string dump_json(const ordered_json& j);

}  // namespace msqss
