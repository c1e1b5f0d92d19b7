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

#include <optional>
#include <string>
#include <vector>

#include "msqss/checks.hpp"
#include "msqss/protocol.hpp"

namespace msqss {

// Position-translation helpers over the participants' announced records.

// Maps a final-sequence position back to the dealt sequence.
int announced_trace_to_alice(const Transcript& t, int final_position);

// Maps the position a participant measured (in the sequence they received)
// back to the dealt sequence.  `bob` is 1-based; the position is translated
// through participants 1..bob-1.
int announced_trace_measured_to_alice(const Transcript& t, int bob,
                                      int position);

// Maps a dealt-sequence position forward to the final sequence, or nullopt
// if some participant measured that qubit away.
std::optional<int> announced_trace_to_final(const Transcript& t,
                                            int dealt_position);

// Final positions the dealer left unmeasured, per the announced records.
std::vector<int> announced_ctrl_final_positions(const Transcript& t);

// Splits the final sequence by basis and dealer treatment.
std::vector<CaseLabel> classify_cases(const Transcript& t);

// Dealt positions of the dealer's measured qubits that survived to a
// Z-measured final position: the key candidate pool, sorted.
std::vector<int> key_candidates(const Transcript& t);

// Step 05: every disclosed measurement must trace to a matching dealer
// record; untouched qubits must look unbiased.
CheckReport eavesdropping_check(const Transcript& t, const CheckConfig& cfg);

// Step 06: X-measured untouched qubits must all read '+', the other
// non-key cases must look unbiased, and the disclosed test bits must match
// the dealer's record.
CheckReport honesty_check(const Transcript& t, const CheckConfig& cfg);

// Key bits at the non-test candidates, ordered by dealt position, truncated
// to the secret length.  Nullopt when fewer than secret_length bits remain.
std::optional<std::string> extract_key(const Transcript& t);

std::string xor_bits(const std::string& a, const std::string& b);

// Participant-side reconstruction from the public log alone: rebuilds the
// key from the disclosed order pairs, shared records, and the third party's
// outcomes, then decrypts the announced ciphertext.
std::optional<std::string> reconstruct_secret(const Transcript& t);

// Same reconstruction but with caller-supplied per-participant translation
// tables (incoming position -> outgoing position, 0 when removed), as used
// when some orders are guessed rather than shared.
std::optional<std::string> reconstruct_secret_with_tables(
    const Transcript& t,
    const std::vector<std::vector<int>>& tables);

// Scans announcements preceding the ciphertext release for anything that
// would expose key material: dealer-sent outcome bits, or order pairs for
// undisclosed key qubits.  Returns the offending descriptions, empty when
// clean.
std::vector<std::string> scan_log_for_key_leaks(const Transcript& t);

}  // namespace msqss
