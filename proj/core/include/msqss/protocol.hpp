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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "msqss/attack_spec.hpp"
#include "msqss/checks.hpp"
#include "msqss/efficiency.hpp"
#include "msqss/quantum.hpp"
#include "msqss/rng.hpp"
#include "msqss/sequence.hpp"

namespace msqss {

struct ProtocolConfig {
  int secret_length = 16;   // L
  int num_bobs = 3;         // M
  Rational epsilon{1, 8};   // per-participant sampling fraction
  std::uint64_t seed = 1;
  CheckConfig checks;

  // Length of the prepared sequence: floor(4 L (1 + M epsilon)).
  int sequence_length() const;

  // Qubits each participant measures and removes: floor(4 L epsilon).
  int bob_sample_size() const;

  void validate() const;

  ProtocolConfig with_seed(std::uint64_t s) const {
    ProtocolConfig c = *this;
    c.seed = s;
    return c;
  }
};

// Every random choice a party makes during a run flows through this
// interface, keyed by party, so a scripted source can pin any subset of them
// while the rest fall back to seeded streams.  Positions are 1-based within
// the sequence the acting party currently holds.
class DecisionSource {
 public:
  virtual ~DecisionSource() = default;

  virtual std::vector<int> sift_positions(int n, int count) = 0;
  virtual Permutation alice_permutation(int n) = 0;
  virtual std::vector<int> bob_positions(int bob, int n, int count) = 0;
  virtual Permutation bob_permutation(int bob, int n) = 0;
  virtual Basis tp_basis(int final_position) = 0;

  // Picks `count` test positions out of the dealer-sequence candidates.
  virtual std::vector<int> test_positions(const std::vector<int>& candidates,
                                          int count) = 0;

  // A pinned measurement outcome for (party, position in that party's
  // current sequence), or nullopt to sample the Born rule.
  virtual std::optional<int> forced_outcome(const std::string& party,
                                            int position) = 0;

  // Persistent Born-rule stream for a party.
  virtual RngStream& born(const std::string& party) = 0;

  virtual bool scripted() const { return false; }
};

// Default source: every choice drawn from a stream derived from the run seed
// and a purpose label, so distinct choices never share draws.
class SeededDecisions : public DecisionSource {
 public:
  explicit SeededDecisions(const RngStream& root);

  std::vector<int> sift_positions(int n, int count) override;
  Permutation alice_permutation(int n) override;
  std::vector<int> bob_positions(int bob, int n, int count) override;
  Permutation bob_permutation(int bob, int n) override;
  Basis tp_basis(int final_position) override;
  std::vector<int> test_positions(const std::vector<int>& candidates,
                                  int count) override;
  std::optional<int> forced_outcome(const std::string& party,
                                    int position) override;
  RngStream& born(const std::string& party) override;

 private:
  RngStream& stream(const std::string& label);

  RngStream root_;
  std::map<std::string, RngStream> streams_;
};

// Fixed choices for a replayable worked run.  Unset fields fall back to the
// seeded source.  Forced outcomes collapse the state onto the requested
// branch and reject branches of probability zero.
struct RunScript {
  std::optional<std::vector<int>> sift_positions;
  std::optional<Permutation> alice_perm;
  std::map<int, std::vector<int>> bob_positions;  // bob index -> positions
  std::map<int, Permutation> bob_perms;
  std::optional<std::set<int>> tp_x_positions;  // X-basis final positions
  std::map<std::pair<std::string, int>, int> forced;
  std::optional<std::vector<int>> test_positions;
};

class ScriptedDecisions : public DecisionSource {
 public:
  ScriptedDecisions(RunScript script, const RngStream& root);

  std::vector<int> sift_positions(int n, int count) override;
  Permutation alice_permutation(int n) override;
  std::vector<int> bob_positions(int bob, int n, int count) override;
  Permutation bob_permutation(int bob, int n) override;
  Basis tp_basis(int final_position) override;
  std::vector<int> test_positions(const std::vector<int>& candidates,
                                  int count) override;
  std::optional<int> forced_outcome(const std::string& party,
                                    int position) override;
  RngStream& born(const std::string& party) override;
  bool scripted() const override { return true; }

 private:
  RunScript script_;
  SeededDecisions fallback_;
};

// The dealer's private record.
struct AliceRecord {
  std::vector<int> sift_positions;  // sorted, in the dealt sequence
  std::map<int, int> outcomes;      // dealt position -> measured bit
  std::optional<Permutation> perm;
};

// One participant's record; `announced` is what verification consumes and
// differs from `real` only for a participant faking their order.
struct BobRecord {
  HopRecord real;
  HopRecord announced;
};

struct TpRecord {
  std::vector<Basis> bases;  // by final position
  std::vector<int> outcomes;
};

// One line of the public log.  Payload fields not used by a given type stay
// empty.
struct Announcement {
  std::string step;    // "step04" .. "step08"
  std::string sender;  // "tp", "alice", "bob1", ...
  std::string type;
  std::vector<int> positions;
  std::vector<std::pair<int, int>> pairs;
  std::string bits;
};

// Per-run data kept for tests and analysis that no party could announce.
struct OracleExtras {
  // origin: dealt position of each qubit of the final sequence, 0 for a
  // substituted carrier.  kinds parallel the origins.
  std::vector<int> final_origins;
  std::vector<QubitKind> final_kinds;

  // Dealt position and symbol of every item right after each reordering,
  // for replay verification.  Key: "alice", "bob1", ...
  std::map<std::string, std::vector<std::pair<int, char>>> snapshots;

  // Per participant, dealt positions of the qubits they measured away
  // (traced through the real records).
  std::vector<std::vector<int>> bob_measured_origins;

  // Probe remainder after the third party's measurement, by final position.
  std::vector<std::optional<PureState>> probe_remainders;

  // Order-inference outcomes of an intercepting third party, per hop:
  // whether the guessed (discards, order) matched the participant's real one.
  std::vector<bool> intercept_order_exact;
};

struct Transcript {
  ProtocolConfig config;
  std::string attack;     // AttackSpec label
  std::string decisions;  // "seeded" or "scripted"
  std::string secret;

  AliceRecord alice;
  std::vector<BobRecord> bobs;
  TpRecord tp;

  std::vector<Announcement> announcements;
  std::vector<CheckReport> checks;

  std::vector<int> test_bit_positions;  // dealt positions, sorted
  std::optional<std::string> key;
  std::optional<std::string> ciphertext;
  std::optional<std::string> abort_reason;

  OracleExtras oracle;

  bool aborted() const { return abort_reason.has_value(); }
};

// Abort classification: checks fire on adversarial interference, while a
// run can also end because too few key qubits survived sampling.
inline constexpr const char* kInsufficientKey = "insufficient-key";
bool is_security_abort(const std::string& reason);

struct RunOptions {
  std::optional<std::string> secret;  // L bits; derived from seed if unset
  DecisionSource* decisions = nullptr;
  bool capture_snapshots = false;
};

Transcript run_protocol(const ProtocolConfig& config, const AttackSpec& attack,
                        const RunOptions& options = {});

struct RetriedRun {
  Transcript transcript;
  int attempts = 1;
};

// Re-runs with derived seeds while the only failure is a short key.  Security
// aborts are returned as-is.
RetriedRun run_protocol_with_retry(const ProtocolConfig& config,
                                   const AttackSpec& attack,
                                   int max_attempts = 64,
                                   const RunOptions& options = {});

std::string random_bits(int count, RngStream& rng);

}  // namespace msqss
