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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msqss/protocol.hpp"
#include "msqss/verification.hpp"

namespace msqss {

struct WilsonInterval {
  double lo = 0.0;
  double hi = 0.0;
};

// Wilson score interval for a binomial proportion, z defaulting to the
// two-sided 95% quantile.
WilsonInterval wilson_interval(int successes, int trials, double z = 1.96);

struct DetectionStats {
  std::string attack;
  std::string params;
  int secret_length = 0;
  int num_bobs = 0;
  Rational epsilon{0};
  int trials = 0;
  int detected = 0;  // runs ending in a security abort
  double rate = 0.0;
  WilsonInterval interval;

  // Closed-form per-trial detection probability when the literature states
  // one for this attack.
  std::optional<double> predicted;

  // Per-run analytic accumulator: the detection probability of each run
  // given its sampled structure, summed over runs, with the binomial spread
  // of that sum.  Zero when no model applies.
  bool has_model = false;
  double model_expected = 0.0;
  double model_stddev = 0.0;

  std::map<std::string, int> detected_by_stage;
  int insufficient = 0;  // runs that only ran out of key material
};

// Runs `trials` protocol executions under the attack, with per-trial seeds
// derived from the base seed, and tallies aborts.
DetectionStats run_detection_experiment(const ProtocolConfig& base,
                                        const AttackSpec& attack, int trials);

// Event probabilities of the entangling attack, computed from the couplings
// and probe overlaps alone.
struct EntangleEventProbabilities {
  double sift_mismatch = 0.0;   // per participant-measured replaced qubit
  double xctrl_minus = 0.0;     // per untouched qubit read in X
  double test_flip_zero = 0.0;  // per test bit the dealer recorded as 0
  double test_flip_one = 0.0;   // per test bit the dealer recorded as 1
};

EntangleEventProbabilities entangle_event_probabilities(
    const EntangleParams& params);

// Detection probability of one run given its sampled structure.
double entangle_run_detection_probability(const EntangleEventProbabilities& p,
                                          int sift_tested, int xctrl_count,
                                          int test_zero_count,
                                          int test_one_count);

// Plug-in mutual information, in bits, between the dealer's key bits and a
// measurement of the probes the attacker kept, estimated over `trials` runs.
double probe_key_information(const ProtocolConfig& base,
                             const EntangleParams& params, int trials);

struct CollusionOutcome {
  DetectionStats stats;
  // Order-sharing strategy: how often uniform guessing reproduced every
  // honest participant's order, and how often the guessed orders decrypted
  // the secret.
  int exact_order_guesses = 0;
  double exact_rate = 0.0;
  WilsonInterval exact_interval;
  int completed = 0;
  int recovered = 0;
  double recovery_rate = 0.0;
};

CollusionOutcome collusion_experiment(const ProtocolConfig& base,
                                      const CollusionParams& params,
                                      int trials);

// Exhaustively enumerates the honest participant's possible orders for one
// completed run and returns the fraction that decrypt the secret.  Only
// valid with a single honest participant holding at most `max_len` qubits.
double collusion_recovery_fraction(const Transcript& t, int honest_bob,
                                   int max_len = 8);

}  // namespace msqss
