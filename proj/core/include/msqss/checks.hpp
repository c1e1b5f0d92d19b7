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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace msqss {

// How the dealer picks verification bits out of the Z-measured SIFT qubits
// that survived to the final sequence.
struct TestBitPolicy {
  enum class Kind : std::uint8_t {
    Surplus,   // everything above the secret length, at least one
    Count,     // a fixed number
    Fraction,  // a fixed fraction of the candidates
  };

  Kind kind = Kind::Surplus;
  double value = 0.0;

  static TestBitPolicy surplus() { return {}; }
  static TestBitPolicy count(int n);
  static TestBitPolicy fraction(double f);

  // Number of test bits for a candidate pool of the given size.
  int resolve(int candidates, int secret_length) const;
};

struct CheckConfig {
  // Fraction of traced SIFT outcomes allowed to disagree with the dealer's
  // record before the run is aborted.
  double sift_error_threshold = 0.0;

  // Half-width multiplier for the balance checks on outcome distributions
  // that should be uniform.  A sample of n bits passes when the observed
  // frequency of ones stays within deviation_z * sqrt(0.25 / n) of one half.
  double deviation_z = 6.0;

  // Balance checks are skipped below this sample size.
  int min_samples = 4;

  TestBitPolicy test_bits;
};

// The four disjoint subsets of the final sequence, split by the third
// party's measurement basis and by whether the dealer measured the qubit.
enum class CaseLabel : std::uint8_t {
  XCtrl = 0,  // X basis, dealer left it untouched
  XSift = 1,  // X basis, dealer measured and replaced it
  ZCtrl = 2,  // Z basis, dealer left it untouched
  ZSift = 3,  // Z basis, dealer measured and replaced it; key material
};

inline constexpr std::size_t kCaseCount = 4;

const char* case_name(CaseLabel label);

struct CaseStats {
  int total = 0;
  int ones = 0;  // outcomes of 1 ('-' for X, '1' for Z)
};

// Tallies from tracing one participant's disclosed measurements back to the
// dealer's sequence.
struct BobCheckStats {
  int bob = 0;
  int sift_total = 0;
  int sift_mismatches = 0;
  int ctrl_total = 0;
  int ctrl_ones = 0;
};

struct CheckReport {
  std::string check;  // "eavesdropping" or "honesty"
  bool pass = true;
  std::string reason;  // empty when pass
  std::vector<BobCheckStats> per_bob;
  std::array<CaseStats, kCaseCount> cases{};
  int test_bits_checked = 0;
  int test_bit_mismatches = 0;
};

}  // namespace msqss
