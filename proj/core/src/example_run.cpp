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

#include "msqss/example_run.hpp"

#include <sstream>

#include "msqss/verification.hpp"

namespace msqss {

namespace {

template <typename T>
std::string join(const std::vector<T>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) {
      out << ' ';
    }
    out << v[i];
  }
  return out.str();
}

void compare_origins(std::vector<ExampleCheck>& checks,
                     const std::string& label, const Transcript& t,
                     const std::string& snapshot_key,
                     const std::vector<int>& expected) {
  ExampleCheck c{label, false, ""};
  const auto it = t.oracle.snapshots.find(snapshot_key);
  if (it == t.oracle.snapshots.end()) {
    c.detail = "snapshot missing";
    checks.push_back(c);
    return;
  }
  std::vector<int> got;
  got.reserve(it->second.size());
  bool symbols_ok = true;
  for (const auto& [origin, symbol] : it->second) {
    got.push_back(origin);
    const auto bit = t.alice.outcomes.find(origin);
    const char want =
        bit == t.alice.outcomes.end() ? '+' : (bit->second ? '1' : '0');
    symbols_ok = symbols_ok && symbol == want;
  }
  if (got != expected) {
    c.detail = "origins [" + join(got) + "] expected [" + join(expected) + "]";
  } else if (!symbols_ok) {
    c.detail = "a carrier state disagrees with the dealer's record";
  } else {
    c.pass = true;
  }
  checks.push_back(c);
}

void compare_ints(std::vector<ExampleCheck>& checks, const std::string& label,
                  const std::vector<int>& got,
                  const std::vector<int>& expected) {
  ExampleCheck c{label, got == expected, ""};
  if (!c.pass) {
    c.detail = "got [" + join(got) + "] expected [" + join(expected) + "]";
  }
  checks.push_back(c);
}

void compare_strings(std::vector<ExampleCheck>& checks,
                     const std::string& label, const std::string& got,
                     const std::string& expected) {
  ExampleCheck c{label, got == expected, ""};
  if (!c.pass) {
    c.detail = "got \"" + got + "\" expected \"" + expected + "\"";
  }
  checks.push_back(c);
}

}  // namespace

ProtocolConfig example_config() {
  ProtocolConfig config;
  config.secret_length = 5;
  config.num_bobs = 2;
  config.epsilon = Rational(1, 6);
  config.seed = 7;
  return config;
}

RunScript example_script() {
  RunScript script;
  script.sift_positions = std::vector<int>{1,  2,  3,  6,  7,  10, 13, 15,
                                           16, 18, 19, 23, 24, 25, 26};
  script.alice_perm = Permutation(std::vector<int>{
      22, 19, 15, 5,  12, 14, 3,  21, 4,  20, 16, 6,  11,
      1,  8,  7,  9,  13, 23, 17, 18, 24, 10, 2,  26, 25});

  // The dealer's Z readouts on the prepared |+> states.
  const std::vector<std::pair<int, int>> alice_bits = {
      {1, 0},  {2, 1},  {3, 1},  {6, 0},  {7, 1},
      {10, 0}, {13, 0}, {15, 1}, {16, 0}, {18, 0},
      {19, 0}, {23, 1}, {24, 1}, {25, 0}, {26, 1}};
  for (const auto& [pos, bit] : alice_bits) {
    script.forced[{"alice", pos}] = bit;
  }

  script.bob_positions[1] = {3, 25, 26};
  script.bob_perms[1] = Permutation(std::vector<int>{
      13, 17, 15, 8,  4, 5,  21, 14, 12, 19, 3, 2,
      18, 23, 10, 6, 16, 9,  11, 1,  22, 7, 20});

  script.bob_positions[2] = {2, 6, 13};
  // Two of those carriers are untouched |+> states; their readouts are
  // pinned to the published branch.
  script.forced[{"bob2", 6}] = 1;
  script.forced[{"bob2", 13}] = 0;
  script.bob_perms[2] = Permutation(std::vector<int>{
      7, 5, 1, 20, 8, 18, 12, 6, 15, 9, 13, 10, 11, 17, 16, 4, 3, 19, 2, 14});

  script.tp_x_positions = std::set<int>{1, 2, 3, 5, 8, 10, 14, 17, 18};
  script.forced[{"tp", 2}] = 1;
  script.forced[{"tp", 6}] = 1;
  script.forced[{"tp", 7}] = 0;
  script.forced[{"tp", 8}] = 0;
  script.forced[{"tp", 11}] = 1;
  script.forced[{"tp", 13}] = 0;
  script.forced[{"tp", 14}] = 0;
  script.forced[{"tp", 17}] = 1;

  script.test_positions = std::vector<int>{2, 6};
  return script;
}

const ExampleExpectations& example_expectations() {
  static const ExampleExpectations expectations = [] {
    ExampleExpectations e;
    e.alice_out_origins = {14, 24, 7,  9,  4,  12, 16, 15, 17, 23, 13, 5, 18,
                           6,  3,  11, 20, 21, 2,  10, 8,  1,  19, 22, 26, 25};
    e.bob1_out_origins = {8,  18, 5,  12, 16, 20, 19, 4,  2,  11, 10, 23,
                          14, 17, 9,  21, 24, 6,  13, 22, 15, 1,  3};
    e.bob2_out_origins = {12, 1,  22, 13, 5,  11, 8,  19, 23, 9,
                          21, 2,  17, 3,  10, 6,  24, 4,  15, 16};
    e.tp_symbols = "+-+0+10+1+110+00-+10";
    e.case_sizes = {5, 4, 4, 7};
    e.key_candidates = {2, 6, 10, 13, 15, 16, 23};
    e.test_positions = {2, 6};
    e.key = "00101";
    return e;
  }();
  return expectations;
}

Transcript run_worked_example() {
  const ProtocolConfig config = example_config();
  RngStream root(config.seed, "msqss");
  ScriptedDecisions decisions(example_script(), root);
  RunOptions options;
  options.decisions = &decisions;
  options.capture_snapshots = true;
  return run_protocol(config, AttackSpec::honest(), options);
}

std::vector<ExampleCheck> verify_worked_example(const Transcript& t) {
  const ExampleExpectations& e = example_expectations();
  std::vector<ExampleCheck> checks;

  compare_origins(checks, "dealer output sequence", t, "alice",
                  e.alice_out_origins);
  compare_origins(checks, "first participant output sequence", t, "bob1",
                  e.bob1_out_origins);
  compare_origins(checks, "second participant output sequence", t, "bob2",
                  e.bob2_out_origins);

  std::string symbols;
  for (const Announcement& a : t.announcements) {
    if (a.step == "step04" && a.type == "basis_outcomes") {
      symbols = a.bits;
      break;
    }
  }
  compare_strings(checks, "third party readout", symbols, e.tp_symbols);

  const std::vector<CaseLabel> classes = classify_cases(t);
  std::array<int, 4> sizes{};
  for (const CaseLabel c : classes) {
    ++sizes[static_cast<std::size_t>(c)];
  }
  {
    ExampleCheck c{"case subset sizes", sizes == e.case_sizes, ""};
    if (!c.pass) {
      std::ostringstream detail;
      detail << "got " << sizes[0] << '/' << sizes[1] << '/' << sizes[2] << '/'
             << sizes[3];
      c.detail = detail.str();
    }
    checks.push_back(c);
  }

  compare_ints(checks, "key candidates", key_candidates(t), e.key_candidates);
  compare_ints(checks, "test positions", t.test_bit_positions,
               e.test_positions);
  compare_strings(checks, "raw key", t.key.value_or(""), e.key);

  {
    ExampleCheck c{"run completed", !t.aborted(), t.abort_reason.value_or("")};
    checks.push_back(c);
  }
  {
    const auto secret = reconstruct_secret(t);
    ExampleCheck c{"participants recover the secret",
                   secret.has_value() && *secret == t.secret, ""};
    if (!c.pass) {
      c.detail = "reconstruction " +
                 (secret ? "yielded \"" + *secret + "\"" : "failed") +
                 " against \"" + t.secret + "\"";
    }
    checks.push_back(c);
  }
  return checks;
}

bool example_ok(const std::vector<ExampleCheck>& checks) {
  for (const ExampleCheck& c : checks) {
    if (!c.pass) {
      return false;
    }
  }
  return true;
}

}  // namespace msqss
