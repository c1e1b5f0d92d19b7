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
#include <string>
#include <vector>

#include "msqss/protocol.hpp"

namespace msqss {

// A fully pinned five-bit run with two participants: every sample, order,
// and measurement branch is scripted, so the run reproduces a known
// sequence of intermediate states exactly.

ProtocolConfig example_config();
RunScript example_script();

struct ExampleExpectations {
  // Dealt-sequence position of each qubit after each reordering.
  std::vector<int> alice_out_origins;
  std::vector<int> bob1_out_origins;
  std::vector<int> bob2_out_origins;
  // The third party's announced per-position readouts.
  std::string tp_symbols;
  // x-ctrl, x-sift, z-ctrl, z-sift sizes.
  std::array<int, 4> case_sizes;
  std::vector<int> key_candidates;  // dealt positions
  std::vector<int> test_positions;  // dealt positions
  std::string key;
};

const ExampleExpectations& example_expectations();

// Executes the scripted run with snapshots enabled.
Transcript run_worked_example();

struct ExampleCheck {
  std::string label;
  bool pass = false;
  std::string detail;  // what differed, empty when pass
};

// Compares a transcript of the scripted run against the expectations,
// one labeled result per published intermediate value.
std::vector<ExampleCheck> verify_worked_example(const Transcript& t);

bool example_ok(const std::vector<ExampleCheck>& checks);

}  // namespace msqss
