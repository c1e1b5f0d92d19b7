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

#include <array>
#include <string>

#include "doctest.h"
#include "msqss/json_io.hpp"
#include "msqss/verification.hpp"

using namespace msqss;

TEST_CASE("the pinned reference run satisfies every recorded expectation") {
  const Transcript t = run_worked_example();
  const auto checks = verify_worked_example(t);
  CHECK_FALSE(checks.empty());
  for (const auto& c : checks) {
    INFO(c.label, ": ", c.detail);
    CHECK(c.pass);
  }
  CHECK(example_ok(checks));
}

TEST_CASE("the reference run reproduces its published outcome") {
  const Transcript t = run_worked_example();

  CHECK(t.config.secret_length == 5);
  CHECK(t.config.num_bobs == 2);
  CHECK(t.config.epsilon == Rational(1, 6));
  CHECK(t.config.seed == 7);
  CHECK(t.config.sequence_length() == 26);
  CHECK(t.decisions == "scripted");

  REQUIRE(t.key.has_value());
  CHECK(*t.key == "00101");
  CHECK(t.test_bit_positions == std::vector<int>{2, 6});
  CHECK(key_candidates(t) == std::vector<int>{2, 6, 10, 13, 15, 16, 23});

  // Case sizes in the order untouched-X, replaced-X, untouched-Z, replaced-Z.
  const CheckReport& honesty = t.checks[1];
  const std::array<int, 4> sizes{
      honesty.cases[0].total, honesty.cases[1].total, honesty.cases[2].total,
      honesty.cases[3].total};
  CHECK(sizes == std::array<int, 4>{5, 4, 4, 7});

  const Announcement& readout = t.announcements.front();
  CHECK(readout.step == "step04");
  CHECK(readout.type == "basis_outcomes");
  CHECK(readout.bits == "+-+0+10+1+110+00-+10");

  const auto recovered = reconstruct_secret(t);
  REQUIRE(recovered.has_value());
  CHECK(*recovered == t.secret);
}

TEST_CASE("the reference run is reproducible byte for byte") {
  const std::string a = dump_json(transcript_to_json(run_worked_example()));
  const std::string b = dump_json(transcript_to_json(run_worked_example()));
  CHECK(a == b);
}
