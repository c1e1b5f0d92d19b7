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

#include "msqss/quantum.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

using namespace msqss;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("canonical qubits have the expected amplitudes") {
  CHECK(make_qubit(QubitLabel::Zero).amp(0) == Amplitude{1.0, 0.0});
  CHECK(make_qubit(QubitLabel::Zero).amp(1) == Amplitude{0.0, 0.0});
  CHECK(make_qubit(QubitLabel::One).amp(1) == Amplitude{1.0, 0.0});
  CHECK(make_qubit(QubitLabel::Plus).amp(0).real() == doctest::Approx(kInvSqrt2));
  CHECK(make_qubit(QubitLabel::Plus).amp(1).real() == doctest::Approx(kInvSqrt2));
  CHECK(make_qubit(QubitLabel::Minus).amp(1).real() == doctest::Approx(-kInvSqrt2));
}

TEST_CASE("state construction rejects malformed amplitude vectors") {
  CHECK_THROWS_AS(PureState({{0.5, 0.0}, {0.5, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(PureState(std::vector<Amplitude>{
                      {1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(PureState(std::vector<Amplitude>{{1.0, 0.0}}),
                  std::invalid_argument);
}

TEST_CASE("classify_qubit recognizes exactly the four prepared states") {
  for (QubitLabel label : {QubitLabel::Zero, QubitLabel::One, QubitLabel::Plus,
                           QubitLabel::Minus}) {
    auto got = classify_qubit(make_qubit(label));
    REQUIRE(got.has_value());
    CHECK(*got == label);
  }
  PureState skew({{0.6, 0.0}, {0.8, 0.0}});
  CHECK_FALSE(classify_qubit(skew).has_value());
}

TEST_CASE("outcome symbols follow the announcement notation") {
  CHECK(outcome_symbol(Basis::Z, 0) == '0');
  CHECK(outcome_symbol(Basis::Z, 1) == '1');
  CHECK(outcome_symbol(Basis::X, 0) == '+');
  CHECK(outcome_symbol(Basis::X, 1) == '-');
}

TEST_CASE("outcome probabilities match the Born rule") {
  CHECK(outcome_probability(make_qubit(QubitLabel::Plus), Basis::Z, 0) ==
        doctest::Approx(0.5));
  CHECK(outcome_probability(make_qubit(QubitLabel::Plus), Basis::Z, 1) ==
        doctest::Approx(0.5));
  CHECK(outcome_probability(make_qubit(QubitLabel::Zero), Basis::Z, 0) ==
        doctest::Approx(1.0));
  CHECK(outcome_probability(make_qubit(QubitLabel::Zero), Basis::X, 1) ==
        doctest::Approx(0.5));
  CHECK(outcome_probability(make_qubit(QubitLabel::Minus), Basis::X, 1) ==
        doctest::Approx(1.0));

  PureState skew({{0.6, 0.0}, {0.8, 0.0}});
  CHECK(outcome_probability(skew, Basis::Z, 1) == doctest::Approx(0.64));
}

TEST_CASE("measurement collapses onto a normalized eigenstate") {
  RngStream rng(1, "measure");
  int ones = 0;
  for (int i = 0; i < 2000; ++i) {
    Measurement m = measure_qubit(make_qubit(QubitLabel::Plus), Basis::Z, rng);
    ones += m.outcome;
    CHECK(m.post.norm_squared() == doctest::Approx(1.0));
    auto label = classify_qubit(m.post);
    REQUIRE(label.has_value());
    CHECK(*label == (m.outcome ? QubitLabel::One : QubitLabel::Zero));
  }
  CHECK(ones > 850);
  CHECK(ones < 1150);
}

TEST_CASE("deterministic states always return their eigenvalue") {
  RngStream rng(2, "measure");
  for (int i = 0; i < 20; ++i) {
    CHECK(measure_qubit(make_qubit(QubitLabel::One), Basis::Z, rng).outcome == 1);
    CHECK(measure_qubit(make_qubit(QubitLabel::Plus), Basis::X, rng).outcome == 0);
  }
}

TEST_CASE("collapse_qubit rejects branches of probability zero") {
  CHECK_THROWS_AS(collapse_qubit(make_qubit(QubitLabel::Zero), Basis::Z, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(collapse_qubit(make_qubit(QubitLabel::Minus), Basis::X, 0),
                  std::invalid_argument);
  Measurement m = collapse_qubit(make_qubit(QubitLabel::Plus), Basis::Z, 1);
  CHECK(m.outcome == 1);
  CHECK(classify_qubit(m.post) == QubitLabel::One);
}

TEST_CASE("tensor product puts the left factor on the high index bits") {
  PureState joint = tensor(make_qubit(QubitLabel::Zero), make_qubit(QubitLabel::One));
  REQUIRE(joint.dim() == 4);
  CHECK(joint.amp(1).real() == doctest::Approx(1.0));
  CHECK(std::abs(joint.amp(0)) == doctest::Approx(0.0));

  PureState swapped = tensor(make_qubit(QubitLabel::One), make_qubit(QubitLabel::Zero));
  CHECK(swapped.amp(2).real() == doctest::Approx(1.0));
}

TEST_CASE("first subsystem probabilities factor out of a product state") {
  PureState joint = tensor(make_qubit(QubitLabel::Plus), make_qubit(QubitLabel::One));
  auto pz = first_subsystem_probabilities(joint, 2, Basis::Z);
  CHECK(pz[0] == doctest::Approx(0.5));
  CHECK(pz[1] == doctest::Approx(0.5));
  auto px = first_subsystem_probabilities(joint, 2, Basis::X);
  CHECK(px[0] == doctest::Approx(1.0));
  CHECK(px[1] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("measuring one side of a correlated pair collapses the other") {
  std::vector<Amplitude> amps(4);
  amps[0] = {kInvSqrt2, 0.0};  // |0>|0>
  amps[3] = {kInvSqrt2, 0.0};  // |1>|1>
  PureState pair(amps);

  RngStream rng(7, "pair");
  int ones = 0;
  for (int i = 0; i < 400; ++i) {
    SubsystemMeasurement m = measure_first_subsystem(pair, 2, Basis::Z, rng);
    REQUIRE(m.remainder.dim() == 2);
    CHECK(m.remainder.norm_squared() == doctest::Approx(1.0));
    CHECK(classify_qubit(m.remainder) ==
          (m.outcome ? QubitLabel::One : QubitLabel::Zero));
    ones += m.outcome;
  }
  CHECK(ones > 120);
  CHECK(ones < 280);
}

TEST_CASE("collapse of the first subsystem honors branch probabilities") {
  PureState joint = tensor(make_qubit(QubitLabel::Zero), make_qubit(QubitLabel::Plus));
  CHECK_THROWS_AS(collapse_first_subsystem(joint, 2, Basis::Z, 1),
                  std::invalid_argument);
  SubsystemMeasurement m = collapse_first_subsystem(joint, 2, Basis::Z, 0);
  CHECK(m.outcome == 0);
  CHECK(classify_qubit(m.remainder) == QubitLabel::Plus);
}
