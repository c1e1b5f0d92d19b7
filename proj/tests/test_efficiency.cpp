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

#include "msqss/efficiency.hpp"

#include <stdexcept>

#include "doctest.h"

using msqss::Rational;
using msqss::scheme_efficiency;
using msqss::scheme_name;
using msqss::SharingScheme;

TEST_CASE("rationals normalize to lowest terms with positive denominator") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("rational arithmetic is exact") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 2) / Rational(1, 8) == Rational(4));
  CHECK_THROWS_AS(Rational(1, 2) / Rational(0), std::invalid_argument);
}

TEST_CASE("rational comparisons avoid floating point") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(Rational(7, 8) > Rational(6, 7));
  CHECK(Rational(2, 3) <= Rational(2, 3));
}

TEST_CASE("parse accepts fractions, integers, and decimals") {
  CHECK(Rational::parse("1/8") == Rational(1, 8));
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("0.125") == Rational(1, 8));
  CHECK(Rational::parse("-0.5") == Rational(-1, 2));
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
}

TEST_CASE("formatting round-trips and expands exactly") {
  CHECK(Rational(1, 8).to_string() == "1/8");
  CHECK(Rational(5).to_string() == "5");
  CHECK(Rational(1, 8).to_decimal() == "0.125");
  CHECK(Rational(1, 160).to_decimal() == "0.00625");
  CHECK(Rational(1, 3).to_decimal(6) == "0.333333");
  CHECK(Rational(1, 8).to_double() == doctest::Approx(0.125));
}

TEST_CASE("floor matches integer division toward minus infinity") {
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(4).floor() == 4);
}

TEST_CASE("overflowing operations throw instead of wrapping") {
  const Rational huge(std::int64_t{1} << 62);
  CHECK_THROWS_AS(huge * huge, std::range_error);
  CHECK_THROWS_AS(huge + huge, std::range_error);
}

TEST_CASE("scheme efficiencies match their closed forms") {
  const Rational eps(1, 8);

  // Independent evaluation: eta = 1 / (6 + M * eps) etc., assembled from
  // integer pieces rather than through scheme_efficiency's own arithmetic.
  for (int m = 1; m <= 10; ++m) {
    CHECK(scheme_efficiency(SharingScheme::Ours, m, eps) ==
          Rational(8, 48 + m));
    CHECK(scheme_efficiency(SharingScheme::Graph, m, eps) ==
          Rational(1, 4 * (m + 1)));
    CHECK(scheme_efficiency(SharingScheme::Ghz, m, eps) ==
          Rational(1, (std::int64_t{1} << (m + 1)) * (m + 1)));
  }

  CHECK(scheme_efficiency(SharingScheme::Ghz, 4, eps) == Rational(1, 160));
  CHECK(scheme_efficiency(SharingScheme::Ghz, 4, eps).to_decimal() == "0.00625");
}

TEST_CASE("epsilon enters only the measured scheme") {
  CHECK(scheme_efficiency(SharingScheme::Ours, 2, Rational(1, 2)) ==
        Rational(1, 7));
  CHECK(scheme_efficiency(SharingScheme::Ghz, 2, Rational(1, 2)) ==
        scheme_efficiency(SharingScheme::Ghz, 2, Rational(1, 8)));
}

TEST_CASE("scheme names are stable identifiers") {
  CHECK(scheme_name(SharingScheme::Ours) == "ours");
  CHECK(scheme_name(SharingScheme::Ghz) == "ghz");
  CHECK(scheme_name(SharingScheme::Graph) == "graph");
}
