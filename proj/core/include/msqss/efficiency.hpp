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

namespace msqss {

// Exact rational arithmetic on 64-bit numerator/denominator, normalized to
// lowest terms with a positive denominator.  Operations that would overflow
// throw std::range_error instead of wrapping.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t numerator, std::int64_t denominator);
  // NOLINTNEXTLINE(google-explicit-constructor): integers embed exactly.
  Rational(std::int64_t value) : num_(value), den_(1) {}

  // Accepts "p/q", an integer, or a finite decimal such as "0.125".
  static Rational parse(const std::string& text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  double to_double() const;

  // "p/q", or just "p" when the denominator is 1.
  std::string to_string() const;

  // Decimal expansion with up to `digits` fractional digits, trailing zeros
  // trimmed.  Exact when the expansion terminates within the budget.
  std::string to_decimal(int digits = 12) const;

  // Largest integer not exceeding the value.
  std::int64_t floor() const;

 private:
  std::int64_t num_;
  std::int64_t den_;
};

enum class SharingScheme { Ours, Ghz, Graph };

// Qubit efficiency of the compared schemes for M participants, as exact
// rationals: ours 1/(6 + M*eps), ghz 1/(2^(M+1) * (M+1)), graph 1/(4*(M+1)).
Rational scheme_efficiency(SharingScheme scheme, int participants, const Rational& eps);

std::string scheme_name(SharingScheme scheme);

}  // namespace msqss
