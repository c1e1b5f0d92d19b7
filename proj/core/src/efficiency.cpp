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

#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace msqss {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::range_error("Rational: multiplication overflow");
  }
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::range_error("Rational: addition overflow");
  }
  return out;
}

}  // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator)
    : num_(numerator), den_(denominator) {
  if (den_ == 0) {
    throw std::invalid_argument("Rational: zero denominator");
  }
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::parse(const std::string& text) {
  if (text.empty()) {
    throw std::invalid_argument("Rational::parse: empty input");
  }
  const auto parse_int = [](const std::string& s) {
    std::size_t used = 0;
    const std::int64_t v = std::stoll(s, &used);
    if (used != s.size()) {
      throw std::invalid_argument("Rational::parse: trailing characters");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) {
    return Rational(parse_int(text));
  }
  const std::string whole = text.substr(0, dot);
  const std::string frac = text.substr(dot + 1);
  if (frac.empty()) {
    return Rational(parse_int(whole));
  }
  const bool negative = !whole.empty() && whole[0] == '-';
  std::int64_t scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) {
    scale = checked_mul(scale, 10);
  }
  std::int64_t whole_value = (whole.empty() || whole == "-" || whole == "+")
                                 ? 0
                                 : parse_int(whole);
  std::int64_t frac_value = parse_int(frac);
  if (frac_value < 0) {
    throw std::invalid_argument("Rational::parse: malformed decimal");
  }
  if (negative) {
    frac_value = -frac_value;
  }
  return Rational(checked_add(checked_mul(whole_value, scale), frac_value), scale);
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(checked_add(checked_mul(num_, o.den_), checked_mul(o.num_, den_)),
                  checked_mul(den_, o.den_));
}

Rational Rational::operator-(const Rational& o) const {
  return *this + Rational(-o.num_, o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return Rational(checked_mul(num_, o.num_), checked_mul(den_, o.den_));
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) {
    throw std::invalid_argument("Rational: division by zero");
  }
  return Rational(checked_mul(num_, o.den_), checked_mul(den_, o.num_));
}

bool Rational::operator<(const Rational& o) const {
  return checked_mul(num_, o.den_) < checked_mul(o.num_, den_);
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  if (den_ == 1) {
    return std::to_string(num_);
  }
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::to_decimal(int digits) const {
  std::int64_t n = num_;
  std::string out;
  if (n < 0) {
    out += '-';
    n = -n;
  }
  out += std::to_string(n / den_);
  std::int64_t rem = n % den_;
  if (rem == 0 || digits <= 0) {
    return out;
  }
  out += '.';
  for (int i = 0; i < digits && rem != 0; ++i) {
    rem = checked_mul(rem, 10);
    out += static_cast<char>('0' + rem / den_);
    rem %= den_;
  }
  while (out.back() == '0') {
    out.pop_back();
  }
  if (out.back() == '.') {
    out.pop_back();
  }
  return out;
}

std::int64_t Rational::floor() const {
  const std::int64_t q = num_ / den_;
  return (num_ % den_ != 0 && num_ < 0) ? q - 1 : q;
}

Rational scheme_efficiency(SharingScheme scheme, int participants, const Rational& eps) {
  if (participants < 1) {
    throw std::invalid_argument("scheme_efficiency: participants must be >= 1");
  }
  const std::int64_t m = participants;
  switch (scheme) {
    case SharingScheme::Ours: {
      const Rational denom = Rational(6) + Rational(m) * eps;
      return Rational(1) / denom;
    }
    case SharingScheme::Ghz: {
      if (m + 1 >= 63) {
        throw std::range_error("scheme_efficiency: participant count too large");
      }
      const std::int64_t pow2 = std::int64_t{1} << (m + 1);
      return Rational(1, checked_mul(pow2, m + 1));
    }
    case SharingScheme::Graph:
      return Rational(1, 4 * (m + 1));
  }
  throw std::invalid_argument("scheme_efficiency: unknown scheme");
}

std::string scheme_name(SharingScheme scheme) {
  switch (scheme) {
    case SharingScheme::Ours:
      return "ours";
    case SharingScheme::Ghz:
      return "ghz";
    case SharingScheme::Graph:
      return "graph";
  }
  return "unknown";
}

}  // namespace msqss
