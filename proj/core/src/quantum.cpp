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
#include <utility>

namespace msqss {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void require(bool cond, const char* message) {
  if (!cond) {
    throw std::invalid_argument(message);
  }
}

std::vector<Amplitude> renormalized(std::vector<Amplitude> amps, double norm_sq) {
  const double scale = 1.0 / std::sqrt(norm_sq);
  for (auto& a : amps) {
    a *= scale;
  }
  return amps;
}

}  // namespace

PureState::PureState(std::vector<Amplitude> amps) : amps_(std::move(amps)) {
  require(amps_.size() >= 2, "PureState: dimension must be at least 2");
  require(is_power_of_two(static_cast<int>(amps_.size())),
          "PureState: dimension must be a power of two");
  for (const auto& a : amps_) {
    require(std::isfinite(a.real()) && std::isfinite(a.imag()),
            "PureState: amplitudes must be finite");
  }
  if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("PureState: state is not normalized");
  }
}

double PureState::norm_squared() const {
  double total = 0.0;
  for (const auto& a : amps_) {
    total += std::norm(a);
  }
  return total;
}

bool PureState::approx_equal(const PureState& other, double tol) const {
  if (dim() != other.dim()) {
    return false;
  }
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (std::abs(amps_[i] - other.amps_[i]) > tol) {
      return false;
    }
  }
  return true;
}

PureState make_qubit(QubitLabel label) {
  switch (label) {
    case QubitLabel::Zero:
      return StateAccess::unchecked({Amplitude(1, 0), Amplitude(0, 0)});
    case QubitLabel::One:
      return StateAccess::unchecked({Amplitude(0, 0), Amplitude(1, 0)});
    case QubitLabel::Plus:
      return StateAccess::unchecked({Amplitude(kInvSqrt2, 0), Amplitude(kInvSqrt2, 0)});
    case QubitLabel::Minus:
      return StateAccess::unchecked({Amplitude(kInvSqrt2, 0), Amplitude(-kInvSqrt2, 0)});
  }
  throw std::invalid_argument("make_qubit: unknown label");
}

std::optional<QubitLabel> classify_qubit(const PureState& state, double tol) {
  if (state.dim() != 2) {
    return std::nullopt;
  }
  for (QubitLabel label :
       {QubitLabel::Zero, QubitLabel::One, QubitLabel::Plus, QubitLabel::Minus}) {
    if (state.approx_equal(make_qubit(label), tol)) {
      return label;
    }
  }
  return std::nullopt;
}

char outcome_symbol(Basis basis, int outcome) {
  if (basis == Basis::Z) {
    return outcome == 0 ? '0' : '1';
  }
  return outcome == 0 ? '+' : '-';
}

double outcome_probability(const PureState& qubit, Basis basis, int outcome) {
  require(qubit.dim() == 2, "outcome_probability: expected a single qubit");
  require(outcome == 0 || outcome == 1, "outcome_probability: outcome must be 0 or 1");
  const Amplitude a0 = qubit.amp(0);
  const Amplitude a1 = qubit.amp(1);
  if (basis == Basis::Z) {
    return outcome == 0 ? std::norm(a0) : std::norm(a1);
  }
  const Amplitude branch =
      outcome == 0 ? (a0 + a1) * kInvSqrt2 : (a0 - a1) * kInvSqrt2;
  return std::norm(branch);
}

Measurement measure_qubit(const PureState& qubit, Basis basis, RngStream& rng) {
  require(qubit.dim() == 2, "measure_qubit: expected a single qubit");
  if (std::abs(qubit.norm_squared() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("measure_qubit: state is not normalized");
  }
  const double p0 = outcome_probability(qubit, basis, 0);
  const int outcome = rng.next_double() < p0 ? 0 : 1;
  return collapse_qubit(qubit, basis, outcome);
}

Measurement collapse_qubit(const PureState& qubit, Basis basis, int outcome) {
  const double p = outcome_probability(qubit, basis, outcome);
  if (p <= kNormTolerance) {
    throw std::invalid_argument("collapse_qubit: branch has zero probability");
  }
  QubitLabel label;
  if (basis == Basis::Z) {
    label = outcome == 0 ? QubitLabel::Zero : QubitLabel::One;
  } else {
    label = outcome == 0 ? QubitLabel::Plus : QubitLabel::Minus;
  }
  return Measurement{outcome, make_qubit(label)};
}

PureState tensor(const PureState& a, const PureState& b) {
  std::vector<Amplitude> out(static_cast<std::size_t>(a.dim()) *
                             static_cast<std::size_t>(b.dim()));
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < b.dim(); ++j) {
      out[static_cast<std::size_t>(i) * static_cast<std::size_t>(b.dim()) +
          static_cast<std::size_t>(j)] = a.amp(i) * b.amp(j);
    }
  }
  return StateAccess::unchecked(std::move(out));
}

namespace {

// Amplitudes of the two branches of a first-subsystem measurement.  In Z the
// branches are the two halves of the vector; in X they are their sum and
// difference scaled by 1/sqrt(2).
std::pair<std::vector<Amplitude>, std::vector<Amplitude>> branch_vectors(
    const PureState& joint, int first_dim, Basis basis) {
  require(first_dim == 2, "first subsystem must be a qubit");
  require(joint.dim() % 2 == 0 && joint.dim() >= 4,
          "joint state must factor as qubit x rest");
  const int rest = joint.dim() / 2;
  std::vector<Amplitude> b0(static_cast<std::size_t>(rest));
  std::vector<Amplitude> b1(static_cast<std::size_t>(rest));
  for (int k = 0; k < rest; ++k) {
    const Amplitude low = joint.amp(k);
    const Amplitude high = joint.amp(rest + k);
    if (basis == Basis::Z) {
      b0[static_cast<std::size_t>(k)] = low;
      b1[static_cast<std::size_t>(k)] = high;
    } else {
      b0[static_cast<std::size_t>(k)] = (low + high) * kInvSqrt2;
      b1[static_cast<std::size_t>(k)] = (low - high) * kInvSqrt2;
    }
  }
  return {std::move(b0), std::move(b1)};
}

double vector_norm_squared(const std::vector<Amplitude>& v) {
  double total = 0.0;
  for (const auto& a : v) {
    total += std::norm(a);
  }
  return total;
}

}  // namespace

std::array<double, 2> first_subsystem_probabilities(const PureState& joint,
                                                    int first_dim, Basis basis) {
  auto [b0, b1] = branch_vectors(joint, first_dim, basis);
  return {vector_norm_squared(b0), vector_norm_squared(b1)};
}

SubsystemMeasurement measure_first_subsystem(const PureState& joint, int first_dim,
                                             Basis basis, RngStream& rng) {
  auto [b0, b1] = branch_vectors(joint, first_dim, basis);
  const double p0 = vector_norm_squared(b0);
  const int outcome = rng.next_double() < p0 ? 0 : 1;
  auto& branch = outcome == 0 ? b0 : b1;
  const double p = outcome == 0 ? p0 : vector_norm_squared(b1);
  // The sampled branch always has positive probability: next_double() < p0
  // fails whenever p0 == 0, and p1 >= tolerance in that case.
  if (p <= kNormTolerance) {
    throw std::logic_error("measure_first_subsystem: collapsed onto a null branch");
  }
  return SubsystemMeasurement{
      outcome, StateAccess::unchecked(renormalized(std::move(branch), p))};
}

SubsystemMeasurement collapse_first_subsystem(const PureState& joint, int first_dim,
                                              Basis basis, int outcome) {
  require(outcome == 0 || outcome == 1, "collapse_first_subsystem: outcome must be 0 or 1");
  auto [b0, b1] = branch_vectors(joint, first_dim, basis);
  auto& branch = outcome == 0 ? b0 : b1;
  const double p = vector_norm_squared(branch);
  if (p <= kNormTolerance) {
    throw std::invalid_argument("collapse_first_subsystem: branch has zero probability");
  }
  return SubsystemMeasurement{
      outcome, StateAccess::unchecked(renormalized(std::move(branch), p))};
}

}  // namespace msqss
