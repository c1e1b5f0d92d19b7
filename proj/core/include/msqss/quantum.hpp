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
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "msqss/rng.hpp"

namespace msqss {

using Amplitude = std::complex<double>;

// Tolerance for normalization and branch-probability checks.
inline constexpr double kNormTolerance = 1e-9;

enum class Basis : std::uint8_t { Z, X };

// The four single-qubit states the protocol prepares and announces.
// Z outcomes are written 0/1, X outcomes +/-.
enum class QubitLabel : std::uint8_t { Zero, One, Plus, Minus };

// Dense pure state over a 2^k dimensional system.  Construction validates
// unit norm; measurement renormalizes collapsed branches, so states stay
// normalized for the lifetime of a run.
class PureState {
 public:
  explicit PureState(std::vector<Amplitude> amps);

  int dim() const { return static_cast<int>(amps_.size()); }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  const Amplitude& amp(int i) const { return amps_[static_cast<std::size_t>(i)]; }

  double norm_squared() const;

  // Component-wise comparison (phase sensitive).
  bool approx_equal(const PureState& other, double tol = kNormTolerance) const;

 private:
  struct Unchecked {};
  PureState(Unchecked, std::vector<Amplitude> amps) : amps_(std::move(amps)) {}

  std::vector<Amplitude> amps_;

  friend PureState tensor(const PureState&, const PureState&);
  friend struct StateAccess;
};

// Internal factory that skips validation for states produced by verified
// arithmetic (collapse branches are renormalized explicitly).
struct StateAccess {
  static PureState unchecked(std::vector<Amplitude> amps) {
    return PureState(PureState::Unchecked{}, std::move(amps));
  }
};

PureState make_qubit(QubitLabel label);

// Recognizes the four canonical qubit states; nullopt for anything else.
std::optional<QubitLabel> classify_qubit(const PureState& state,
                                         double tol = kNormTolerance);

char outcome_symbol(Basis basis, int outcome);

struct Measurement {
  int outcome;      // 0/1 in Z; 0 for +, 1 for - in X
  PureState post;   // the eigenstate the qubit collapses to
};

// Probability of the given outcome when measuring a single qubit.
double outcome_probability(const PureState& qubit, Basis basis, int outcome);

// Born-rule measurement of a single qubit.
Measurement measure_qubit(const PureState& qubit, Basis basis, RngStream& rng);

// Forces the qubit onto a chosen branch; rejects branches of (near) zero
// probability.  Used by scripted replays.
Measurement collapse_qubit(const PureState& qubit, Basis basis, int outcome);

// Kronecker product; the left factor owns the most significant index.
PureState tensor(const PureState& a, const PureState& b);

struct SubsystemMeasurement {
  int outcome;
  PureState remainder;  // collapsed, renormalized state of the other factors
};

// Branch probabilities for measuring the first (dim-2) subsystem of a joint
// state in the given basis.
std::array<double, 2> first_subsystem_probabilities(const PureState& joint,
                                                    int first_dim, Basis basis);

// Measures the first subsystem of a joint state and returns the outcome
// together with the renormalized remainder.  first_dim must be 2 and must
// divide joint.dim().
SubsystemMeasurement measure_first_subsystem(const PureState& joint, int first_dim,
                                             Basis basis, RngStream& rng);

SubsystemMeasurement collapse_first_subsystem(const PureState& joint, int first_dim,
                                              Basis basis, int outcome);

}  // namespace msqss
