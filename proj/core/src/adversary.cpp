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

#include "msqss/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace msqss {

namespace {

using Vec = std::vector<Amplitude>;

Amplitude inner(const Vec& a, const Vec& b) {
  Amplitude s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += std::conj(a[i]) * b[i];
  }
  return s;
}

Vec combine(const Amplitude& c0, const Vec& v0, const Amplitude& c1,
            const Vec& v1) {
  Vec out(v0.size());
  for (std::size_t i = 0; i < v0.size(); ++i) {
    out[i] = c0 * v0[i] + c1 * v1[i];
  }
  return out;
}

Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i * b.size() + j] = a[i] * b[j];
    }
  }
  return out;
}

double norm_sq(const Vec& v) {
  double s = 0.0;
  for (const Amplitude& a : v) {
    s += std::norm(a);
  }
  return s;
}

int total_sift_tested(const Transcript& t) {
  if (t.checks.empty()) {
    return 0;
  }
  int total = 0;
  for (const BobCheckStats& s : t.checks.front().per_bob) {
    total += s.sift_total;
  }
  return total;
}

int xctrl_count(const Transcript& t) {
  for (const CheckReport& r : t.checks) {
    if (r.check == "honesty") {
      return r.cases[static_cast<std::size_t>(CaseLabel::XCtrl)].total;
    }
  }
  return 0;
}

std::pair<int, int> test_bit_value_counts(const Transcript& t) {
  int zeros = 0;
  int ones = 0;
  for (const int dealt : t.test_bit_positions) {
    if (t.alice.outcomes.at(dealt)) {
      ++ones;
    } else {
      ++zeros;
    }
  }
  return {zeros, ones};
}

// Per-run detection probability given the run's sampled structure, for the
// attacks with a tractable event model.  Nullopt when none applies.
std::optional<double> model_probability(const Transcript& t,
                                        const AttackSpec& attack) {
  switch (attack.kind) {
    case AttackKind::Honest:
      return 0.0;
    case AttackKind::FakeState:
      // Every untouched Z eigenstate read in X comes up '-' with chance 1/2.
      return 1.0 - std::pow(0.5, xctrl_count(t));
    case AttackKind::InterceptResendQubit:
    case AttackKind::InterceptResendQudit: {
      const int tested = total_sift_tested(t);
      if (attack.qudit_mode == QuditOutcomeMode::AlwaysMismatch &&
          attack.kind == AttackKind::InterceptResendQudit) {
        return tested >= 1 ? 1.0 : 0.0;
      }
      // Each traced replaced qubit was answered with a coin flip.
      return 1.0 - std::pow(0.5, tested);
    }
    case AttackKind::EntangleMeasure: {
      const EntangleEventProbabilities p =
          entangle_event_probabilities(*attack.entangle);
      const auto [zeros, ones] = test_bit_value_counts(t);
      return entangle_run_detection_probability(p, total_sift_tested(t),
                                                xctrl_count(t), zeros, ones);
    }
    case AttackKind::Collusion:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<double> closed_form_prediction(const ProtocolConfig& cfg,
                                             const AttackSpec& attack) {
  if (attack.kind == AttackKind::FakeState) {
    return 1.0 - std::pow(7.0 / 8.0, cfg.secret_length);
  }
  return std::nullopt;
}

void tally_run(DetectionStats& stats, const Transcript& t) {
  ++stats.trials;
  if (t.abort_reason) {
    if (is_security_abort(*t.abort_reason)) {
      ++stats.detected;
      const std::size_t colon = t.abort_reason->find(':');
      ++stats.detected_by_stage[t.abort_reason->substr(0, colon)];
    } else {
      ++stats.insufficient;
    }
  }
}

void finalize_stats(DetectionStats& stats, double model_variance) {
  stats.rate = stats.trials ? static_cast<double>(stats.detected) / stats.trials
                            : 0.0;
  stats.interval = wilson_interval(stats.detected, stats.trials);
  stats.model_stddev = std::sqrt(model_variance);
}

std::vector<int> hop_table(const HopRecord& hop) {
  const int incoming = static_cast<int>(hop.discards.size()) + hop.perm.size();
  std::vector<int> table(static_cast<std::size_t>(incoming), 0);
  for (int p = 1; p <= incoming; ++p) {
    table[static_cast<std::size_t>(p) - 1] =
        trace_through_hop(p, hop).value_or(0);
  }
  return table;
}

}  // namespace

WilsonInterval wilson_interval(int successes, int trials, double z) {
  if (trials <= 0) {
    return {0.0, 0.0};
  }
  const double n = trials;
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

DetectionStats run_detection_experiment(const ProtocolConfig& base,
                                        const AttackSpec& attack, int trials) {
  if (trials <= 0) {
    throw std::invalid_argument("trials must be positive");
  }
  DetectionStats stats;
  stats.attack = attack.label();
  stats.secret_length = base.secret_length;
  stats.num_bobs = base.num_bobs;
  stats.epsilon = base.epsilon;
  stats.predicted = closed_form_prediction(base, attack);

  RngStream seeder(base.seed, "experiment/" + attack.label());
  double model_variance = 0.0;
  for (int i = 0; i < trials; ++i) {
    const ProtocolConfig cfg = base.with_seed(seeder.next_u64());
    const Transcript t = run_protocol(cfg, attack);
    tally_run(stats, t);
    if (const auto p = model_probability(t, attack)) {
      stats.has_model = true;
      stats.model_expected += *p;
      model_variance += *p * (1.0 - *p);
    }
  }
  finalize_stats(stats, model_variance);
  return stats;
}

EntangleEventProbabilities entangle_event_probabilities(
    const EntangleParams& params) {
  params.validate();
  EntangleEventProbabilities out;

  out.sift_mismatch = std::norm(params.beta);

  // Test bits pass both maps before the Z readout.  The flipped branch of a
  // replaced |0> is alpha*delta r1(x)f0 + beta*gamma r3(x)f1, and of a
  // replaced |1> is beta*gamma r0(x)f2 + alpha*delta r2(x)f3.
  const Amplitude ad = params.alpha * params.delta;
  const Amplitude bg = params.beta * params.gamma;
  out.test_flip_zero =
      std::norm(ad) + std::norm(bg) +
      2.0 * std::real(std::conj(ad) * bg * inner(params.r1, params.r3) *
                      inner(params.f0, params.f1));
  out.test_flip_one =
      std::norm(bg) + std::norm(ad) +
      2.0 * std::real(std::conj(bg) * ad * inner(params.r0, params.r2) *
                      inner(params.f2, params.f3));

  // An untouched |+> carries probe components u on the |0> branch and w on
  // the |1> branch after the forward map; the '-' amplitude after the
  // return map is (A(x)u + B(x)w) / 2.
  const Vec u = combine(params.alpha, params.f0, params.beta, params.f2);
  const Vec w = combine(params.beta, params.f1, params.alpha, params.f3);
  const Vec a = combine(params.gamma, params.r0, -params.delta, params.r1);
  const Vec b = combine(params.delta, params.r2, -params.gamma, params.r3);
  out.xctrl_minus =
      0.25 * (norm_sq(a) * norm_sq(u) + norm_sq(b) * norm_sq(w) +
              2.0 * std::real(inner(a, b) * inner(u, w)));
  out.xctrl_minus = std::clamp(out.xctrl_minus, 0.0, 1.0);
  return out;
}

double entangle_run_detection_probability(const EntangleEventProbabilities& p,
                                          int sift_tested, int xctrl_count,
                                          int test_zero_count,
                                          int test_one_count) {
  const double pass =
      std::pow(1.0 - p.sift_mismatch, sift_tested) *
      std::pow(1.0 - p.xctrl_minus, xctrl_count) *
      std::pow(1.0 - p.test_flip_zero, test_zero_count) *
      std::pow(1.0 - p.test_flip_one, test_one_count);
  return std::clamp(1.0 - pass, 0.0, 1.0);
}

double probe_key_information(const ProtocolConfig& base,
                             const EntangleParams& params, int trials) {
  if (trials <= 0) {
    throw std::invalid_argument("trials must be positive");
  }
  const AttackSpec attack = AttackSpec::entangle_measure(params);

  // Measurement basis adapted to the two probe states a conforming attack
  // can produce: r0(x)f0 and the part of r3(x)f3 orthogonal to it, then a
  // completion of the remaining space.
  const Vec b0 = kron(params.r0, params.f0);
  const Vec b1 = kron(params.r3, params.f3);
  const std::size_t dim = b0.size();
  std::vector<Vec> basis;
  basis.push_back(b0);
  auto add_orthogonal = [&basis, dim](Vec v) {
    for (const Vec& u : basis) {
      const Amplitude c = inner(u, v);
      for (std::size_t i = 0; i < dim; ++i) {
        v[i] -= c * u[i];
      }
    }
    const double n2 = norm_sq(v);
    if (n2 > 1e-12) {
      const double inv = 1.0 / std::sqrt(n2);
      for (Amplitude& a : v) {
        a *= inv;
      }
      basis.push_back(std::move(v));
    }
  };
  add_orthogonal(b1);
  for (std::size_t j = 0; j < dim && basis.size() < dim; ++j) {
    Vec e(dim, Amplitude{0.0, 0.0});
    e[j] = Amplitude{1.0, 0.0};
    add_orthogonal(std::move(e));
  }

  RngStream seeder(base.seed, "experiment/probe-info");
  RngStream sampler(base.seed, "experiment/probe-measure");
  std::map<std::pair<int, int>, long> counts;
  long total = 0;
  for (int i = 0; i < trials; ++i) {
    const ProtocolConfig cfg = base.with_seed(seeder.next_u64());
    const Transcript t = run_protocol(cfg, attack);
    const std::vector<CaseLabel> classes = classify_cases(t);
    for (std::size_t pos = 0; pos < classes.size(); ++pos) {
      if (classes[pos] != CaseLabel::ZSift) {
        continue;
      }
      const auto& remainder = t.oracle.probe_remainders[pos];
      if (!remainder || remainder->dim() != static_cast<int>(dim)) {
        continue;
      }
      const int dealt = t.oracle.final_origins[pos];
      const int bit = t.alice.outcomes.at(dealt);

      std::vector<double> probs;
      probs.reserve(basis.size());
      double sum = 0.0;
      for (const Vec& v : basis) {
        Amplitude a{0.0, 0.0};
        for (std::size_t j = 0; j < dim; ++j) {
          a += std::conj(v[j]) * remainder->amp(static_cast<int>(j));
        }
        probs.push_back(std::norm(a));
        sum += probs.back();
      }
      int outcome = static_cast<int>(probs.size()) - 1;
      double draw = sampler.next_double() * sum;
      for (std::size_t j = 0; j < probs.size(); ++j) {
        if (draw < probs[j]) {
          outcome = static_cast<int>(j);
          break;
        }
        draw -= probs[j];
      }
      ++counts[{bit, outcome}];
      ++total;
    }
  }

  if (total == 0) {
    return 0.0;
  }
  std::map<int, double> p_bit;
  std::map<int, double> p_out;
  for (const auto& [key, n] : counts) {
    const double p = static_cast<double>(n) / total;
    p_bit[key.first] += p;
    p_out[key.second] += p;
  }
  double mi = 0.0;
  for (const auto& [key, n] : counts) {
    const double p = static_cast<double>(n) / total;
    if (p > 0.0) {
      mi += p * std::log2(p / (p_bit[key.first] * p_out[key.second]));
    }
  }
  return std::max(0.0, mi);
}

CollusionOutcome collusion_experiment(const ProtocolConfig& base,
                                      const CollusionParams& params,
                                      int trials) {
  if (trials <= 0) {
    throw std::invalid_argument("trials must be positive");
  }
  const AttackSpec attack = AttackSpec::collude(params);
  attack.validate(base.num_bobs);

  CollusionOutcome out;
  out.stats.attack = attack.label();
  out.stats.secret_length = base.secret_length;
  out.stats.num_bobs = base.num_bobs;
  out.stats.epsilon = base.epsilon;

  std::vector<bool> dishonest(static_cast<std::size_t>(base.num_bobs) + 1,
                              false);
  for (const int i : params.dishonest) {
    dishonest[static_cast<std::size_t>(i)] = true;
  }

  RngStream seeder(base.seed, "experiment/" + attack.label());
  for (int trial = 0; trial < trials; ++trial) {
    const ProtocolConfig cfg = base.with_seed(seeder.next_u64());
    const Transcript t = run_protocol(cfg, attack);
    tally_run(out.stats, t);

    if (params.strategy != CollusionStrategy::ShareOrders) {
      continue;
    }

    // The third party learns the dishonest orders and guesses the rest
    // uniformly; measured positions are public either way.
    RngStream guesser(cfg.seed, "msqss/order-guess");
    bool all_exact = true;
    std::vector<std::vector<int>> tables;
    tables.reserve(t.bobs.size());
    for (std::size_t i = 0; i < t.bobs.size(); ++i) {
      const HopRecord& real = t.bobs[i].announced;
      if (dishonest[i + 1]) {
        tables.push_back(hop_table(real));
        continue;
      }
      const Permutation guessed =
          Permutation::random(real.perm.size(), guesser);
      all_exact = all_exact && guessed == real.perm;
      const HopRecord guessed_hop{real.party, {}, real.discards, guessed};
      tables.push_back(hop_table(guessed_hop));
    }
    if (all_exact) {
      ++out.exact_order_guesses;
    }
    if (!t.aborted()) {
      ++out.completed;
      const auto secret = reconstruct_secret_with_tables(t, tables);
      if (secret && *secret == t.secret) {
        ++out.recovered;
      }
    }
  }

  finalize_stats(out.stats, 0.0);
  out.exact_rate = static_cast<double>(out.exact_order_guesses) / trials;
  out.exact_interval = wilson_interval(out.exact_order_guesses, trials);
  out.recovery_rate =
      out.completed ? static_cast<double>(out.recovered) / out.completed : 0.0;
  return out;
}

double collusion_recovery_fraction(const Transcript& t, int honest_bob,
                                   int max_len) {
  if (t.aborted()) {
    throw std::invalid_argument("run did not complete");
  }
  if (honest_bob < 1 || honest_bob > static_cast<int>(t.bobs.size())) {
    throw std::invalid_argument("honest participant index out of range");
  }
  const HopRecord& honest =
      t.bobs[static_cast<std::size_t>(honest_bob) - 1].announced;
  const int len = honest.perm.size();
  if (len > max_len) {
    throw std::invalid_argument("sequence too long to enumerate");
  }

  std::vector<std::vector<int>> tables;
  for (std::size_t i = 0; i < t.bobs.size(); ++i) {
    tables.push_back(hop_table(t.bobs[i].announced));
  }

  std::vector<int> dest(static_cast<std::size_t>(len));
  std::iota(dest.begin(), dest.end(), 1);
  long matches = 0;
  long count = 0;
  do {
    const HopRecord candidate{honest.party, {}, honest.discards,
                              Permutation(dest)};
    tables[static_cast<std::size_t>(honest_bob) - 1] = hop_table(candidate);
    const auto secret = reconstruct_secret_with_tables(t, tables);
    matches += secret && *secret == t.secret ? 1 : 0;
    ++count;
  } while (std::next_permutation(dest.begin(), dest.end()));
  return static_cast<double>(matches) / static_cast<double>(count);
}

}  // namespace msqss
