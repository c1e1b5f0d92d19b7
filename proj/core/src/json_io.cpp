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

#include "msqss/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace msqss {

namespace {

// Emits integral values as integers so the common configurations serialize
// without floating-point text.
ordered_json json_number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15) {
    return static_cast<std::int64_t>(v);
  }
  return v;
}

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

ordered_json pairs_to_json(const std::vector<std::pair<int, int>>& pairs) {
  ordered_json out = ordered_json::array();
  for (const auto& [a, b] : pairs) {
    out.push_back({a, b});
  }
  return out;
}

ordered_json hop_to_json(const HopRecord& real, const HopRecord& announced) {
  ordered_json j;
  j["party"] = real.party;
  j["measured"] = pairs_to_json(real.measured);
  j["removed"] = real.discards;
  j["order"] = real.perm.dest_table();
  if (!(announced.perm == real.perm)) {
    j["announced_order"] = announced.perm.dest_table();
  }
  return j;
}

ordered_json check_to_json(const CheckReport& r) {
  ordered_json j;
  j["check"] = r.check;
  j["pass"] = r.pass;
  if (!r.reason.empty()) {
    j["reason"] = r.reason;
  }
  ordered_json per_bob = ordered_json::array();
  for (const BobCheckStats& s : r.per_bob) {
    per_bob.push_back({{"bob", s.bob},
                       {"sift_total", s.sift_total},
                       {"sift_mismatches", s.sift_mismatches},
                       {"ctrl_total", s.ctrl_total},
                       {"ctrl_ones", s.ctrl_ones}});
  }
  j["per_bob"] = per_bob;
  ordered_json cases;
  for (std::size_t i = 0; i < kCaseCount; ++i) {
    cases[case_name(static_cast<CaseLabel>(i))] = {
        {"total", r.cases[i].total}, {"ones", r.cases[i].ones}};
  }
  j["cases"] = cases;
  j["test_bits_checked"] = r.test_bits_checked;
  j["test_bit_mismatches"] = r.test_bit_mismatches;
  return j;
}

TestBitPolicy::Kind test_bit_kind_from_string(const std::string& s) {
  if (s == "surplus") {
    return TestBitPolicy::Kind::Surplus;
  }
  if (s == "count") {
    return TestBitPolicy::Kind::Count;
  }
  if (s == "fraction") {
    return TestBitPolicy::Kind::Fraction;
  }
  throw std::invalid_argument("unknown test bit policy: " + s);
}

const char* test_bit_kind_name(TestBitPolicy::Kind kind) {
  switch (kind) {
    case TestBitPolicy::Kind::Surplus:
      return "surplus";
    case TestBitPolicy::Kind::Count:
      return "count";
    case TestBitPolicy::Kind::Fraction:
      return "fraction";
  }
  return "?";
}

}  // namespace

ordered_json config_to_json(const ProtocolConfig& config) {
  ordered_json j;
  j["secret_length"] = config.secret_length;
  j["num_bobs"] = config.num_bobs;
  j["epsilon"] = config.epsilon.to_string();
  j["seed"] = config.seed;
  ordered_json checks;
  checks["sift_error_threshold"] = json_number(config.checks.sift_error_threshold);
  checks["deviation_z"] = json_number(config.checks.deviation_z);
  checks["min_samples"] = config.checks.min_samples;
  checks["test_bits"] = {
      {"policy", test_bit_kind_name(config.checks.test_bits.kind)},
      {"value", json_number(config.checks.test_bits.value)}};
  j["checks"] = checks;
  return j;
}

ProtocolConfig config_from_json(const ordered_json& j) {
  ProtocolConfig config;
  if (j.contains("secret_length")) {
    config.secret_length = j.at("secret_length").get<int>();
  }
  if (j.contains("num_bobs")) {
    config.num_bobs = j.at("num_bobs").get<int>();
  }
  if (j.contains("epsilon")) {
    const auto& e = j.at("epsilon");
    if (e.is_string()) {
      config.epsilon = Rational::parse(e.get<std::string>());
    } else if (e.is_number_integer()) {
      config.epsilon = Rational(e.get<std::int64_t>());
    } else {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", e.get<double>());
      config.epsilon = Rational::parse(buf);
    }
  }
  if (j.contains("seed")) {
    config.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("checks")) {
    const auto& c = j.at("checks");
    if (c.contains("sift_error_threshold")) {
      config.checks.sift_error_threshold =
          c.at("sift_error_threshold").get<double>();
    }
    if (c.contains("deviation_z")) {
      config.checks.deviation_z = c.at("deviation_z").get<double>();
    }
    if (c.contains("min_samples")) {
      config.checks.min_samples = c.at("min_samples").get<int>();
    }
    if (c.contains("test_bits")) {
      const auto& tb = c.at("test_bits");
      config.checks.test_bits.kind =
          test_bit_kind_from_string(tb.at("policy").get<std::string>());
      if (tb.contains("value")) {
        config.checks.test_bits.value = tb.at("value").get<double>();
      }
    }
  }
  return config;
}

ordered_json transcript_to_json(const Transcript& t) {
  ordered_json j;
  j["config"] = config_to_json(t.config);
  j["attack"] = t.attack;
  j["decisions"] = t.decisions;

  ordered_json alice;
  alice["sift_positions"] = t.alice.sift_positions;
  ordered_json outcomes = ordered_json::array();
  for (const auto& [pos, bit] : t.alice.outcomes) {
    outcomes.push_back({pos, bit});
  }
  alice["outcomes"] = outcomes;
  if (t.alice.perm) {
    alice["order"] = t.alice.perm->dest_table();
  }
  j["alice"] = alice;

  ordered_json bobs = ordered_json::array();
  for (const BobRecord& bob : t.bobs) {
    bobs.push_back(hop_to_json(bob.real, bob.announced));
  }
  j["bobs"] = bobs;

  std::string bases;
  std::string outcome_bits;
  bases.reserve(t.tp.bases.size());
  outcome_bits.reserve(t.tp.outcomes.size());
  for (const Basis b : t.tp.bases) {
    bases.push_back(b == Basis::X ? 'X' : 'Z');
  }
  for (const int o : t.tp.outcomes) {
    outcome_bits.push_back(o ? '1' : '0');
  }
  j["tp"] = {{"bases", bases}, {"outcomes", outcome_bits}};

  ordered_json announcements = ordered_json::array();
  for (const Announcement& a : t.announcements) {
    ordered_json e;
    e["step"] = a.step;
    e["sender"] = a.sender;
    e["type"] = a.type;
    if (!a.positions.empty()) {
      e["positions"] = a.positions;
    }
    if (!a.pairs.empty()) {
      e["pairs"] = pairs_to_json(a.pairs);
    }
    if (!a.bits.empty()) {
      e["bits"] = a.bits;
    }
    announcements.push_back(e);
  }
  j["announcements"] = announcements;

  ordered_json checks = ordered_json::array();
  for (const CheckReport& r : t.checks) {
    checks.push_back(check_to_json(r));
  }
  j["checks"] = checks;

  j["test_bit_positions"] = t.test_bit_positions;
  j["secret"] = t.secret;
  j["key"] = t.key ? ordered_json(*t.key) : ordered_json(nullptr);
  j["ciphertext"] =
      t.ciphertext ? ordered_json(*t.ciphertext) : ordered_json(nullptr);
  j["abort_reason"] =
      t.abort_reason ? ordered_json(*t.abort_reason) : ordered_json(nullptr);
  return j;
}

std::string detection_csv(const std::vector<DetectionStats>& rows) {
  std::string out = "attack,params,L,M,epsilon,trials,detected,rate,lo,hi,predicted\n";
  for (const DetectionStats& r : rows) {
    out += r.attack;
    out += ',';
    out += r.params;
    out += ',';
    out += std::to_string(r.secret_length);
    out += ',';
    out += std::to_string(r.num_bobs);
    out += ',';
    out += r.epsilon.to_string();
    out += ',';
    out += std::to_string(r.trials);
    out += ',';
    out += std::to_string(r.detected);
    out += ',';
    out += fixed6(r.rate);
    out += ',';
    out += fixed6(r.interval.lo);
    out += ',';
    out += fixed6(r.interval.hi);
    out += ',';
    if (r.predicted) {
      out += fixed6(*r.predicted);
    }
    out += '\n';
  }
  return out;
}

std::string efficiency_csv(const std::vector<SharingScheme>& schemes,
                           int participants_lo, int participants_hi,
                           const std::vector<Rational>& epsilons) {
  if (participants_lo < 1 || participants_hi < participants_lo) {
    throw std::invalid_argument("invalid participant range");
  }
  std::string out = "protocol,M,epsilon,eta\n";
  for (const SharingScheme scheme : schemes) {
    for (int m = participants_lo; m <= participants_hi; ++m) {
      for (const Rational& eps : epsilons) {
        out += scheme_name(scheme);
        out += ',';
        out += std::to_string(m);
        out += ',';
        out += eps.to_string();
        out += ',';
        out += scheme_efficiency(scheme, m, eps).to_decimal(12);
        out += '\n';
      }
    }
  }
  return out;
}

ordered_json manifest_json(const std::string& command,
                           const ordered_json& config, std::uint64_t seed,
                           const std::string& output_sha256) {
  ordered_json j;
  j["command"] = command;
  j["config"] = config;
  j["seed"] = seed;
  j["output_sha256"] = output_sha256;
  return j;
}

std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace msqss
