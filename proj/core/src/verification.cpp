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

#include "msqss/verification.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace msqss {

namespace {

// Position translations across the whole chain, derived once from the
// announced records.  Index h holds, for each position of the sequence
// entering hop h (h == participant count means the final sequence), the
// dealt-sequence position of the qubit there.
struct TraceTables {
  std::vector<std::vector<int>> incoming_dealt;
};

TraceTables build_trace_tables(const Transcript& t) {
  if (!t.alice.perm) {
    throw std::invalid_argument("transcript lacks the dealer's order");
  }
  TraceTables tables;
  const Permutation alice_inv = t.alice.perm->inverted();
  std::vector<int> current(static_cast<std::size_t>(alice_inv.size()));
  for (int pos = 1; pos <= alice_inv.size(); ++pos) {
    current[static_cast<std::size_t>(pos) - 1] = alice_inv.dest(pos);
  }
  tables.incoming_dealt.push_back(current);
  for (const BobRecord& bob : t.bobs) {
    const HopRecord& hop = bob.announced;
    const DiscardMap dmap = hop.discard_map();
    std::vector<int> next(static_cast<std::size_t>(hop.perm.size()), 0);
    for (int pos = 1; pos <= static_cast<int>(current.size()); ++pos) {
      if (const auto post = dmap.to_post(pos)) {
        next[static_cast<std::size_t>(hop.perm.dest(*post)) - 1] =
            current[static_cast<std::size_t>(pos) - 1];
      }
    }
    tables.incoming_dealt.push_back(next);
    current = tables.incoming_dealt.back();
  }
  return tables;
}

bool balance_exceeded(int ones, int total, const CheckConfig& cfg) {
  if (total < cfg.min_samples) {
    return false;
  }
  const double freq = static_cast<double>(ones) / total;
  const double band = cfg.deviation_z * std::sqrt(0.25 / total);
  return std::abs(freq - 0.5) > band;
}

const Announcement* find_announcement(const Transcript& t,
                                      const std::string& step,
                                      const std::string& sender,
                                      const std::string& type) {
  for (const Announcement& a : t.announcements) {
    if (a.step == step && a.sender == sender && a.type == type) {
      return &a;
    }
  }
  return nullptr;
}

}  // namespace

TestBitPolicy TestBitPolicy::count(int n) {
  if (n < 0) {
    throw std::invalid_argument("test bit count must be non-negative");
  }
  return {Kind::Count, static_cast<double>(n)};
}

TestBitPolicy TestBitPolicy::fraction(double f) {
  if (!(f >= 0.0 && f <= 1.0)) {
    throw std::invalid_argument("test bit fraction must lie in [0, 1]");
  }
  return {Kind::Fraction, f};
}

int TestBitPolicy::resolve(int candidates, int secret_length) const {
  if (candidates <= 0) {
    return 0;
  }
  int want = 0;
  switch (kind) {
    case Kind::Surplus:
      want = std::max(candidates - secret_length, 1);
      break;
    case Kind::Count:
      want = static_cast<int>(value);
      break;
    case Kind::Fraction:
      want = static_cast<int>(value * candidates);
      break;
  }
  return std::clamp(want, 0, candidates);
}

const char* case_name(CaseLabel label) {
  switch (label) {
    case CaseLabel::XCtrl:
      return "x-ctrl";
    case CaseLabel::XSift:
      return "x-sift";
    case CaseLabel::ZCtrl:
      return "z-ctrl";
    case CaseLabel::ZSift:
      return "z-sift";
  }
  return "?";
}

int announced_trace_to_alice(const Transcript& t, int final_position) {
  const TraceTables tables = build_trace_tables(t);
  const auto& finals = tables.incoming_dealt.back();
  if (final_position < 1 ||
      final_position > static_cast<int>(finals.size())) {
    throw std::out_of_range("final position out of range");
  }
  return finals[static_cast<std::size_t>(final_position) - 1];
}

int announced_trace_measured_to_alice(const Transcript& t, int bob,
                                      int position) {
  int pos = position;
  for (int j = bob - 1; j >= 1; --j) {
    pos = trace_to_upstream(pos, t.bobs[static_cast<std::size_t>(j) - 1].announced);
  }
  if (!t.alice.perm) {
    throw std::invalid_argument("transcript lacks the dealer's order");
  }
  return t.alice.perm->inverted().dest(pos);
}

std::optional<int> announced_trace_to_final(const Transcript& t,
                                            int dealt_position) {
  if (!t.alice.perm) {
    throw std::invalid_argument("transcript lacks the dealer's order");
  }
  int pos = t.alice.perm->dest(dealt_position);
  for (const BobRecord& bob : t.bobs) {
    const auto out = trace_through_hop(pos, bob.announced);
    if (!out) {
      return std::nullopt;
    }
    pos = *out;
  }
  return pos;
}

std::vector<int> announced_ctrl_final_positions(const Transcript& t) {
  const TraceTables tables = build_trace_tables(t);
  const auto& finals = tables.incoming_dealt.back();
  std::vector<int> out;
  for (int pos = 1; pos <= static_cast<int>(finals.size()); ++pos) {
    const int dealt = finals[static_cast<std::size_t>(pos) - 1];
    if (t.alice.outcomes.find(dealt) == t.alice.outcomes.end()) {
      out.push_back(pos);
    }
  }
  return out;
}

std::vector<CaseLabel> classify_cases(const Transcript& t) {
  const TraceTables tables = build_trace_tables(t);
  const auto& finals = tables.incoming_dealt.back();
  if (finals.size() != t.tp.bases.size()) {
    throw std::invalid_argument("trace tables disagree with the basis record");
  }
  std::vector<CaseLabel> out;
  out.reserve(finals.size());
  for (std::size_t i = 0; i < finals.size(); ++i) {
    const bool sift =
        t.alice.outcomes.find(finals[i]) != t.alice.outcomes.end();
    if (t.tp.bases[i] == Basis::X) {
      out.push_back(sift ? CaseLabel::XSift : CaseLabel::XCtrl);
    } else {
      out.push_back(sift ? CaseLabel::ZSift : CaseLabel::ZCtrl);
    }
  }
  return out;
}

std::vector<int> key_candidates(const Transcript& t) {
  const TraceTables tables = build_trace_tables(t);
  const auto& finals = tables.incoming_dealt.back();
  std::vector<int> out;
  for (std::size_t i = 0; i < finals.size(); ++i) {
    if (t.tp.bases[i] == Basis::Z &&
        t.alice.outcomes.find(finals[i]) != t.alice.outcomes.end()) {
      out.push_back(finals[i]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CheckReport eavesdropping_check(const Transcript& t, const CheckConfig& cfg) {
  CheckReport report;
  report.check = "eavesdropping";

  const TraceTables tables = build_trace_tables(t);
  for (std::size_t i = 0; i < t.bobs.size(); ++i) {
    const HopRecord& hop = t.bobs[i].announced;
    BobCheckStats stats;
    stats.bob = static_cast<int>(i) + 1;
    for (const auto& [pos, outcome] : hop.measured) {
      const int dealt =
          tables.incoming_dealt[i][static_cast<std::size_t>(pos) - 1];
      const auto it = t.alice.outcomes.find(dealt);
      if (it != t.alice.outcomes.end()) {
        ++stats.sift_total;
        if (outcome != it->second) {
          ++stats.sift_mismatches;
        }
      } else {
        ++stats.ctrl_total;
        stats.ctrl_ones += outcome;
      }
    }
    report.per_bob.push_back(stats);
  }

  for (const BobCheckStats& stats : report.per_bob) {
    if (stats.sift_total > 0 &&
        static_cast<double>(stats.sift_mismatches) >
            cfg.sift_error_threshold * stats.sift_total) {
      report.pass = false;
      report.reason = "participant " + std::to_string(stats.bob) +
                      " disclosed " + std::to_string(stats.sift_mismatches) +
                      " of " + std::to_string(stats.sift_total) +
                      " outcomes disagreeing with the dealer's record";
      return report;
    }
  }
  for (const BobCheckStats& stats : report.per_bob) {
    if (balance_exceeded(stats.ctrl_ones, stats.ctrl_total, cfg)) {
      report.pass = false;
      report.reason = "participant " + std::to_string(stats.bob) +
                      " measured a biased distribution on untouched qubits";
      return report;
    }
  }
  return report;
}

CheckReport honesty_check(const Transcript& t, const CheckConfig& cfg) {
  CheckReport report;
  report.check = "honesty";

  const std::vector<CaseLabel> classes = classify_cases(t);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    CaseStats& stats =
        report.cases[static_cast<std::size_t>(classes[i])];
    ++stats.total;
    stats.ones += t.tp.outcomes[i];
  }

  const CaseStats& x_ctrl =
      report.cases[static_cast<std::size_t>(CaseLabel::XCtrl)];
  if (x_ctrl.ones > 0) {
    report.pass = false;
    report.reason = "an untouched qubit measured in X did not read '+'";
    return report;
  }
  const CaseStats& x_sift =
      report.cases[static_cast<std::size_t>(CaseLabel::XSift)];
  if (balance_exceeded(x_sift.ones, x_sift.total, cfg)) {
    report.pass = false;
    report.reason = "replaced qubits measured in X look biased";
    return report;
  }
  const CaseStats& z_ctrl =
      report.cases[static_cast<std::size_t>(CaseLabel::ZCtrl)];
  if (balance_exceeded(z_ctrl.ones, z_ctrl.total, cfg)) {
    report.pass = false;
    report.reason = "untouched qubits measured in Z look biased";
    return report;
  }

  for (const int dealt : t.test_bit_positions) {
    const auto final_pos = announced_trace_to_final(t, dealt);
    if (!final_pos) {
      report.pass = false;
      report.reason = "a test qubit is missing from the final sequence";
      return report;
    }
    ++report.test_bits_checked;
    const int announced =
        t.tp.outcomes[static_cast<std::size_t>(*final_pos) - 1];
    if (announced != t.alice.outcomes.at(dealt)) {
      ++report.test_bit_mismatches;
    }
  }
  if (report.test_bit_mismatches > 0) {
    report.pass = false;
    report.reason =
        std::to_string(report.test_bit_mismatches) + " of " +
        std::to_string(report.test_bits_checked) +
        " test bits disagree with the dealer's record";
  }
  return report;
}

std::optional<std::string> extract_key(const Transcript& t) {
  const std::vector<int> candidates = key_candidates(t);
  std::vector<int> usable;
  usable.reserve(candidates.size());
  for (const int dealt : candidates) {
    if (!std::binary_search(t.test_bit_positions.begin(),
                            t.test_bit_positions.end(), dealt)) {
      usable.push_back(dealt);
    }
  }
  if (static_cast<int>(usable.size()) < t.config.secret_length) {
    return std::nullopt;
  }
  std::string key;
  key.reserve(static_cast<std::size_t>(t.config.secret_length));
  for (int i = 0; i < t.config.secret_length; ++i) {
    key.push_back(
        t.alice.outcomes.at(usable[static_cast<std::size_t>(i)]) ? '1' : '0');
  }
  return key;
}

std::string xor_bits(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("bit strings differ in length");
  }
  std::string out(a.size(), '0');
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] != '0' && a[i] != '1') || (b[i] != '0' && b[i] != '1')) {
      throw std::invalid_argument("inputs must be bit strings");
    }
    out[i] = a[i] != b[i] ? '1' : '0';
  }
  return out;
}

std::optional<std::string> reconstruct_secret(const Transcript& t) {
  std::vector<std::vector<int>> tables;
  for (std::size_t i = 0; i < t.bobs.size(); ++i) {
    const Announcement* share = find_announcement(
        t, "step08", "bob" + std::to_string(i + 1), "order_share");
    if (!share) {
      return std::nullopt;
    }
    std::vector<int> table(share->pairs.size(), 0);
    for (const auto& [in, out] : share->pairs) {
      if (in < 1 || in > static_cast<int>(table.size())) {
        return std::nullopt;
      }
      table[static_cast<std::size_t>(in) - 1] = out;
    }
    tables.push_back(std::move(table));
  }
  return reconstruct_secret_with_tables(t, tables);
}

std::optional<std::string> reconstruct_secret_with_tables(
    const Transcript& t, const std::vector<std::vector<int>>& tables) {
  const Announcement* order =
      find_announcement(t, "step08", "alice", "case04_order");
  const Announcement* symbols =
      find_announcement(t, "step04", "tp", "basis_outcomes");
  const Announcement* cipher =
      find_announcement(t, "step08", "alice", "ciphertext");
  if (!order || !symbols || !cipher) {
    return std::nullopt;
  }

  std::vector<std::pair<int, char>> bits;  // (dealt position, key bit)
  for (const auto& [dealt, sent] : order->pairs) {
    int pos = sent;
    for (const std::vector<int>& table : tables) {
      if (pos < 1 || pos > static_cast<int>(table.size())) {
        return std::nullopt;
      }
      pos = table[static_cast<std::size_t>(pos) - 1];
      if (pos == 0) {
        return std::nullopt;
      }
    }
    if (pos < 1 || pos > static_cast<int>(symbols->bits.size())) {
      return std::nullopt;
    }
    const char symbol = symbols->bits[static_cast<std::size_t>(pos) - 1];
    if (symbol != '0' && symbol != '1') {
      return std::nullopt;
    }
    bits.emplace_back(dealt, symbol);
  }

  std::sort(bits.begin(), bits.end());
  if (static_cast<int>(bits.size()) < t.config.secret_length) {
    return std::nullopt;
  }
  std::string key;
  key.reserve(static_cast<std::size_t>(t.config.secret_length));
  for (int i = 0; i < t.config.secret_length; ++i) {
    key.push_back(bits[static_cast<std::size_t>(i)].second);
  }
  return xor_bits(cipher->bits, key);
}

std::vector<std::string> scan_log_for_key_leaks(const Transcript& t) {
  std::vector<std::string> issues;
  for (const Announcement& a : t.announcements) {
    if (a.step == "step08") {
      break;
    }
    if (a.type == "case04_order") {
      issues.push_back("order pairs for key qubits appear in " + a.step);
    }
    if (a.sender != "alice") {
      continue;
    }
    if (a.type != "ctrl_positions" && a.type != "test_positions") {
      issues.push_back("dealer announced '" + a.type + "' in " + a.step);
    }
    if (!a.pairs.empty()) {
      issues.push_back("dealer announced position pairs in " + a.step);
    }
    if (!a.bits.empty()) {
      issues.push_back("dealer announced outcome bits in " + a.step);
    }
  }
  return issues;
}

}  // namespace msqss
