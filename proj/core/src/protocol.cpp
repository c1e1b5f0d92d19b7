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

#include "msqss/protocol.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "msqss/verification.hpp"

namespace msqss {

namespace {

std::string bob_name(int i) { return "bob" + std::to_string(i); }

void require(bool ok, const std::string& what) {
  if (!ok) {
    throw std::invalid_argument(what);
  }
}

// Sorted, distinct, all within [1, n].
void validate_positions(const std::vector<int>& positions, int n,
                        const std::string& what) {
  int prev = 0;
  for (const int p : positions) {
    require(p >= 1 && p <= n, what + ": position out of range");
    require(p > prev, what + ": positions not strictly increasing");
    prev = p;
  }
}

struct ItemMeasurement {
  int outcome = 0;
  std::optional<PureState> remainder;
};

// Measures the travel qubit of an item whose payload is a genuine state,
// collapsing onto a scripted branch when `forced` is set.  Joint payloads
// are measured on their first factor and yield the probe remainder.
ItemMeasurement measure_travel(TravelItem& item, Basis basis, RngStream& born,
                               std::optional<int> forced) {
  auto& state = std::get<PureState>(item.payload);
  if (state.dim() == 2) {
    const Measurement res = forced ? collapse_qubit(state, basis, *forced)
                                   : measure_qubit(state, basis, born);
    item.payload = res.post;
    return {res.outcome, std::nullopt};
  }
  const SubsystemMeasurement res =
      forced ? collapse_first_subsystem(state, 2, basis, *forced)
             : measure_first_subsystem(state, 2, basis, born);
  const QubitLabel label =
      basis == Basis::Z ? (res.outcome ? QubitLabel::One : QubitLabel::Zero)
                        : (res.outcome ? QubitLabel::Minus : QubitLabel::Plus);
  item.payload = make_qubit(label);
  return {res.outcome, res.remainder};
}

char item_symbol(const TravelItem& item) {
  if (const auto* state = std::get_if<PureState>(&item.payload)) {
    if (state->dim() == 2) {
      if (const auto label = classify_qubit(*state)) {
        switch (*label) {
          case QubitLabel::Zero:
            return '0';
          case QubitLabel::One:
            return '1';
          case QubitLabel::Plus:
            return '+';
          case QubitLabel::Minus:
            return '-';
        }
      }
    }
  }
  return '?';
}

void snapshot(Transcript& t, const RunOptions& options, const std::string& key,
              const QubitSequence& seq) {
  if (!options.capture_snapshots) {
    return;
  }
  std::vector<std::pair<int, char>> items;
  items.reserve(seq.size());
  for (int pos = 1; pos <= seq.size(); ++pos) {
    const TravelItem& item = seq.at(pos);
    items.emplace_back(item.origin, item_symbol(item));
  }
  t.oracle.snapshots[key] = std::move(items);
}

// A fresh Z eigenstate whose value is pinned to (leg, position), so the
// qubit and qudit interception flavors consult identical bits.
int substituted_value(RngStream& attack_root, int leg, int position) {
  RngStream s = attack_root.derive(
      "fake/leg" + std::to_string(leg) + "/pos" + std::to_string(position));
  return static_cast<int>(s.next_below(2));
}

// State kept by an intercepting third party across the hops.
struct InterceptState {
  bool active = false;
  bool qudit = false;
  QubitSequence stored;  // the genuine items, aligned with the current fakes
};

QubitSequence make_fakes(InterceptState& icpt, RngStream& attack_root, int leg,
                         int count) {
  std::vector<TravelItem> items;
  items.reserve(static_cast<std::size_t>(count));
  for (int pos = 1; pos <= count; ++pos) {
    TravelItem item;
    if (icpt.qudit) {
      item.payload = QuditFake{pos};
    } else {
      const int value = substituted_value(attack_root, leg, pos);
      item.payload = make_qubit(value ? QubitLabel::One : QubitLabel::Zero);
    }
    items.push_back(std::move(item));
  }
  return QubitSequence(std::move(items));
}

int fake_value(const TravelItem& item) {
  const auto& state = std::get<PureState>(item.payload);
  const auto label = classify_qubit(state);
  if (!label) {
    throw std::logic_error("substituted carrier lost its Z eigenstate");
  }
  return *label == QubitLabel::One ? 1 : 0;
}

// After participant `bob` processed the fakes of leg `bob`, works out which
// rearrangement they applied and replays it on the stored genuine sequence.
// The qudit flavor reads it off exactly; the qubit flavor samples uniformly
// among the (removal set, matching) pairs consistent with the observed
// values.
void reconcile_intercept(InterceptState& icpt, const QubitSequence& received,
                         const std::vector<int>& sent_values,
                         RngStream& attack_root, int hop, Transcript& t) {
  const int prev_len = icpt.stored.size();
  const int cur_len = received.size();

  std::vector<int> removed;
  std::vector<int> dest(static_cast<std::size_t>(cur_len), 0);

  if (icpt.qudit) {
    std::vector<int> slot_of(static_cast<std::size_t>(prev_len) + 1, 0);
    for (int q = 1; q <= cur_len; ++q) {
      const int label = std::get<QuditFake>(received.at(q).payload).label;
      slot_of[static_cast<std::size_t>(label)] = q;
    }
    for (int p = 1; p <= prev_len; ++p) {
      if (slot_of[static_cast<std::size_t>(p)] == 0) {
        removed.push_back(p);
      }
    }
    const DiscardMap dmap(removed);
    for (int p = 1; p <= prev_len; ++p) {
      if (const auto post = dmap.to_post(p)) {
        dest[static_cast<std::size_t>(*post) - 1] =
            slot_of[static_cast<std::size_t>(p)];
      }
    }
  } else {
    RngStream infer = attack_root.derive("infer/hop" + std::to_string(hop));

    std::array<std::vector<int>, 2> sent_pos;  // by value
    for (int p = 1; p <= prev_len; ++p) {
      sent_pos[static_cast<std::size_t>(sent_values[static_cast<std::size_t>(
                   p - 1)])].push_back(p);
    }
    std::array<std::vector<int>, 2> slots;
    for (int q = 1; q <= cur_len; ++q) {
      slots[static_cast<std::size_t>(fake_value(received.at(q)))].push_back(q);
    }

    std::array<std::vector<int>, 2> survivors;
    for (int v = 0; v < 2; ++v) {
      auto& pool = sent_pos[static_cast<std::size_t>(v)];
      const int gone = static_cast<int>(pool.size()) -
                       static_cast<int>(slots[static_cast<std::size_t>(v)].size());
      if (gone < 0) {
        throw std::logic_error("substituted sequence gained values");
      }
      std::vector<int> picked =
          infer.sample_positions(static_cast<int>(pool.size()), gone);
      std::size_t next_pick = 0;
      for (std::size_t idx = 0; idx < pool.size(); ++idx) {
        if (next_pick < picked.size() &&
            static_cast<int>(idx) + 1 == picked[next_pick]) {
          removed.push_back(pool[idx]);
          ++next_pick;
        } else {
          survivors[static_cast<std::size_t>(v)].push_back(pool[idx]);
        }
      }
    }
    std::sort(removed.begin(), removed.end());

    const DiscardMap dmap(removed);
    for (int v = 0; v < 2; ++v) {
      auto shuffled = slots[static_cast<std::size_t>(v)];
      infer.shuffle(shuffled);
      const auto& from = survivors[static_cast<std::size_t>(v)];
      for (std::size_t idx = 0; idx < from.size(); ++idx) {
        const auto post = dmap.to_post(from[idx]);
        dest[static_cast<std::size_t>(*post) - 1] = shuffled[idx];
      }
    }
  }

  const Permutation guessed(dest);
  const HopRecord& real = t.bobs[static_cast<std::size_t>(hop) - 1].real;
  t.oracle.intercept_order_exact.push_back(removed == real.discards &&
                                           guessed == real.perm);

  auto [rest, dmap_unused] = remove_positions(std::move(icpt.stored), removed);
  (void)dmap_unused;
  icpt.stored = apply_permutation(std::move(rest), guessed);
}

// Outcome a participant records when Z-measuring an n-level label carrier.
int qudit_outcome(const QuditFake& fake, int leg, int position,
                  const InterceptState& icpt, const AliceRecord& alice,
                  QuditOutcomeMode mode, RngStream& attack_root) {
  const TravelItem& genuine = icpt.stored.at(fake.label);
  const int origin = genuine.origin;
  const auto it = alice.outcomes.find(origin);
  if (mode == QuditOutcomeMode::AlwaysMismatch && it != alice.outcomes.end()) {
    return 1 - it->second;
  }
  return substituted_value(attack_root, leg, position);
}

}  // namespace

int ProtocolConfig::sequence_length() const {
  const Rational n = Rational(4 * static_cast<std::int64_t>(secret_length)) *
                     (Rational(1) + Rational(num_bobs) * epsilon);
  return static_cast<int>(n.floor());
}

int ProtocolConfig::bob_sample_size() const {
  const Rational k =
      Rational(4 * static_cast<std::int64_t>(secret_length)) * epsilon;
  return static_cast<int>(k.floor());
}

void ProtocolConfig::validate() const {
  require(secret_length >= 1, "secret_length must be positive");
  require(num_bobs >= 1, "num_bobs must be positive");
  require(epsilon > Rational(0), "epsilon must be positive");
  require(epsilon <= Rational(1), "epsilon must not exceed 1");
  require(bob_sample_size() >= 1,
          "epsilon too small: participants would sample nothing");
  require(sequence_length() -
                  num_bobs * bob_sample_size() >=
              1,
          "sampling would exhaust the sequence before the third party");
}

bool is_security_abort(const std::string& reason) {
  return reason.rfind("eavesdropping-check", 0) == 0 ||
         reason.rfind("honesty-check", 0) == 0;
}

std::string random_bits(int count, RngStream& rng) {
  std::string bits(static_cast<std::size_t>(count), '0');
  for (char& c : bits) {
    c = rng.next_below(2) ? '1' : '0';
  }
  return bits;
}

SeededDecisions::SeededDecisions(const RngStream& root) : root_(root) {}

RngStream& SeededDecisions::stream(const std::string& label) {
  auto it = streams_.find(label);
  if (it == streams_.end()) {
    it = streams_.emplace(label, root_.derive(label)).first;
  }
  return it->second;
}

std::vector<int> SeededDecisions::sift_positions(int n, int count) {
  return stream("alice/sift").sample_positions(n, count);
}

Permutation SeededDecisions::alice_permutation(int n) {
  return Permutation::random(n, stream("alice/perm"));
}

std::vector<int> SeededDecisions::bob_positions(int bob, int n, int count) {
  return stream(bob_name(bob) + "/pos").sample_positions(n, count);
}

Permutation SeededDecisions::bob_permutation(int bob, int n) {
  return Permutation::random(n, stream(bob_name(bob) + "/perm"));
}

Basis SeededDecisions::tp_basis(int /*final_position*/) {
  return stream("tp/basis").bernoulli(0.5) ? Basis::X : Basis::Z;
}

std::vector<int> SeededDecisions::test_positions(
    const std::vector<int>& candidates, int count) {
  const std::vector<int> picked = stream("alice/test").sample_positions(
      static_cast<int>(candidates.size()), count);
  std::vector<int> out;
  out.reserve(picked.size());
  for (const int idx : picked) {
    out.push_back(candidates[static_cast<std::size_t>(idx) - 1]);
  }
  return out;
}

std::optional<int> SeededDecisions::forced_outcome(const std::string&, int) {
  return std::nullopt;
}

RngStream& SeededDecisions::born(const std::string& party) {
  return stream("born/" + party);
}

ScriptedDecisions::ScriptedDecisions(RunScript script, const RngStream& root)
    : script_(std::move(script)), fallback_(root) {}

std::vector<int> ScriptedDecisions::sift_positions(int n, int count) {
  if (script_.sift_positions) {
    return *script_.sift_positions;
  }
  return fallback_.sift_positions(n, count);
}

Permutation ScriptedDecisions::alice_permutation(int n) {
  if (script_.alice_perm) {
    require(script_.alice_perm->size() == n, "scripted dealer order has wrong length");
    return *script_.alice_perm;
  }
  return fallback_.alice_permutation(n);
}

std::vector<int> ScriptedDecisions::bob_positions(int bob, int n, int count) {
  const auto it = script_.bob_positions.find(bob);
  if (it != script_.bob_positions.end()) {
    return it->second;
  }
  return fallback_.bob_positions(bob, n, count);
}

Permutation ScriptedDecisions::bob_permutation(int bob, int n) {
  const auto it = script_.bob_perms.find(bob);
  if (it != script_.bob_perms.end()) {
    require(it->second.size() == n, "scripted participant order has wrong length");
    return it->second;
  }
  return fallback_.bob_permutation(bob, n);
}

Basis ScriptedDecisions::tp_basis(int final_position) {
  if (script_.tp_x_positions) {
    return script_.tp_x_positions->count(final_position) ? Basis::X : Basis::Z;
  }
  return fallback_.tp_basis(final_position);
}

std::vector<int> ScriptedDecisions::test_positions(
    const std::vector<int>& candidates, int count) {
  if (script_.test_positions) {
    return *script_.test_positions;
  }
  return fallback_.test_positions(candidates, count);
}

std::optional<int> ScriptedDecisions::forced_outcome(const std::string& party,
                                                     int position) {
  const auto it = script_.forced.find({party, position});
  if (it != script_.forced.end()) {
    return it->second;
  }
  return std::nullopt;
}

RngStream& ScriptedDecisions::born(const std::string& party) {
  return fallback_.born(party);
}

Transcript run_protocol(const ProtocolConfig& config, const AttackSpec& attack,
                        const RunOptions& options) {
  config.validate();
  attack.validate(config.num_bobs);

  const int n = config.sequence_length();
  const int k = config.bob_sample_size();
  const int m = config.num_bobs;

  RngStream root(config.seed, "msqss");
  SeededDecisions seeded(root);
  DecisionSource& dec = options.decisions ? *options.decisions : seeded;
  RngStream attack_root = root.derive("attack");

  Transcript t;
  t.config = config;
  t.attack = attack.label();
  t.decisions = dec.scripted() ? "scripted" : "seeded";

  if (options.secret) {
    require(static_cast<int>(options.secret->size()) == config.secret_length,
            "secret length mismatch");
    for (const char c : *options.secret) {
      require(c == '0' || c == '1', "secret must be a bit string");
    }
    t.secret = *options.secret;
  } else {
    RngStream secret_stream = root.derive("alice/secret");
    t.secret = random_bits(config.secret_length, secret_stream);
  }

  const bool fake_state = attack.kind == AttackKind::FakeState;
  const bool entangle = attack.kind == AttackKind::EntangleMeasure;
  InterceptState icpt;
  icpt.active = attack.kind == AttackKind::InterceptResendQubit ||
                attack.kind == AttackKind::InterceptResendQudit;
  icpt.qudit = attack.kind == AttackKind::InterceptResendQudit;
  const bool fake_orders =
      attack.kind == AttackKind::Collusion &&
      attack.collusion->strategy == CollusionStrategy::FakeOrders;

  // Step 1: the third party prepares the travel sequence.  An honest one
  // sends |+> everywhere; a cheating one sends Z eigenstates.
  std::vector<TravelItem> prepared;
  prepared.reserve(static_cast<std::size_t>(n));
  RngStream prepare_stream = attack_root.derive("prepare");
  for (int pos = 1; pos <= n; ++pos) {
    TravelItem item;
    item.origin = pos;
    item.kind = QubitKind::Ctrl;
    if (fake_state) {
      item.payload = make_qubit(prepare_stream.next_below(2)
                                    ? QubitLabel::One
                                    : QubitLabel::Zero);
    } else {
      item.payload = make_qubit(QubitLabel::Plus);
    }
    prepared.push_back(std::move(item));
  }
  QubitSequence seq(std::move(prepared));

  // Step 2: the dealer measures a random half in Z, records the outcomes,
  // sends fresh carriers in their place, and reorders everything.
  std::vector<int> sift = dec.sift_positions(n, n / 2);
  validate_positions(sift, n, "dealer sample");
  t.alice.sift_positions = sift;
  RngStream& alice_born = dec.born("alice");
  for (const int pos : sift) {
    TravelItem& item = seq.at(pos);
    item.kind = QubitKind::Sift;
    const ItemMeasurement res = measure_travel(
        item, Basis::Z, alice_born, dec.forced_outcome("alice", pos));
    t.alice.outcomes[pos] = res.outcome;
    item.payload =
        make_qubit(res.outcome ? QubitLabel::One : QubitLabel::Zero);
  }
  const Permutation alice_perm = dec.alice_permutation(n);
  t.alice.perm = alice_perm;
  seq = apply_permutation(std::move(seq), alice_perm);
  snapshot(t, options, "alice", seq);

  // Transmission toward the first participant.
  if (icpt.active) {
    icpt.stored = seq;
    seq = make_fakes(icpt, attack_root, 1, n);
  } else if (entangle) {
    for (int pos = 1; pos <= n; ++pos) {
      TravelItem& item = seq.at(pos);
      item.payload =
          apply_uf(std::get<PureState>(item.payload), *attack.entangle);
    }
  }

  // Step 3: each participant measures a fixed-size random sample in Z,
  // removes those qubits, and reorders the rest.
  t.bobs.resize(static_cast<std::size_t>(m));
  t.oracle.bob_measured_origins.resize(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) {
    const std::string party = bob_name(i);
    const int len = seq.size();
    std::vector<int> positions = dec.bob_positions(i, len, k);
    validate_positions(positions, len, party + " sample");

    std::vector<int> sent_values;
    if (icpt.active && !icpt.qudit) {
      sent_values.reserve(static_cast<std::size_t>(len));
      for (int pos = 1; pos <= len; ++pos) {
        sent_values.push_back(fake_value(seq.at(pos)));
      }
    }

    RngStream& born = dec.born(party);
    std::vector<std::pair<int, int>> measured;
    measured.reserve(positions.size());
    for (const int pos : positions) {
      TravelItem& item = seq.at(pos);
      int outcome;
      if (const auto* fake = std::get_if<QuditFake>(&item.payload)) {
        outcome = qudit_outcome(*fake, i, pos, icpt, t.alice,
                                attack.qudit_mode, attack_root);
      } else {
        outcome =
            measure_travel(item, Basis::Z, born, dec.forced_outcome(party, pos))
                .outcome;
      }
      measured.emplace_back(pos, outcome);
      t.oracle.bob_measured_origins[static_cast<std::size_t>(i) - 1].push_back(
          item.origin);
    }

    auto [rest, removal_map] = remove_positions(std::move(seq), positions);
    (void)removal_map;
    const Permutation bob_perm = dec.bob_permutation(i, rest.size());
    seq = apply_permutation(std::move(rest), bob_perm);

    BobRecord& record = t.bobs[static_cast<std::size_t>(i) - 1];
    record.real = HopRecord{party, measured, positions, bob_perm};
    record.announced = record.real;
    if (fake_orders &&
        std::find(attack.collusion->dishonest.begin(),
                  attack.collusion->dishonest.end(),
                  i) != attack.collusion->dishonest.end()) {
      RngStream fake_stream = attack_root.derive("fake-order", i);
      record.announced.perm = Permutation::random(seq.size(), fake_stream);
    }
    snapshot(t, options, party, seq);

    if (icpt.active) {
      reconcile_intercept(icpt, seq, sent_values, attack_root, i, t);
      if (i < m) {
        seq = make_fakes(icpt, attack_root, i + 1, seq.size());
      } else {
        seq = std::move(icpt.stored);
      }
    } else if (entangle && i == m) {
      for (int pos = 1; pos <= seq.size(); ++pos) {
        TravelItem& item = seq.at(pos);
        item.payload =
            apply_ur(std::get<PureState>(item.payload), *attack.entangle);
      }
    }
  }

  // Step 4: the third party measures every remaining qubit in a random
  // basis and announces the results in position order.
  const int final_len = seq.size();
  t.oracle.probe_remainders.resize(static_cast<std::size_t>(final_len));
  RngStream& tp_born = dec.born("tp");
  std::string symbols;
  symbols.reserve(static_cast<std::size_t>(final_len));
  for (int pos = 1; pos <= final_len; ++pos) {
    const Basis basis = dec.tp_basis(pos);
    TravelItem& item = seq.at(pos);
    const ItemMeasurement res =
        measure_travel(item, basis, tp_born, dec.forced_outcome("tp", pos));
    t.tp.bases.push_back(basis);
    t.tp.outcomes.push_back(res.outcome);
    t.oracle.probe_remainders[static_cast<std::size_t>(pos) - 1] =
        res.remainder;
    t.oracle.final_origins.push_back(item.origin);
    t.oracle.final_kinds.push_back(item.kind);
    symbols.push_back(outcome_symbol(basis, res.outcome));
  }
  t.announcements.push_back(
      Announcement{"step04", "tp", "basis_outcomes", {}, {}, symbols});

  // Step 5: each participant discloses where they measured; everyone
  // upstream translates those positions, then the outcomes follow.
  for (int i = 1; i <= m; ++i) {
    const HopRecord& hop = t.bobs[static_cast<std::size_t>(i) - 1].announced;
    t.announcements.push_back(Announcement{
        "step05", hop.party, "measured_positions", hop.discards, {}, ""});
    std::vector<int> current = hop.discards;
    for (int j = i - 1; j >= 1; --j) {
      const HopRecord& up = t.bobs[static_cast<std::size_t>(j) - 1].announced;
      std::vector<std::pair<int, int>> pairs;
      std::vector<int> next;
      pairs.reserve(current.size());
      next.reserve(current.size());
      for (const int p : current) {
        const int q = trace_to_upstream(p, up);
        pairs.emplace_back(p, q);
        next.push_back(q);
      }
      t.announcements.push_back(Announcement{
          "step05", bob_name(j), "upstream_translation", {}, pairs, ""});
      current = std::move(next);
    }
    t.announcements.push_back(
        Announcement{"step05", hop.party, "outcomes", {}, hop.measured, ""});
  }

  const CheckReport eavesdropping = eavesdropping_check(t, config.checks);
  t.checks.push_back(eavesdropping);
  std::optional<std::string> abort;
  if (!eavesdropping.pass) {
    abort = "eavesdropping-check: " + eavesdropping.reason;
  }

  // Step 6: positions the third party read in X are traced backward, the
  // dealer reveals which of her positions were untouched, and those are
  // traced forward.  The four cases are then checkable by everyone.
  std::vector<int> x_finals;
  for (int pos = 1; pos <= final_len; ++pos) {
    if (t.tp.bases[static_cast<std::size_t>(pos) - 1] == Basis::X) {
      x_finals.push_back(pos);
    }
  }
  if (!abort && !x_finals.empty()) {
    std::vector<int> current = x_finals;
    for (int j = m; j >= 1; --j) {
      const HopRecord& up = t.bobs[static_cast<std::size_t>(j) - 1].announced;
      std::vector<std::pair<int, int>> pairs;
      std::vector<int> next;
      pairs.reserve(current.size());
      for (const int p : current) {
        const int q = trace_to_upstream(p, up);
        pairs.emplace_back(p, q);
        next.push_back(q);
      }
      t.announcements.push_back(Announcement{
          "step06", bob_name(j), "x_translation", {}, pairs, ""});
      current = std::move(next);
    }
  }

  std::vector<int> ctrl_sent;  // dealer-sequence positions of untouched qubits
  {
    std::vector<bool> is_sift(static_cast<std::size_t>(n) + 1, false);
    for (const int pos : sift) {
      is_sift[static_cast<std::size_t>(pos)] = true;
    }
    for (int dealt = 1; dealt <= n; ++dealt) {
      if (!is_sift[static_cast<std::size_t>(dealt)]) {
        ctrl_sent.push_back(alice_perm.dest(dealt));
      }
    }
    std::sort(ctrl_sent.begin(), ctrl_sent.end());
  }
  if (!abort) {
    t.announcements.push_back(
        Announcement{"step06", "alice", "ctrl_positions", ctrl_sent, {}, ""});
    std::vector<int> current = ctrl_sent;
    for (int j = 1; j <= m; ++j) {
      const HopRecord& hop = t.bobs[static_cast<std::size_t>(j) - 1].announced;
      std::vector<std::pair<int, int>> pairs;
      std::vector<int> next;
      pairs.reserve(current.size());
      for (const int p : current) {
        const auto out = trace_through_hop(p, hop);
        pairs.emplace_back(p, out.value_or(0));
        if (out) {
          next.push_back(*out);
        }
      }
      t.announcements.push_back(Announcement{
          "step06", bob_name(j), "ctrl_translation", {}, pairs, ""});
      current = std::move(next);
    }
  }

  // The dealer picks test bits among her qubits that reached a Z-measured
  // final position, and everyone locates them in the final sequence.
  const std::vector<int> candidates = key_candidates(t);
  const int test_count = config.checks.test_bits.resolve(
      static_cast<int>(candidates.size()), config.secret_length);
  std::vector<int> tests = dec.test_positions(candidates, test_count);
  std::sort(tests.begin(), tests.end());
  for (const int pos : tests) {
    require(std::binary_search(candidates.begin(), candidates.end(), pos),
            "test position is not a key candidate");
  }
  t.test_bit_positions = tests;
  if (!abort && !tests.empty()) {
    std::vector<int> sent_positions;
    sent_positions.reserve(tests.size());
    for (const int dealt : tests) {
      sent_positions.push_back(alice_perm.dest(dealt));
    }
    std::sort(sent_positions.begin(), sent_positions.end());
    t.announcements.push_back(Announcement{
        "step06", "alice", "test_positions", sent_positions, {}, ""});
    std::vector<int> current = sent_positions;
    for (int j = 1; j <= m; ++j) {
      const HopRecord& hop = t.bobs[static_cast<std::size_t>(j) - 1].announced;
      std::vector<std::pair<int, int>> pairs;
      std::vector<int> next;
      pairs.reserve(current.size());
      for (const int p : current) {
        const auto out = trace_through_hop(p, hop);
        pairs.emplace_back(p, out.value_or(0));
        if (out) {
          next.push_back(*out);
        }
      }
      t.announcements.push_back(Announcement{
          "step06", bob_name(j), "test_translation", {}, pairs, ""});
      current = std::move(next);
    }
  }

  const CheckReport honesty = honesty_check(t, config.checks);
  t.checks.push_back(honesty);
  if (!abort && !honesty.pass) {
    abort = "honesty-check: " + honesty.reason;
  }

  // Steps 7 and 8: key extraction, order disclosure, and the encrypted
  // secret.
  if (!abort) {
    const std::optional<std::string> key = extract_key(t);
    if (!key) {
      abort = kInsufficientKey;
    } else {
      t.key = key;
      std::vector<std::pair<int, int>> order_pairs;
      for (const int dealt : candidates) {
        if (!std::binary_search(tests.begin(), tests.end(), dealt)) {
          order_pairs.emplace_back(dealt, alice_perm.dest(dealt));
        }
      }
      t.announcements.push_back(Announcement{
          "step08", "alice", "case04_order", {}, order_pairs, ""});
      for (int j = 1; j <= m; ++j) {
        const HopRecord& hop =
            t.bobs[static_cast<std::size_t>(j) - 1].announced;
        const int incoming =
            static_cast<int>(hop.discards.size()) + hop.perm.size();
        std::vector<std::pair<int, int>> table;
        table.reserve(static_cast<std::size_t>(incoming));
        for (int p = 1; p <= incoming; ++p) {
          const auto out = trace_through_hop(p, hop);
          table.emplace_back(p, out.value_or(0));
        }
        t.announcements.push_back(Announcement{
            "step08", bob_name(j), "order_share", {}, table, ""});
      }
      t.ciphertext = xor_bits(t.secret, *t.key);
      t.announcements.push_back(Announcement{
          "step08", "alice", "ciphertext", {}, {}, *t.ciphertext});
    }
  }

  t.abort_reason = abort;
  return t;
}

RetriedRun run_protocol_with_retry(const ProtocolConfig& config,
                                   const AttackSpec& attack, int max_attempts,
                                   const RunOptions& options) {
  require(max_attempts >= 1, "max_attempts must be positive");
  RngStream reseed(config.seed, "msqss/retry");
  Transcript last;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    const ProtocolConfig attempt_config =
        attempt == 1 ? config : config.with_seed(reseed.next_u64());
    last = run_protocol(attempt_config, attack, options);
    if (!last.abort_reason || *last.abort_reason != kInsufficientKey) {
      return {std::move(last), attempt};
    }
  }
  return {std::move(last), max_attempts};
}

}  // namespace msqss
