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

#include <string>

#include "doctest.h"
#include "msqss/hash.hpp"
#include "msqss/protocol.hpp"

using namespace msqss;

namespace {

ProtocolConfig sample_config() {
  ProtocolConfig cfg;
  cfg.secret_length = 5;
  cfg.num_bobs = 2;
  cfg.epsilon = Rational(1, 6);
  cfg.seed = 7;
  cfg.checks.deviation_z = 4.5;
  cfg.checks.test_bits = TestBitPolicy::count(2);
  return cfg;
}

}  // namespace

TEST_CASE("configurations round-trip through JSON") {
  const ProtocolConfig cfg = sample_config();
  const ordered_json j = config_to_json(cfg);
  const ProtocolConfig back = config_from_json(j);

  CHECK(back.secret_length == cfg.secret_length);
  CHECK(back.num_bobs == cfg.num_bobs);
  CHECK(back.epsilon == cfg.epsilon);
  CHECK(back.seed == cfg.seed);
  CHECK(back.checks.deviation_z == cfg.checks.deviation_z);
  CHECK(back.checks.min_samples == cfg.checks.min_samples);
  CHECK(back.checks.sift_error_threshold == cfg.checks.sift_error_threshold);
  CHECK(back.checks.test_bits.kind == cfg.checks.test_bits.kind);
  CHECK(back.checks.test_bits.value == cfg.checks.test_bits.value);

  // Ratios are serialized as exact strings.
  CHECK(j["epsilon"] == "1/6");
}

TEST_CASE("epsilon deserializes from strings, integers, and decimals") {
  ordered_json j = config_to_json(sample_config());

  j["epsilon"] = "1/8";
  CHECK(config_from_json(j).epsilon == Rational(1, 8));
  j["epsilon"] = 0.125;
  CHECK(config_from_json(j).epsilon == Rational(1, 8));
  j["epsilon"] = 1;
  CHECK(config_from_json(j).epsilon == Rational(1));
}

TEST_CASE("transcripts serialize the run without the oracle fields") {
  Transcript t;
  for (std::uint64_t seed = 1;; ++seed) {
    REQUIRE(seed < 400);
    t = run_protocol(sample_config().with_seed(seed), AttackSpec::honest());
    if (!t.aborted()) break;
  }
  const ordered_json j = transcript_to_json(t);

  CHECK(j.contains("config"));
  CHECK(j.contains("attack"));
  CHECK(j.contains("secret"));
  CHECK(j.contains("alice"));
  CHECK(j.contains("bobs"));
  CHECK(j.contains("tp"));
  CHECK(j.contains("announcements"));
  CHECK(j.contains("checks"));
  CHECK(j["key"].is_string());
  CHECK(j["ciphertext"].is_string());
  CHECK(j["abort_reason"].is_null());
  CHECK_FALSE(j.contains("oracle"));
  CHECK_FALSE(j.dump().find("final_origins") != std::string::npos);

  CHECK(j["alice"]["sift_positions"].is_array());
  CHECK(j["bobs"].size() == 2);
  CHECK(j["bobs"][0]["party"] == "bob1");
  CHECK(j["tp"]["bases"].is_string());
  CHECK(j["tp"]["outcomes"].is_string());
}

TEST_CASE("aborted transcripts carry the reason and no key") {
  Transcript t;
  for (std::uint64_t seed = 1;; ++seed) {
    REQUIRE(seed < 400);
    t = run_protocol(sample_config().with_seed(seed),
                     AttackSpec::intercept_resend_qubit());
    if (t.aborted()) break;
  }
  const ordered_json j = transcript_to_json(t);
  CHECK(j["abort_reason"].is_string());
  CHECK(j["key"].is_null());
  CHECK(j["ciphertext"].is_null());
}

TEST_CASE("serialization is reproducible byte for byte") {
  const Transcript t = run_protocol(sample_config(), AttackSpec::honest());
  const std::string a = dump_json(transcript_to_json(t));
  const std::string b = dump_json(transcript_to_json(t));
  CHECK(a == b);
  CHECK(a.back() == '\n');
}

TEST_CASE("detection rows format as stable CSV") {
  DetectionStats row;
  row.attack = "fake-state";
  row.params = "b2=0.1;d2=0";
  row.secret_length = 5;
  row.num_bobs = 2;
  row.epsilon = Rational(1, 6);
  row.trials = 1000;
  row.detected = 400;
  row.rate = 0.4;
  row.interval = {0.37, 0.43};
  row.predicted = 0.4871;

  const std::string csv = detection_csv({row});
  CHECK(csv ==
        "attack,params,L,M,epsilon,trials,detected,rate,lo,hi,predicted\n"
        "fake-state,b2=0.1;d2=0,5,2,1/6,1000,400,0.400000,0.370000,0.430000,"
        "0.487100\n");

  DetectionStats bare;
  bare.attack = "honest";
  bare.epsilon = Rational(1, 8);
  const std::string empty_predicted = detection_csv({bare});
  CHECK(empty_predicted.find("honest,,0,0,1/8,0,0,0.000000,0.000000,0.000000,\n") !=
        std::string::npos);
}

TEST_CASE("efficiency rows expand rationals exactly") {
  const std::string csv =
      efficiency_csv({SharingScheme::Ghz}, 4, 4, {Rational(1, 8)});
  CHECK(csv == "protocol,M,epsilon,eta\nghz,4,1/8,0.00625\n");
}

TEST_CASE("manifests record the command, config, seed, and content hash") {
  const ordered_json config = config_to_json(sample_config());
  const ordered_json m = manifest_json("run -L 5", config, 7, sha256_hex("x"));
  CHECK(m["command"] == "run -L 5");
  CHECK(m["config"] == config);
  CHECK(m["seed"] == 7);
  CHECK(m["output_sha256"] == sha256_hex("x"));
}

TEST_CASE("sha256 matches the published test vectors") {
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("The quick brown fox jumps over the lazy dog") ==
        "d7a8fbb307d7809469ca9abcb0082e4f8d5651e46d3cdb762d02d0bf37c9e592");
}
