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

// Command line front end for the mediated secret sharing simulator.
//
//   msqss run         one protocol execution, transcript as JSON
//   msqss example     replay of the pinned reference run with self checks
//   msqss attack      detection-rate experiments, results as CSV
//   msqss efficiency  qubit-efficiency table for the compared schemes
//
// Exit codes: 0 success, 1 internal failure or failed example check,
// 2 usage or configuration error, 3 run ended in a security abort.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "msqss/adversary.hpp"
#include "msqss/attack_spec.hpp"
#include "msqss/example_run.hpp"
#include "msqss/hash.hpp"
#include "msqss/json_io.hpp"
#include "msqss/protocol.hpp"

namespace {

msqss::ordered_json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot read configuration file: " + path);
  }
  msqss::ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::invalid_argument("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

// The content is assembled in memory first so a run either produces the
// complete output or nothing.
void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  out << content;
  out.flush();
  if (!out) {
    throw std::runtime_error("failed writing output file: " + path);
  }
}

std::string joined_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) s += ' ';
    s += argv[i];
  }
  return s;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  if (text.empty()) return kv;
  for (const std::string& part : split(text, ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("expected key=value, got '" + part + "'");
    }
    kv[part.substr(0, eq)] = part.substr(eq + 1);
  }
  return kv;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double d = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad numeric value for " + key + ": '" +
                                value + "'");
  }
}

std::vector<int> parse_participant_list(const std::string& value) {
  std::vector<int> bobs;
  for (const std::string& part : split(value, '+')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      bobs.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad participant index '" + part + "'");
    }
  }
  return bobs;
}

// Attack descriptors take the form name[:key=value,...]:
//
//   honest
//   fake-state
//   intercept-qubit
//   intercept-qudit              (optional mode=uniform|mismatch)
//   intercept-qudit-mismatch
//   entangle:b2=0.1,d2=0.05,overlap=0.95
//   collusion-share:bobs=1+2
//   collusion-fake:bobs=2
msqss::AttackSpec parse_attack_spec(const std::string& text) {
  std::string name = text;
  std::string args;
  if (auto colon = text.find(':'); colon != std::string::npos) {
    name = text.substr(0, colon);
    args = text.substr(colon + 1);
  }
  auto kv = parse_key_values(args);
  auto take = [&kv](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto finish = [&kv, &name](msqss::AttackSpec spec) {
    if (!kv.empty()) {
      throw std::invalid_argument("unknown option '" + kv.begin()->first +
                                  "' for attack '" + name + "'");
    }
    return spec;
  };

  if (name == "honest") return finish(msqss::AttackSpec::honest());
  if (name == "fake-state") return finish(msqss::AttackSpec::fake_state());
  if (name == "intercept-qubit") {
    return finish(msqss::AttackSpec::intercept_resend_qubit());
  }
  if (name == "intercept-qudit" || name == "intercept-qudit-mismatch") {
    auto mode = name == "intercept-qudit-mismatch"
                    ? msqss::QuditOutcomeMode::AlwaysMismatch
                    : msqss::QuditOutcomeMode::UniformBit;
    if (auto v = take("mode")) {
      if (*v == "uniform") {
        mode = msqss::QuditOutcomeMode::UniformBit;
      } else if (*v == "mismatch") {
        mode = msqss::QuditOutcomeMode::AlwaysMismatch;
      } else {
        throw std::invalid_argument("bad mode '" + *v +
                                    "' (expected uniform or mismatch)");
      }
    }
    return finish(msqss::AttackSpec::intercept_resend_qudit(mode));
  }
  if (name == "entangle") {
    double b2 = 0.0;
    double d2 = 0.0;
    double overlap = 1.0;
    if (auto v = take("b2")) b2 = parse_double("b2", *v);
    if (auto v = take("d2")) d2 = parse_double("d2", *v);
    if (auto v = take("overlap")) overlap = parse_double("overlap", *v);
    return finish(msqss::AttackSpec::entangle_measure(
        msqss::EntangleParams::from_strengths(b2, d2, overlap)));
  }
  if (name == "collusion-share" || name == "collusion-fake") {
    msqss::CollusionParams params;
    params.strategy = name == "collusion-share"
                          ? msqss::CollusionStrategy::ShareOrders
                          : msqss::CollusionStrategy::FakeOrders;
    auto v = take("bobs");
    if (!v) {
      throw std::invalid_argument("attack '" + name +
                                  "' needs bobs=<i>[+<j>...]");
    }
    params.dishonest = parse_participant_list(*v);
    return finish(msqss::AttackSpec::collude(params));
  }
  throw std::invalid_argument(
      "unknown attack '" + name +
      "' (expected honest, fake-state, intercept-qubit, intercept-qudit, "
      "intercept-qudit-mismatch, entangle, collusion-share, collusion-fake)");
}

// Test-bit policies: "surplus", "count:N", or "fraction:F".
msqss::TestBitPolicy parse_test_bits(const std::string& text) {
  if (text == "surplus") return msqss::TestBitPolicy::surplus();
  if (text.rfind("count:", 0) == 0) {
    std::string v = text.substr(6);
    try {
      std::size_t used = 0;
      int n = std::stoi(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return msqss::TestBitPolicy::count(n);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad test-bit count '" + v + "'");
    }
  }
  if (text.rfind("fraction:", 0) == 0) {
    return msqss::TestBitPolicy::fraction(
        parse_double("test-bits", text.substr(9)));
  }
  throw std::invalid_argument("bad test-bit policy '" + text +
                              "' (expected surplus, count:N, or fraction:F)");
}

std::vector<msqss::SharingScheme> parse_schemes(
    const std::vector<std::string>& names) {
  std::vector<msqss::SharingScheme> schemes;
  for (const std::string& n : names) {
    if (n == "ours") {
      schemes.push_back(msqss::SharingScheme::Ours);
    } else if (n == "ghz") {
      schemes.push_back(msqss::SharingScheme::Ghz);
    } else if (n == "graph") {
      schemes.push_back(msqss::SharingScheme::Graph);
    } else {
      throw std::invalid_argument("unknown scheme '" + n +
                                  "' (expected ours, ghz, or graph)");
    }
  }
  return schemes;
}

// Shared protocol options; a configuration file supplies the base values and
// any flag given on the command line (or seed via MSQSS_SEED) wins over it.
struct ConfigFlags {
  std::string config_path;
  int secret_length = 16;
  int num_bobs = 3;
  std::string epsilon = "1/8";
  std::uint64_t seed = 1;
  double deviation_z = 6.0;
  double sift_threshold = 0.0;
  int min_samples = 4;
  std::string test_bits = "surplus";
};

void add_config_flags(CLI::App* cmd, ConfigFlags& f) {
  cmd->add_option("--config", f.config_path,
                  "JSON configuration file; explicit flags override it");
  cmd->add_option("-L,--secret-length", f.secret_length,
                  "Secret length in bits");
  cmd->add_option("-M,--bobs", f.num_bobs, "Number of participants");
  cmd->add_option("-e,--epsilon", f.epsilon,
                  "Sampling fraction per participant, e.g. 1/8 or 0.125");
  cmd->add_option("-s,--seed", f.seed, "Run seed")->envname("MSQSS_SEED");
  cmd->add_option("--deviation-z", f.deviation_z,
                  "Balance-check width in standard deviations");
  cmd->add_option("--sift-threshold", f.sift_threshold,
                  "Tolerated fraction of traced sift mismatches");
  cmd->add_option("--min-samples", f.min_samples,
                  "Smallest sample a balance check applies to");
  cmd->add_option("--test-bits", f.test_bits,
                  "Test-bit policy: surplus, count:N, or fraction:F");
}

msqss::ProtocolConfig build_config(const CLI::App* cmd, const ConfigFlags& f) {
  msqss::ProtocolConfig cfg;
  if (!f.config_path.empty()) {
    cfg = msqss::config_from_json(load_json_file(f.config_path));
  }
  if (cmd->count("--secret-length") > 0) cfg.secret_length = f.secret_length;
  if (cmd->count("--bobs") > 0) cfg.num_bobs = f.num_bobs;
  if (cmd->count("--epsilon") > 0) {
    cfg.epsilon = msqss::Rational::parse(f.epsilon);
  }
  if (cmd->count("--seed") > 0) cfg.seed = f.seed;
  if (cmd->count("--deviation-z") > 0) cfg.checks.deviation_z = f.deviation_z;
  if (cmd->count("--sift-threshold") > 0) {
    cfg.checks.sift_error_threshold = f.sift_threshold;
  }
  if (cmd->count("--min-samples") > 0) cfg.checks.min_samples = f.min_samples;
  if (cmd->count("--test-bits") > 0) {
    cfg.checks.test_bits = parse_test_bits(f.test_bits);
  }
  cfg.validate();
  return cfg;
}

void write_manifest(const std::string& path, const std::string& command,
                    const msqss::ordered_json& config, std::uint64_t seed,
                    const std::string& output) {
  auto manifest = msqss::manifest_json(command, config, seed,
                                       msqss::sha256_hex(output));
  write_output(path, msqss::dump_json(manifest));
}

int cmd_run(const CLI::App* cmd, const ConfigFlags& flags,
            const std::string& attack_text, const std::string& secret,
            int max_attempts, const std::string& out_path,
            const std::string& manifest_path, const std::string& command) {
  msqss::ProtocolConfig cfg = build_config(cmd, flags);
  msqss::AttackSpec attack = parse_attack_spec(attack_text);
  attack.validate(cfg.num_bobs);

  msqss::RunOptions options;
  if (!secret.empty()) {
    if (static_cast<int>(secret.size()) != cfg.secret_length) {
      throw std::invalid_argument("secret must be exactly " +
                                  std::to_string(cfg.secret_length) +
                                  " bits long");
    }
    for (char c : secret) {
      if (c != '0' && c != '1') {
        throw std::invalid_argument("secret must consist of 0 and 1 only");
      }
    }
    options.secret = secret;
  }

  msqss::Transcript t;
  int attempts = 1;
  if (max_attempts > 1) {
    auto retried =
        msqss::run_protocol_with_retry(cfg, attack, max_attempts, options);
    t = std::move(retried.transcript);
    attempts = retried.attempts;
  } else {
    t = msqss::run_protocol(cfg, attack, options);
  }

  std::string body = msqss::dump_json(msqss::transcript_to_json(t));
  write_output(out_path, body);
  if (!manifest_path.empty()) {
    write_manifest(manifest_path, command, msqss::config_to_json(cfg),
                   cfg.seed, body);
  }
  if (attempts > 1) {
    std::cerr << "note: completed on attempt " << attempts << "\n";
  }
  if (t.aborted()) {
    std::cerr << "aborted: " << *t.abort_reason << "\n";
    if (msqss::is_security_abort(*t.abort_reason)) return 3;
  }
  return 0;
}

int cmd_example(const std::string& out_path, const std::string& manifest_path,
                const std::string& command) {
  msqss::Transcript t = msqss::run_worked_example();
  auto checks = msqss::verify_worked_example(t);

  // Keep stdout clean for the transcript when it goes there.
  std::ostream& report = out_path == "-" ? std::cerr : std::cout;
  for (const auto& c : checks) {
    report << (c.pass ? "ok   " : "FAIL ") << c.label;
    if (!c.pass && !c.detail.empty()) report << " (" << c.detail << ")";
    report << "\n";
  }
  int passed = 0;
  for (const auto& c : checks) passed += c.pass ? 1 : 0;
  report << passed << "/" << checks.size() << " example checks passed\n";

  if (!out_path.empty()) {
    std::string body = msqss::dump_json(msqss::transcript_to_json(t));
    write_output(out_path, body);
    if (!manifest_path.empty()) {
      write_manifest(manifest_path, command,
                     msqss::config_to_json(t.config), t.config.seed, body);
    }
  }
  return msqss::example_ok(checks) ? 0 : 1;
}

int cmd_attack(const CLI::App* cmd, const ConfigFlags& flags,
               const std::vector<std::string>& attack_texts,
               std::vector<int> lengths, int trials,
               const std::string& out_path, const std::string& manifest_path,
               const std::string& command) {
  msqss::ProtocolConfig base = build_config(cmd, flags);
  if (trials < 1) throw std::invalid_argument("--trials must be positive");
  if (lengths.empty()) lengths.push_back(base.secret_length);

  std::vector<msqss::DetectionStats> rows;
  for (const std::string& text : attack_texts) {
    msqss::AttackSpec attack = parse_attack_spec(text);
    attack.validate(base.num_bobs);
    // Keep the descriptor's parameter part so rows from the same attack at
    // different settings stay distinguishable in the CSV, semicolon
    // separated to leave the column layout intact.
    const std::size_t colon = text.find(':');
    std::string params =
        colon == std::string::npos ? "" : text.substr(colon + 1);
    std::replace(params.begin(), params.end(), ',', ';');
    for (int length : lengths) {
      msqss::ProtocolConfig cfg = base;
      cfg.secret_length = length;
      cfg.validate();
      rows.push_back(msqss::run_detection_experiment(cfg, attack, trials));
      rows.back().params = params;
    }
  }

  std::string body = msqss::detection_csv(rows);
  write_output(out_path, body);
  if (!manifest_path.empty()) {
    msqss::ordered_json config = msqss::config_to_json(base);
    config["attacks"] = attack_texts;
    config["secret_lengths"] = lengths;
    config["trials"] = trials;
    write_manifest(manifest_path, command, config, base.seed, body);
  }
  return 0;
}

int cmd_efficiency(const std::vector<std::string>& scheme_names, int bobs_lo,
                   int bobs_hi, const std::vector<std::string>& epsilon_texts,
                   const std::string& out_path,
                   const std::string& manifest_path,
                   const std::string& command) {
  auto schemes = parse_schemes(scheme_names);
  if (bobs_lo < 1 || bobs_hi < bobs_lo) {
    throw std::invalid_argument("participant range must satisfy 1 <= lo <= hi");
  }
  std::vector<msqss::Rational> epsilons;
  for (const std::string& text : epsilon_texts) {
    epsilons.push_back(msqss::Rational::parse(text));
  }

  std::string body =
      msqss::efficiency_csv(schemes, bobs_lo, bobs_hi, epsilons);
  write_output(out_path, body);
  if (!manifest_path.empty()) {
    msqss::ordered_json config;
    config["schemes"] = scheme_names;
    config["participants_lo"] = bobs_lo;
    config["participants_hi"] = bobs_hi;
    config["epsilons"] = epsilon_texts;
    write_manifest(manifest_path, command, config, 0, body);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Simulator of a mediated multiparty semi-quantum secret sharing "
      "protocol"};
  app.set_version_flag("--version", "msqss 0.1.0");
  app.require_subcommand(1);

  std::string out_path = "-";
  std::string manifest_path;

  auto* run = app.add_subcommand("run", "Execute one protocol run");
  ConfigFlags run_flags;
  add_config_flags(run, run_flags);
  std::string run_attack = "honest";
  std::string run_secret;
  int run_attempts = 1;
  run->add_option("-a,--attack", run_attack,
                  "Attack descriptor, e.g. honest or entangle:b2=0.1");
  run->add_option("--secret", run_secret,
                  "Secret bits to share (derived from the seed if absent)");
  run->add_option("--attempts", run_attempts,
                  "Retry with derived seeds while the key comes up short")
      ->check(CLI::PositiveNumber);
  run->add_option("-o,--out", out_path, "Output path, - for stdout");
  run->add_option("--manifest", manifest_path,
                  "Write a reproducibility manifest to this path");

  auto* example =
      app.add_subcommand("example", "Replay the pinned reference run");
  std::string example_out;
  example->add_option("-o,--out", example_out,
                      "Also write the replay transcript, - for stdout");
  example->add_option("--manifest", manifest_path,
                      "Write a reproducibility manifest to this path");

  auto* attack =
      app.add_subcommand("attack", "Measure detection rates under attack");
  ConfigFlags attack_flags;
  add_config_flags(attack, attack_flags);
  std::vector<std::string> attack_texts{"intercept-qubit"};
  std::vector<int> attack_lengths;
  int attack_trials = 1000;
  attack->add_option("-a,--attack", attack_texts,
                     "Attack descriptors, one CSV row per descriptor")
      ->take_all();
  attack
      ->add_option("--lengths", attack_lengths,
                   "Secret lengths to sweep (defaults to --secret-length)")
      ->take_all();
  attack->add_option("-t,--trials", attack_trials, "Runs per descriptor");
  attack->add_option("-o,--out", out_path, "Output path, - for stdout");
  attack->add_option("--manifest", manifest_path,
                     "Write a reproducibility manifest to this path");

  auto* efficiency = app.add_subcommand(
      "efficiency", "Tabulate qubit efficiency of the compared schemes");
  std::vector<std::string> scheme_names{"ours", "ghz", "graph"};
  int bobs_lo = 1;
  int bobs_hi = 10;
  std::vector<std::string> epsilon_texts{"1/8"};
  efficiency->add_option("--schemes", scheme_names,
                         "Schemes to include: ours, ghz, graph")
      ->take_all();
  efficiency->add_option("--from", bobs_lo, "Smallest participant count");
  efficiency->add_option("--to", bobs_hi, "Largest participant count");
  efficiency
      ->add_option("--epsilons", epsilon_texts,
                   "Sampling fractions to tabulate")
      ->take_all();
  efficiency->add_option("-o,--out", out_path, "Output path, - for stdout");
  efficiency->add_option("--manifest", manifest_path,
                         "Write a reproducibility manifest to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = joined_args(argc, argv);
  try {
    if (run->parsed()) {
      return cmd_run(run, run_flags, run_attack, run_secret, run_attempts,
                     out_path, manifest_path, command);
    }
    if (example->parsed()) {
      return cmd_example(example_out, manifest_path, command);
    }
    if (attack->parsed()) {
      return cmd_attack(attack, attack_flags, attack_texts, attack_lengths,
                        attack_trials, out_path, manifest_path, command);
    }
    if (efficiency->parsed()) {
      return cmd_efficiency(scheme_names, bobs_lo, bobs_hi, epsilon_texts,
                            out_path, manifest_path, command);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
