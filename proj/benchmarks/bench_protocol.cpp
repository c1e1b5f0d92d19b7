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

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "msqss/attack_spec.hpp"
#include "msqss/protocol.hpp"
#include "msqss/quantum.hpp"
#include "msqss/rng.hpp"
#include "msqss/sequence.hpp"
#include "msqss/verification.hpp"

namespace {

msqss::ProtocolConfig bench_config(int secret_length) {
  msqss::ProtocolConfig cfg;
  cfg.secret_length = secret_length;
  cfg.num_bobs = 3;
  cfg.epsilon = msqss::Rational(1, 8);
  cfg.seed = 1;
  return cfg;
}

void BM_HonestRun(benchmark::State& state) {
  const msqss::ProtocolConfig base =
      bench_config(static_cast<int>(state.range(0)));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const msqss::Transcript t =
        msqss::run_protocol(base.with_seed(seed++), msqss::AttackSpec::honest());
    benchmark::DoNotOptimize(t.checks.front().pass);
  }
  state.SetItemsProcessed(state.iterations() * base.sequence_length());
}
BENCHMARK(BM_HonestRun)->Arg(8)->Arg(16)->Arg(64);

void BM_InterceptRun(benchmark::State& state) {
  const msqss::ProtocolConfig base = bench_config(16);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const msqss::Transcript t = msqss::run_protocol(
        base.with_seed(seed++), msqss::AttackSpec::intercept_resend_qubit());
    benchmark::DoNotOptimize(t.aborted());
  }
}
BENCHMARK(BM_InterceptRun);

void BM_QubitMeasurement(benchmark::State& state) {
  msqss::RngStream rng(3, "bench/measure");
  const msqss::PureState plus = msqss::make_qubit(msqss::QubitLabel::Plus);
  for (auto _ : state) {
    const auto m = msqss::measure_qubit(plus, msqss::Basis::Z, rng);
    benchmark::DoNotOptimize(m.outcome);
  }
}
BENCHMARK(BM_QubitMeasurement);

void BM_PermutationApply(benchmark::State& state) {
  msqss::RngStream rng(4, "bench/perm");
  const int n = static_cast<int>(state.range(0));
  const auto perm = msqss::Permutation::random(n, rng);
  std::vector<int> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = i;
  for (auto _ : state) {
    auto moved = msqss::apply_permutation(values, perm);
    benchmark::DoNotOptimize(moved.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_PermutationApply)->Arg(64)->Arg(1024);

void BM_AnnouncedTraceback(benchmark::State& state) {
  const msqss::ProtocolConfig cfg = bench_config(16);
  const msqss::Transcript t =
      msqss::run_protocol(cfg, msqss::AttackSpec::honest());
  const int finals = static_cast<int>(t.oracle.final_origins.size());
  for (auto _ : state) {
    int sum = 0;
    for (int pos = 1; pos <= finals; ++pos) {
      sum += msqss::announced_trace_to_alice(t, pos);
    }
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(state.iterations() * finals);
}
BENCHMARK(BM_AnnouncedTraceback);

}  // namespace

BENCHMARK_MAIN();
