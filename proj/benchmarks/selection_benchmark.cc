// Copyright 2026 The dpdesign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <benchmark/benchmark.h>

#include "dpdesign/analysis.h"
#include "dpdesign/domain.h"
#include "dpdesign/reduction.h"

namespace dpdesign {
namespace {

Matrix AllRange(int n) { return AllRangeWorkload(DomainShape({n})).matrix; }

void BM_SelectFull(benchmark::State& state) {
  Matrix w = AllRange(static_cast<int>(state.range(0)));
  ReductionConfig config;
  config.mode = ReductionMode::kFull;
  for (auto _ : state) {
    Strategy a = SelectEigenStrategy(w, config);
    benchmark::DoNotOptimize(a.sensitivity);
  }
}
BENCHMARK(BM_SelectFull)->Arg(32)->Arg(64)->Arg(128)->Arg(256)
    ->Unit(benchmark::kMillisecond);

void BM_SelectSeparation(benchmark::State& state) {
  Matrix w = AllRange(static_cast<int>(state.range(0)));
  ReductionConfig config;
  config.mode = ReductionMode::kSeparation;
  for (auto _ : state) {
    Strategy a = SelectEigenStrategy(w, config);
    benchmark::DoNotOptimize(a.sensitivity);
  }
}
BENCHMARK(BM_SelectSeparation)->Arg(32)->Arg(64)->Arg(128)->Arg(256)
    ->Unit(benchmark::kMillisecond);

void BM_SelectPrincipal(benchmark::State& state) {
  Matrix w = AllRange(static_cast<int>(state.range(0)));
  ReductionConfig config;
  config.mode = ReductionMode::kPrincipal;
  for (auto _ : state) {
    Strategy a = SelectEigenStrategy(w, config);
    benchmark::DoNotOptimize(a.sensitivity);
  }
}
BENCHMARK(BM_SelectPrincipal)->Arg(32)->Arg(64)->Arg(128)->Arg(256)
    ->Unit(benchmark::kMillisecond);

void BM_ErrorReport(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Matrix w = AllRange(n);
  ReductionConfig config;
  Strategy a = SelectEigenStrategy(w, config);
  PrivacyParams params = PrivacyParams::UnitP();
  for (auto _ : state) {
    ErrorReport report = WorkloadError(w, a, params);
    benchmark::DoNotOptimize(report.workload_error);
  }
}
BENCHMARK(BM_ErrorReport)->Arg(32)->Arg(64)->Arg(128)
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace dpdesign

BENCHMARK_MAIN();
