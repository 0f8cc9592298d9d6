// Copyright 2026 The Sumfold Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <string>
#include <vector>

#include "benchmark/benchmark.h"
#include "sumfold/bounds.h"
#include "sumfold/certificate.h"
#include "sumfold/families.h"
#include "sumfold/rational.h"
#include "sumfold/setops.h"

namespace sumfold {
namespace {

FiniteSet Family(const std::string& text) {
  return Generate(FamilySpec::Parse(text));
}

void BM_RationalAddSmall(benchmark::State& state) {
  Rational acc(0);
  Rational step(1, 7);
  for (auto _ : state) {
    acc = acc + step;
    benchmark::DoNotOptimize(acc);
    if (acc > Rational(1000)) acc = Rational(0);
  }
}
BENCHMARK(BM_RationalAddSmall);

void BM_RationalAddBig(benchmark::State& state) {
  Rational a = Rational::Parse("340282366920938463463374607431768211457/3");
  Rational b = Rational::Parse("18446744073709551629/5");
  for (auto _ : state) benchmark::DoNotOptimize(a + b);
}
BENCHMARK(BM_RationalAddBig);

void BM_SumsetRandom(benchmark::State& state) {
  FiniteSet a = Family("random:n=" + std::to_string(state.range(0)) +
                       ",range_max=1000000,seed=1");
  for (auto _ : state) benchmark::DoNotOptimize(Sumset(a, a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SumsetRandom)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_ProductSetGp(benchmark::State& state) {
  FiniteSet a = Family("gp:n=" + std::to_string(state.range(0)) + ",ratio=3/2");
  for (auto _ : state) benchmark::DoNotOptimize(ProductSet(a, a));
}
BENCHMARK(BM_ProductSetGp)->Arg(64)->Arg(256);

void BM_KFoldSumGp(benchmark::State& state) {
  FiniteSet a = Family("gp:n=" + std::to_string(state.range(0)) + ",ratio=2");
  const int k = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(KFoldSum(a, k));
}
BENCHMARK(BM_KFoldSumGp)->Args({32, 2})->Args({32, 3})->Args({16, 4});

void BM_DpConstants(benchmark::State& state) {
  const SplitStrategy dp{SplitKind::kDpOptimal, ""};
  for (auto _ : state) {
    benchmark::DoNotOptimize(Constants(static_cast<int>(state.range(0)), dp));
  }
}
BENCHMARK(BM_DpConstants)->Arg(64)->Arg(1024);

void BM_CertifyGp(benchmark::State& state) {
  FiniteSet a = Family("gp:n=" + std::to_string(state.range(0)) + ",ratio=2");
  const SplitStrategy balanced{SplitKind::kBalanced, ""};
  const int k = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(Certify(a, k, balanced));
}
BENCHMARK(BM_CertifyGp)
    ->Args({16, 2})
    ->Args({16, 3})
    ->Args({32, 2})
    ->Unit(benchmark::kMillisecond);

void BM_CertifyRandom(benchmark::State& state) {
  FiniteSet a = Family("random:n=" + std::to_string(state.range(0)) + ",seed=5");
  const SplitStrategy balanced{SplitKind::kBalanced, ""};
  for (auto _ : state) benchmark::DoNotOptimize(Certify(a, 3, balanced));
}
BENCHMARK(BM_CertifyRandom)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace sumfold

BENCHMARK_MAIN();
