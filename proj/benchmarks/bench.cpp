//
// Copyright 2026 The privpoly Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "privpoly/approximants.hpp"
#include "privpoly/families.hpp"
#include "privpoly/sanitizer.hpp"

namespace {

using privpoly::BitRow;
using privpoly::PrivacyBudget;
using privpoly::QueryFamily;
using privpoly::QueryIndex;

std::vector<BitRow> random_rows(int m, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::vector<BitRow> rows(n);
  for (BitRow& row : rows) {
    row.bits.resize(m);
    for (auto& b : row.bits) b = engine() & 1;
  }
  return rows;
}

void BM_FitMinimaxOr(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(privpoly::construct_or_approximant(k, 0.05));
  }
}
BENCHMARK(BM_FitMinimaxOr)->Arg(3)->Arg(6)->Arg(10);

void BM_LiftRow(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const QueryFamily family = privpoly::make_disjunction_family(3, m, 0.1);
  const std::vector<BitRow> rows = random_rows(m, 64, 7);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(privpoly::lift_row(family, rows[i++ % rows.size()]));
  }
}
BENCHMARK(BM_LiftRow)->Arg(8)->Arg(16)->Arg(32);

void BM_Aggregate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const QueryFamily family = privpoly::make_disjunction_family(3, 12, 0.1);
  const std::vector<BitRow> rows = random_rows(12, n, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(privpoly::aggregate(family, rows));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Aggregate)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_Sanitize(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const QueryFamily family = privpoly::make_disjunction_family(3, 12, 0.1);
  const std::vector<BitRow> rows = random_rows(12, n, 13);
  const PrivacyBudget budget{1.0, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(privpoly::sanitize(family, rows, budget, 5));
  }
}
BENCHMARK(BM_Sanitize)->Arg(1000)->Arg(10000);

void BM_Answer(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const QueryFamily family = privpoly::make_disjunction_family(3, m, 0.1);
  const std::vector<BitRow> rows = random_rows(m, 256, 17);
  const privpoly::Summary summary =
      privpoly::sanitize(family, rows, PrivacyBudget{1.0, 0.0}, 3);
  QueryIndex y;
  y.bits.assign(m, 0);
  y.bits[0] = y.bits[1] = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(privpoly::answer(summary, y));
  }
}
BENCHMARK(BM_Answer)->Arg(8)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
