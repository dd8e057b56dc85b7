// Copyright 2026 The loomxai Authors
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

#include "loomxai/harness/demo.hpp"
#include "loomxai/harness/generators.hpp"
#include "loomxai/model.hpp"
#include "loomxai/projection.hpp"

namespace {

using namespace loomxai;

std::vector<model::Embedding> embeddings(std::size_t n) {
    harness::DemoConfig config;
    config.n_records = n;
    const auto ds = harness::demo_data(config).dataset;
    const auto clf = model::toy_fit(ds);
    std::vector<model::Embedding> out;
    for (const auto& r : ds.records()) out.push_back(clf.embed(r.text));
    return out;
}

void BM_PcaFit(benchmark::State& state) {
    const auto v = embeddings(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(model::pca_fit(v));
}
BENCHMARK(BM_PcaFit)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_ToyPredict(benchmark::State& state) {
    harness::DemoConfig config;
    const auto ds = harness::demo_data(config).dataset;
    const auto clf = model::toy_fit(ds);
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(clf.predict(ds[i++ % ds.size()].text));
}
BENCHMARK(BM_ToyPredict);

void BM_Knn(benchmark::State& state) {
    harness::Rng rng(1);
    const auto pts = harness::random_points(rng, static_cast<std::size_t>(state.range(0)), false);
    for (auto _ : state) benchmark::DoNotOptimize(model::knn(pts, {0.5, 0.5}, 10));
}
BENCHMARK(BM_Knn)->Arg(1000)->Arg(100000);

void BM_PointsInRect(benchmark::State& state) {
    harness::Rng rng(2);
    const auto pts = harness::random_points(rng, static_cast<std::size_t>(state.range(0)), false);
    const model::Rect rect{0.2, 0.2, 0.6, 0.7};
    for (auto _ : state) benchmark::DoNotOptimize(model::points_in_rect(pts, rect));
}
BENCHMARK(BM_PointsInRect)->Arg(1000)->Arg(100000);

}  // namespace
