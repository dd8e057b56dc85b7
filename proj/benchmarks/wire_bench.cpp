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
#include "loomxai/wire.hpp"

namespace {

using namespace loomxai;

wire::Message records_message(std::size_t n) {
    harness::DemoConfig config;
    config.n_records = n;
    wire::Message m;
    m.widget_id = "bench";
    m.attr = "data";
    m.payload = data::to_records(harness::demo_data(config).dataset);
    m.seq = 1;
    return m;
}

void BM_Encode(benchmark::State& state) {
    const auto m = records_message(static_cast<std::size_t>(state.range(0)));
    std::size_t bytes = 0;
    for (auto _ : state) {
        auto text = wire::encode(m);
        bytes += text.size();
        benchmark::DoNotOptimize(text);
    }
    state.SetBytesProcessed(static_cast<int64_t>(bytes));
}
BENCHMARK(BM_Encode)->Arg(100)->Arg(1000)->Arg(10000);

void BM_Decode(benchmark::State& state) {
    const auto text = wire::encode(records_message(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(wire::decode(text));
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Decode)->Arg(100)->Arg(1000)->Arg(10000);

void BM_PaginateReassemble(benchmark::State& state) {
    const auto m = records_message(10000);
    const auto& rows = m.payload.get_ref<const Value::array_t&>();
    for (auto _ : state) {
        auto pages = wire::paginate(rows, static_cast<std::size_t>(state.range(0)), {}, "t");
        benchmark::DoNotOptimize(wire::reassemble(pages));
    }
}
BENCHMARK(BM_PaginateReassemble)->Arg(100)->Arg(1000);

}  // namespace
