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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "loomxai/dataset.hpp"

namespace loomxai::harness {

/// Uniform integer in [0, n). Uses only the engine's raw output, which the
/// standard pins down, so results match across standard libraries.
std::size_t pick(std::mt19937_64& rng, std::size_t n);
/// Uniform double in [0, 1).
double unit(std::mt19937_64& rng);

struct DemoConfig {
    std::size_t n_records = 200;
    std::vector<std::string> classes{"pos", "neg"};
    std::uint64_t seed = 7;
    std::size_t vocab_per_class = 24;
    std::size_t min_words = 4;
    std::size_t max_words = 12;
};

struct DemoData {
    data::TextDataset dataset;
    /// Token pool of each class; pools are pairwise disjoint.
    std::map<std::string, std::vector<std::string>> vocabulary;
};

/// Synthetic labeled sentences. Labels go round-robin over `classes`, each
/// text draws only from its class's pool, and the seed fixes every byte.
/// Extras: `rating` (number 1..5) and `source` (category).
/// Throws Error{BadConfig}.
DemoData demo_data(const DemoConfig& config);

}  // namespace loomxai::harness
