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

#include "loomxai/harness/demo.hpp"

#include <set>

#include "loomxai/error.hpp"

namespace loomxai::harness {
namespace {

constexpr const char* kOnsets[] = {"b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z", "br", "st", "tr", "pl"};
constexpr const char* kVowels[] = {"a", "e", "i", "o", "u", "ai", "ou"};
constexpr const char* kSources[] = {"forum", "news", "review"};

std::string make_word(std::mt19937_64& rng) {
    std::string word;
    const std::size_t syllables = 2 + pick(rng, 2);
    for (std::size_t i = 0; i < syllables; ++i) {
        word += kOnsets[pick(rng, std::size(kOnsets))];
        word += kVowels[pick(rng, std::size(kVowels))];
    }
    return word;
}

std::string padded(std::size_t i, std::size_t width) {
    std::string s = std::to_string(i);
    return std::string(width > s.size() ? width - s.size() : 0, '0') + s;
}

}  // namespace

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng() % n); }

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

DemoData demo_data(const DemoConfig& config) {
    if (config.n_records == 0) throw Error(ErrorCode::BadConfig, "n_records must be >= 1");
    if (config.classes.empty()) throw Error(ErrorCode::BadConfig, "need at least one class");
    if (config.vocab_per_class == 0) throw Error(ErrorCode::BadConfig, "vocab_per_class must be >= 1");
    if (config.min_words == 0 || config.min_words > config.max_words)
        throw Error(ErrorCode::BadConfig, "need 1 <= min_words <= max_words");
    if (std::set<std::string>(config.classes.begin(), config.classes.end()).size() != config.classes.size())
        throw Error(ErrorCode::BadConfig, "class names must be distinct");

    std::mt19937_64 rng(config.seed);
    DemoData out;
    std::set<std::string> used;
    for (const auto& label : config.classes) {
        auto& pool = out.vocabulary[label];
        while (pool.size() < config.vocab_per_class) {
            std::string word = make_word(rng);
            if (used.insert(word).second) pool.push_back(std::move(word));
        }
    }

    const std::size_t width = std::to_string(config.n_records - 1).size();
    std::vector<data::Record> records;
    records.reserve(config.n_records);
    for (std::size_t i = 0; i < config.n_records; ++i) {
        const std::string& label = config.classes[i % config.classes.size()];
        const auto& pool = out.vocabulary[label];
        const std::size_t words = config.min_words + pick(rng, config.max_words - config.min_words + 1);
        std::string text;
        for (std::size_t w = 0; w < words; ++w) {
            if (w) text += ' ';
            text += pool[pick(rng, pool.size())];
        }
        data::Record r{padded(i, width), std::move(text), label, {}};
        r.extras["rating"] = static_cast<double>(1 + pick(rng, 5));
        r.extras["source"] = kSources[pick(rng, std::size(kSources))];
        records.push_back(std::move(r));
    }
    data::Schema schema{{"rating", data::ColumnKind::number}, {"source", data::ColumnKind::category}};
    out.dataset = data::TextDataset(std::move(records), std::move(schema));
    return out;
}

}  // namespace loomxai::harness
