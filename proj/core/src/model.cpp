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

#include "loomxai/model.hpp"

#include <cmath>

#include "loomxai/error.hpp"
#include "loomxai/text.hpp"

namespace loomxai::model {
namespace {

void normalize(Embedding& v) {
    const double norm = std::sqrt(dot(v, v));
    if (norm == 0.0) return;
    for (double& x : v) x /= norm;
}

}  // namespace

std::uint32_t fnv1a32(std::string_view bytes) noexcept {
    std::uint32_t hash = kFnvOffsetBasis;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= kFnvPrime;
    }
    return hash;
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    double sum = 0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) sum += a[i] * b[i];
    return sum;
}

Embedding hashed_bag_of_words(std::string_view text, std::size_t dimension) {
    Embedding v(dimension, 0.0);
    for (const auto& token : text::tokenize(text)) v[fnv1a32(token) % dimension] += 1.0;
    normalize(v);
    return v;
}

ToyClassifier::ToyClassifier(std::size_t dimension, std::map<std::string, Embedding> centroids)
    : dimension_(dimension), centroids_(std::move(centroids)) {}

ToyClassifier ToyClassifier::fit(const data::TextDataset& ds, std::size_t dimension) {
    if (dimension == 0) throw Error(ErrorCode::BadConfig, "embedding dimension must be >= 1");
    std::map<std::string, Embedding> sums;
    std::map<std::string, std::size_t> counts;
    for (const auto& r : ds.records()) {
        if (!r.label) continue;
        auto [it, inserted] = sums.try_emplace(*r.label, Embedding(dimension, 0.0));
        const Embedding e = hashed_bag_of_words(r.text, dimension);
        for (std::size_t i = 0; i < dimension; ++i) it->second[i] += e[i];
        ++counts[*r.label];
    }
    if (sums.empty()) throw Error(ErrorCode::NoLabels, "dataset has no labeled records");
    for (auto& [label, v] : sums) {
        for (double& x : v) x /= static_cast<double>(counts[label]);
        normalize(v);
    }
    return ToyClassifier(dimension, std::move(sums));
}

Embedding ToyClassifier::embed(std::string_view text) const { return hashed_bag_of_words(text, dimension_); }

Prediction ToyClassifier::predict(std::string_view text) const {
    if (text::tokenize(text).empty()) throw Error(ErrorCode::EmptyInput, "text has no tokens");
    const Embedding e = embed(text);
    Prediction out;
    double best = 0;
    bool first = true;
    // centroids_ is ordered by label, so a strict comparison keeps the
    // smallest label on ties.
    for (const auto& [label, centroid] : centroids_) {
        const double score = dot(e, centroid);
        out.scores[label] = score;
        if (first || score > best) {
            best = score;
            out.label = label;
            first = false;
        }
    }
    return out;
}

std::vector<std::string> ToyClassifier::labels() const {
    std::vector<std::string> out;
    for (const auto& [label, v] : centroids_) out.push_back(label);
    return out;
}

}  // namespace loomxai::model
