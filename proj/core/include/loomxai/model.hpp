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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loomxai/dataset.hpp"

namespace loomxai::model {

using Embedding = std::vector<double>;

struct Prediction {
    std::string label;
    std::map<std::string, double> scores;
};

/// The boundary a real model plugs into. Implementations must be
/// deterministic per input and safe to call concurrently once built.
class ClassifierAdapter {
public:
    virtual ~ClassifierAdapter() = default;

    virtual std::size_t dimension() const = 0;
    virtual Embedding embed(std::string_view text) const = 0;
    /// Throws Error{EmptyInput} for text with nothing to classify.
    virtual Prediction predict(std::string_view text) const = 0;
    /// Ordered label set; every predicted label is one of these.
    virtual std::vector<std::string> labels() const = 0;
};

inline constexpr std::uint32_t kFnvOffsetBasis = 2166136261u;
inline constexpr std::uint32_t kFnvPrime = 16777619u;
inline constexpr std::size_t kDefaultDimension = 64;

/// FNV-1a, 32 bit, over the UTF-8 bytes.
std::uint32_t fnv1a32(std::string_view bytes) noexcept;

/// Token counts hashed into `dimension` buckets, then L2-normalized.
/// Text without tokens maps to the zero vector.
Embedding hashed_bag_of_words(std::string_view text, std::size_t dimension);

double dot(std::span<const double> a, std::span<const double> b) noexcept;

/// Nearest-centroid classifier over hashed bag-of-words vectors.
///
/// Each label's centroid is the L2-normalized mean of its texts'
/// embeddings (zero if none of them had a token). Scores are cosine
/// similarities; the argmax wins and ties go to the smallest label.
class ToyClassifier final : public ClassifierAdapter {
public:
    /// Uses labeled records only. Throws Error{NoLabels} if there are none.
    static ToyClassifier fit(const data::TextDataset& ds, std::size_t dimension = kDefaultDimension);

    std::size_t dimension() const override { return dimension_; }
    Embedding embed(std::string_view text) const override;
    Prediction predict(std::string_view text) const override;
    std::vector<std::string> labels() const override;

    const std::map<std::string, Embedding>& centroids() const noexcept { return centroids_; }

private:
    ToyClassifier(std::size_t dimension, std::map<std::string, Embedding> centroids);

    std::size_t dimension_;
    std::map<std::string, Embedding> centroids_;
};

inline ToyClassifier toy_fit(const data::TextDataset& ds, std::size_t dimension = kDefaultDimension) {
    return ToyClassifier::fit(ds, dimension);
}

}  // namespace loomxai::model
