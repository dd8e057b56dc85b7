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

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "loomxai/model.hpp"
#include "loomxai/value.hpp"

namespace loomxai::model {

struct Point2 {
    double x = 0;
    double y = 0;

    bool operator==(const Point2&) const = default;
};

/// Axis-aligned brush rectangle; corners may come in any order.
struct Rect {
    double x0 = 0;
    double y0 = 0;
    double x1 = 0;
    double y1 = 0;

    Rect normalized() const noexcept;
    bool contains(const Point2& p) const noexcept;  // boundary inclusive, expects normalized()

    Value to_value() const;
    /// Throws Error{InvalidSpec} unless `v` is {x0,y0,x1,y1} with finite numbers.
    static Rect from_value(const Value& v);
};

/// Maps high-dimensional embeddings to the plane, including points that
/// were not part of the fit.
class Projector {
public:
    virtual ~Projector() = default;

    virtual const std::vector<Point2>& fit(std::span<const Embedding> vectors) = 0;
    virtual Point2 transform(std::span<const double> vector) const = 0;
    virtual const std::vector<Point2>& fitted_coords() const = 0;
};

using ProjectorFactory = std::function<std::unique_ptr<Projector>()>;

/// Exact two-component PCA.
///
/// Components come from a Jacobi eigendecomposition of the covariance,
/// ordered by decreasing eigenvalue, signed so that each component's
/// largest-magnitude entry is positive. Directions the data does not span
/// are zero-filled, so rank-deficient input still yields defined coords.
class PcaProjector final : public Projector {
public:
    static constexpr std::size_t kMaxDimension = 256;

    /// Throws Error{TooFewPoints} for n < 2, Error{DimensionTooLarge} for
    /// d > kMaxDimension.
    const std::vector<Point2>& fit(std::span<const Embedding> vectors) override;
    Point2 transform(std::span<const double> vector) const override;
    const std::vector<Point2>& fitted_coords() const override { return coords_; }

    const std::vector<double>& mean() const noexcept { return mean_; }
    const std::array<std::vector<double>, 2>& components() const noexcept { return components_; }
    const std::array<double, 2>& explained_variance() const noexcept { return variance_; }

private:
    std::vector<double> mean_;
    std::array<std::vector<double>, 2> components_;
    std::array<double, 2> variance_{};
    std::vector<Point2> coords_;
};

PcaProjector pca_fit(std::span<const Embedding> vectors);
ProjectorFactory pca_factory();

struct EigenPair {
    double value;
    std::vector<double> vector;
};

/// All eigenpairs of a symmetric matrix (row-major, n*n), by cyclic Jacobi
/// rotations, in decreasing eigenvalue order.
std::vector<EigenPair> symmetric_eigen(std::vector<double> matrix, std::size_t n);

/// k nearest points to `query` by Euclidean distance, nearest first;
/// equal distances keep ascending index order. Throws Error{BadK} unless
/// 1 <= k <= points.size().
std::vector<std::size_t> knn(std::span<const Point2> points, const Point2& query, std::size_t k);

/// Indices, ascending, of points inside `rect` (boundary inclusive).
std::vector<std::size_t> points_in_rect(std::span<const Point2> points, const Rect& rect);

}  // namespace loomxai::model
