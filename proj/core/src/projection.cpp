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

#include "loomxai/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "loomxai/error.hpp"

namespace loomxai::model {
namespace {

constexpr int kMaxSweeps = 100;
// Eigenvalues below this fraction of the largest are treated as absent.
constexpr double kRankTolerance = 1e-12;

}  // namespace

Rect Rect::normalized() const noexcept {
    return {std::min(x0, x1), std::min(y0, y1), std::max(x0, x1), std::max(y0, y1)};
}

bool Rect::contains(const Point2& p) const noexcept {
    return x0 <= p.x && p.x <= x1 && y0 <= p.y && p.y <= y1;
}

Value Rect::to_value() const { return Value{{"x0", x0}, {"y0", y0}, {"x1", x1}, {"y1", y1}}; }

Rect Rect::from_value(const Value& v) {
    if (!v.is_object()) throw Error(ErrorCode::InvalidSpec, "brush rect must be a map");
    auto field = [&v](const char* name) {
        auto it = v.find(name);
        if (it == v.end() || !it->is_number() || !std::isfinite(it->get<double>()))
            throw Error(ErrorCode::InvalidSpec, std::string("brush rect needs a finite '") + name + "'");
        return it->get<double>();
    };
    return {field("x0"), field("y0"), field("x1"), field("y1")};
}

std::vector<EigenPair> symmetric_eigen(std::vector<double> a, std::size_t n) {
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
    auto at = [n](std::vector<double>& m, std::size_t r, std::size_t c) -> double& { return m[r * n + c]; };

    const double total = std::inner_product(a.begin(), a.end(), a.begin(), 0.0);
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += at(a, p, q) * at(a, p, q);
        if (off == 0.0 || off <= 1e-30 * total) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(a, p, q);
                if (apq == 0.0) continue;
                const double theta = (at(a, q, q) - at(a, p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double kp = at(a, k, p);
                    const double kq = at(a, k, q);
                    at(a, k, p) = c * kp - s * kq;
                    at(a, k, q) = s * kp + c * kq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double pk = at(a, p, k);
                    const double qk = at(a, q, k);
                    at(a, p, k) = c * pk - s * qk;
                    at(a, q, k) = s * pk + c * qk;
                }
                at(a, p, q) = 0.0;
                at(a, q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double kp = at(v, k, p);
                    const double kq = at(v, k, q);
                    at(v, k, p) = c * kp - s * kq;
                    at(v, k, q) = s * kp + c * kq;
                }
            }
        }
    }

    std::vector<EigenPair> pairs(n);
    for (std::size_t j = 0; j < n; ++j) {
        pairs[j].value = at(a, j, j);
        pairs[j].vector.resize(n);
        for (std::size_t i = 0; i < n; ++i) pairs[j].vector[i] = at(v, i, j);
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const EigenPair& l, const EigenPair& r) { return l.value > r.value; });
    return pairs;
}

const std::vector<Point2>& PcaProjector::fit(std::span<const Embedding> vectors) {
    const std::size_t n = vectors.size();
    if (n < 2) throw Error(ErrorCode::TooFewPoints, "PCA needs at least 2 points, got " + std::to_string(n));
    const std::size_t d = vectors.front().size();
    if (d > kMaxDimension)
        throw Error(ErrorCode::DimensionTooLarge,
                    "dimension " + std::to_string(d) + " exceeds " + std::to_string(kMaxDimension));
    for (const auto& row : vectors) {
        if (row.size() != d) throw Error(ErrorCode::TypeMismatch, "vectors differ in dimension");
    }

    mean_.assign(d, 0.0);
    for (const auto& row : vectors)
        for (std::size_t j = 0; j < d; ++j) mean_[j] += row[j];
    for (double& m : mean_) m /= static_cast<double>(n);

    const bool all_identical = std::all_of(vectors.begin(), vectors.end(),
                                           [&](const Embedding& row) { return row == vectors.front(); });

    components_ = {std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
    variance_ = {0.0, 0.0};
    if (!all_identical && d > 0) {
        std::vector<double> cov(d * d, 0.0);
        std::vector<double> centered(d);
        for (const auto& row : vectors) {
            for (std::size_t j = 0; j < d; ++j) centered[j] = row[j] - mean_[j];
            for (std::size_t r = 0; r < d; ++r) {
                if (centered[r] == 0.0) continue;
                for (std::size_t c = r; c < d; ++c) cov[r * d + c] += centered[r] * centered[c];
            }
        }
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = r; c < d; ++c) {
                cov[r * d + c] /= static_cast<double>(n - 1);
                cov[c * d + r] = cov[r * d + c];
            }
        }
        auto pairs = symmetric_eigen(std::move(cov), d);
        const double top = pairs.front().value;
        for (std::size_t k = 0; k < 2 && k < pairs.size(); ++k) {
            if (!(top > 0.0) || pairs[k].value <= kRankTolerance * top) break;
            auto& comp = pairs[k].vector;
            std::size_t pivot = 0;
            for (std::size_t j = 1; j < d; ++j) {
                if (std::fabs(comp[j]) > std::fabs(comp[pivot])) pivot = j;
            }
            if (comp[pivot] < 0)
                for (double& x : comp) x = -x;
            components_[k] = std::move(comp);
            variance_[k] = pairs[k].value;
        }
    }

    coords_.clear();
    coords_.reserve(n);
    for (const auto& row : vectors) coords_.push_back(transform(row));
    return coords_;
}

Point2 PcaProjector::transform(std::span<const double> vector) const {
    if (vector.size() != mean_.size())
        throw Error(ErrorCode::TypeMismatch, "expected dimension " + std::to_string(mean_.size()) + ", got " +
                                                 std::to_string(vector.size()));
    Point2 p;
    for (std::size_t j = 0; j < vector.size(); ++j) {
        const double c = vector[j] - mean_[j];
        p.x += c * components_[0][j];
        p.y += c * components_[1][j];
    }
    // Fold -0 so identical inputs give byte-identical output.
    if (p.x == 0.0) p.x = 0.0;
    if (p.y == 0.0) p.y = 0.0;
    return p;
}

PcaProjector pca_fit(std::span<const Embedding> vectors) {
    PcaProjector projector;
    projector.fit(vectors);
    return projector;
}

ProjectorFactory pca_factory() {
    return [] { return std::make_unique<PcaProjector>(); };
}

std::vector<std::size_t> knn(std::span<const Point2> points, const Point2& query, std::size_t k) {
    if (k < 1 || k > points.size())
        throw Error(ErrorCode::BadK, "k=" + std::to_string(k) + " with " + std::to_string(points.size()) + " points");
    std::vector<std::pair<double, std::size_t>> keyed(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double dx = points[i].x - query.x;
        const double dy = points[i].y - query.y;
        keyed[i] = {dx * dx + dy * dy, i};
    }
    std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(k), keyed.end());
    std::vector<std::size_t> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = keyed[i].second;
    return out;
}

std::vector<std::size_t> points_in_rect(std::span<const Point2> points, const Rect& rect) {
    const Rect r = rect.normalized();
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (r.contains(points[i])) out.push_back(i);
    }
    return out;
}

}  // namespace loomxai::model
