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
#include <random>
#include <string>
#include <vector>

#include "loomxai/dataset.hpp"
#include "loomxai/filter.hpp"
#include "loomxai/headless.hpp"
#include "loomxai/projection.hpp"
#include "loomxai/wire.hpp"

namespace loomxai::harness {

using Rng = std::mt19937_64;

/// Short text mixing ASCII, accented Latin, Greek and CJK so casefolding
/// and scalar-length rules get exercised.
std::string random_text(Rng& rng, std::size_t max_scalars);
/// Arbitrary serializable value, nested up to `depth`.
Value random_value(Rng& rng, int depth);
wire::Message random_message(Rng& rng);

/// Dataset with `rating` (number), `source` (category) and `note`
/// (string) columns; cells are sometimes missing.
data::TextDataset random_dataset(Rng& rng, std::size_t max_rows);
/// Spec that validates against random_dataset()'s schema.
data::FilterSpec random_spec(Rng& rng, const data::TextDataset& ds);
/// Wire value of a spec the selector must reject.
Value random_invalid_spec(Rng& rng);

std::vector<model::Point2> random_points(Rng& rng, std::size_t n, bool grid);
model::Rect random_rect(Rng& rng);

/// Frontend traffic a DataExplorer view could send, including writes the
/// kernel must refuse.
widgets::ClientAction random_explorer_action(Rng& rng, const data::TextDataset& ds);
widgets::ClientAction random_selector_action(Rng& rng, const data::TextDataset& ds);
/// `vocabulary` feeds submit_text; some submissions are empty on purpose.
widgets::ClientAction random_inference_action(Rng& rng, const std::vector<std::string>& vocabulary);

}  // namespace loomxai::harness
