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

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "loomxai/dataset.hpp"
#include "loomxai/value.hpp"

namespace loomxai::data {

enum class PredicateOp { eq, ne, le, ge };

std::string_view to_string(PredicateOp op) noexcept;
std::optional<PredicateOp> parse_predicate_op(std::string_view s) noexcept;

struct Predicate {
    std::string column;
    PredicateOp op = PredicateOp::eq;
    Value value;

    bool operator==(const Predicate&) const = default;
};

/// Declarative row filter shared by the kernel and the view.
///
/// A record survives when its text contains `substring` (case-insensitive),
/// its length in scalar values lies in [min_len, max_len], every predicate
/// holds and its id is not excluded. A predicate on a missing cell fails.
struct FilterSpec {
    std::optional<std::string> substring;
    std::optional<std::int64_t> min_len;
    std::optional<std::int64_t> max_len;
    std::vector<Predicate> predicates;
    std::set<std::string> excluded_ids;

    bool empty() const noexcept;
    bool operator==(const FilterSpec&) const = default;

    /// Wire form; absent members are omitted, so the empty spec is {}.
    Value to_value() const;
    /// Throws Error{InvalidSpec} on a structurally bad value.
    static FilterSpec from_value(const Value& value);
};

/// Throws Error{InvalidSpec}, Error{UnknownColumn} or Error{TypeMismatch}.
void validate(const FilterSpec& spec, const Schema& schema);

bool matches(const Record& record, const FilterSpec& spec);

/// Subset in original order. Validates `spec` against the schema first.
TextDataset apply_filter(const TextDataset& ds, const FilterSpec& spec);

}  // namespace loomxai::data
