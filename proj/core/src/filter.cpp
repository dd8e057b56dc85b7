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

#include "loomxai/filter.hpp"

#include <cmath>

#include "loomxai/error.hpp"
#include "loomxai/text.hpp"

namespace loomxai::data {
namespace {

std::int64_t length_bound(const Value& v, const char* field) {
    if (!v.is_number()) throw Error(ErrorCode::InvalidSpec, std::string(field) + " must be a number");
    const double d = v.get<double>();
    if (std::trunc(d) != d || d < 0 || d > 9007199254740992.0)
        throw Error(ErrorCode::InvalidSpec, std::string(field) + " must be a non-negative integer");
    return static_cast<std::int64_t>(d);
}

bool predicate_holds(const Predicate& p, const Value& cell) {
    if (cell.is_number()) {
        const double lhs = cell.get<double>();
        const double rhs = p.value.get<double>();
        switch (p.op) {
            case PredicateOp::eq: return lhs == rhs;
            case PredicateOp::ne: return lhs != rhs;
            case PredicateOp::le: return lhs <= rhs;
            case PredicateOp::ge: return lhs >= rhs;
        }
        return false;
    }
    const bool equal = cell.get_ref<const std::string&>() == p.value.get_ref<const std::string&>();
    return p.op == PredicateOp::eq ? equal : !equal;
}

}  // namespace

std::string_view to_string(PredicateOp op) noexcept {
    switch (op) {
        case PredicateOp::eq: return "eq";
        case PredicateOp::ne: return "ne";
        case PredicateOp::le: return "le";
        case PredicateOp::ge: return "ge";
    }
    return "";
}

std::optional<PredicateOp> parse_predicate_op(std::string_view s) noexcept {
    for (auto op : {PredicateOp::eq, PredicateOp::ne, PredicateOp::le, PredicateOp::ge}) {
        if (to_string(op) == s) return op;
    }
    return std::nullopt;
}

bool FilterSpec::empty() const noexcept {
    return !substring && !min_len && !max_len && predicates.empty() && excluded_ids.empty();
}

Value FilterSpec::to_value() const {
    Value out = Value::object();
    if (substring) out["substring"] = *substring;
    if (min_len) out["min_len"] = static_cast<double>(*min_len);
    if (max_len) out["max_len"] = static_cast<double>(*max_len);
    if (!predicates.empty()) {
        Value list = Value::array();
        for (const auto& p : predicates) {
            list.push_back({{"column", p.column}, {"op", std::string(to_string(p.op))}, {"value", p.value}});
        }
        out["predicates"] = std::move(list);
    }
    if (!excluded_ids.empty()) out["excluded_ids"] = excluded_ids;
    return out;
}

FilterSpec FilterSpec::from_value(const Value& value) {
    if (value.is_null()) return {};
    if (!value.is_object()) throw Error(ErrorCode::InvalidSpec, "filter spec must be a map");
    FilterSpec spec;
    for (const auto& [key, v] : value.items()) {
        if (key == "substring") {
            if (!v.is_string()) throw Error(ErrorCode::InvalidSpec, "substring must be a string");
            spec.substring = v.get<std::string>();
        } else if (key == "min_len") {
            spec.min_len = length_bound(v, "min_len");
        } else if (key == "max_len") {
            spec.max_len = length_bound(v, "max_len");
        } else if (key == "predicates") {
            if (!v.is_array()) throw Error(ErrorCode::InvalidSpec, "predicates must be a list");
            for (const auto& p : v) {
                if (!p.is_object() || !p.contains("column") || !p.contains("op") || !p.contains("value") ||
                    !p["column"].is_string() || !p["op"].is_string()) {
                    throw Error(ErrorCode::InvalidSpec, "predicate needs column, op and value");
                }
                const auto op = parse_predicate_op(p["op"].get<std::string>());
                if (!op) throw Error(ErrorCode::InvalidSpec, "unknown predicate op '" + p["op"].get<std::string>() + "'");
                spec.predicates.push_back({p["column"].get<std::string>(), *op, p["value"]});
            }
        } else if (key == "excluded_ids") {
            if (!v.is_array()) throw Error(ErrorCode::InvalidSpec, "excluded_ids must be a list");
            for (const auto& id : v) {
                if (!id.is_string()) throw Error(ErrorCode::InvalidSpec, "excluded_ids must hold strings");
                spec.excluded_ids.insert(id.get<std::string>());
            }
        } else {
            throw Error(ErrorCode::InvalidSpec, "unknown filter field '" + key + "'");
        }
    }
    return spec;
}

void validate(const FilterSpec& spec, const Schema& schema) {
    if ((spec.min_len && *spec.min_len < 0) || (spec.max_len && *spec.max_len < 0))
        throw Error(ErrorCode::InvalidSpec, "length bounds must be non-negative");
    if (spec.min_len && spec.max_len && *spec.min_len > *spec.max_len)
        throw Error(ErrorCode::InvalidSpec, "min_len exceeds max_len");
    for (const auto& p : spec.predicates) {
        auto it = schema.find(p.column);
        if (it == schema.end()) throw Error(ErrorCode::UnknownColumn, p.column);
        if (it->second == ColumnKind::number) {
            if (!p.value.is_number())
                throw Error(ErrorCode::TypeMismatch, "column '" + p.column + "' compares against numbers");
        } else {
            if (p.op == PredicateOp::le || p.op == PredicateOp::ge)
                throw Error(ErrorCode::TypeMismatch,
                            std::string(to_string(p.op)) + " on " + std::string(to_string(it->second)) +
                                " column '" + p.column + "'");
            if (!p.value.is_string())
                throw Error(ErrorCode::TypeMismatch, "column '" + p.column + "' compares against strings");
        }
    }
}

bool matches(const Record& record, const FilterSpec& spec) {
    if (spec.excluded_ids.count(record.id)) return false;
    if (spec.min_len || spec.max_len) {
        const auto len = static_cast<std::int64_t>(text::length(record.text));
        if (spec.min_len && len < *spec.min_len) return false;
        if (spec.max_len && len > *spec.max_len) return false;
    }
    for (const auto& p : spec.predicates) {
        auto it = record.extras.find(p.column);
        if (it == record.extras.end() || !predicate_holds(p, it->second)) return false;
    }
    if (spec.substring && !text::contains_folded(record.text, *spec.substring)) return false;
    return true;
}

TextDataset apply_filter(const TextDataset& ds, const FilterSpec& spec) {
    validate(spec, ds.schema());
    if (spec.empty()) return ds;
    std::vector<Record> kept;
    for (const auto& r : ds.records()) {
        if (matches(r, spec)) kept.push_back(r);
    }
    return TextDataset(std::move(kept), ds.schema());
}

}  // namespace loomxai::data
