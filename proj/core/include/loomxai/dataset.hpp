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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loomxai/value.hpp"
#include "loomxai/wire.hpp"

namespace loomxai::data {

enum class ColumnKind { string, number, category };

std::string_view to_string(ColumnKind kind) noexcept;

using Schema = std::map<std::string, ColumnKind>;

/// One labeled text row. `extras` holds the non-reserved columns; absent
/// and null cells are simply missing from the map. Number columns hold
/// doubles, string and category columns hold strings.
struct Record {
    std::string id;
    std::string text;
    std::optional<std::string> label;
    std::map<std::string, Value> extras;

    bool operator==(const Record&) const = default;
};

/// Ordered, immutable collection of records with unique ids.
class TextDataset {
public:
    TextDataset() = default;

    /// Throws Error{DuplicateId} or Error{TypeMismatch} when an extra does
    /// not conform to `schema`.
    TextDataset(std::vector<Record> records, Schema schema);

    const std::vector<Record>& records() const noexcept { return records_; }
    const Schema& schema() const noexcept { return schema_; }
    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }
    const Record& operator[](std::size_t i) const { return records_[i]; }
    std::vector<std::string> ids() const;

    bool operator==(const TextDataset&) const = default;

private:
    std::vector<Record> records_;
    Schema schema_;
};

enum class SourceFormat { records, jsonl, csv };

struct IngestOptions {
    /// Columns with at most this many distinct strings become categories.
    std::size_t category_threshold = 20;
};

/// Normalizes a list of record objects. Reserved fields are id, text and
/// label; every other scalar field becomes an extra column.
TextDataset ingest_records(const Value& records, const IngestOptions& options = {});

/// Parses `source` as jsonl or csv text (SourceFormat::records expects a
/// JSON list). Errors: MissingTextField, ParseError{line}, DuplicateId.
TextDataset ingest(std::string_view source, SourceFormat format, const IngestOptions& options = {});

/// Reads a .jsonl / .csv / .json file, choosing the format by extension.
TextDataset load_file(const std::filesystem::path& path, const IngestOptions& options = {});

/// Flat record objects, the inverse of ingest_records().
Value to_records(const TextDataset& ds);
Value to_record(const Record& record);
std::string to_jsonl(const TextDataset& ds);
Value schema_to_value(const Schema& schema);

/// to_records() split into page messages.
std::vector<wire::Message> to_pages(const TextDataset& ds, std::size_t page_size,
                                    const wire::PageTarget& target = {},
                                    const std::string& transfer_id = wire::random_transfer_id());

struct NumberRange {
    double min = 0;
    double max = 0;
};

struct ColumnSummary {
    ColumnKind kind = ColumnKind::string;
    std::optional<NumberRange> range;       // number columns with data
    std::vector<std::string> distinct;      // category columns, sorted
    std::size_t distinct_count = 0;         // any non-number column
};

struct DatasetStats {
    std::size_t count = 0;
    std::size_t min_length = 0;
    std::size_t max_length = 0;
    std::map<std::string, ColumnSummary> columns;

    Value to_value() const;
};

/// Exact statistics; text lengths are in Unicode scalar values.
DatasetStats column_stats(const TextDataset& ds);

}  // namespace loomxai::data
