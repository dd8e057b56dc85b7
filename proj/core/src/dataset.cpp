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

#include "loomxai/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "loomxai/error.hpp"
#include "loomxai/text.hpp"

namespace loomxai::data {
namespace {

struct RawRow {
    std::size_t line = 0;
    std::optional<std::string> id;
    std::string text;
    std::optional<std::string> label;
    std::map<std::string, Value> cells;  // non-null extras, unnormalized
};

bool is_reserved(const std::string& key) { return key == "id" || key == "text" || key == "label"; }

std::string scalar_to_string(const Value& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return format_number(v.get<double>());
}

std::optional<double> parse_number(const std::string& s) {
    double d = 0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, d);
    if (ec != std::errc() || ptr != end || s.empty() || !std::isfinite(d)) return std::nullopt;
    return d == 0.0 ? 0.0 : d;
}

// Reserved fields of a JSON object row.
RawRow raw_from_object(const Value& obj, std::size_t line) {
    if (!obj.is_object()) throw ParseError(line, "record must be an object");
    RawRow row;
    row.line = line;
    for (const auto& [key, v] : obj.items()) {
        if (key == "text") {
            if (v.is_null()) continue;
            if (!v.is_string()) throw ParseError(line, "field 'text' must be a string");
            row.text = v.get<std::string>();
        } else if (key == "id") {
            if (v.is_null()) continue;
            if (!v.is_string() && !v.is_number()) throw ParseError(line, "field 'id' must be a string or number");
            row.id = scalar_to_string(v);
        } else if (key == "label") {
            if (v.is_null()) continue;
            if (!v.is_string() && !v.is_number() && !v.is_boolean())
                throw ParseError(line, "field 'label' must be a scalar");
            row.label = scalar_to_string(v);
        } else {
            if (v.is_null()) continue;
            if (v.is_array() || v.is_object()) throw ParseError(line, "column '" + key + "' is not a scalar");
            row.cells[key] = v;
        }
    }
    if (!obj.contains("text") || obj["text"].is_null()) throw Error(ErrorCode::MissingTextField, "line " + std::to_string(line));
    return row;
}

TextDataset normalize(std::vector<RawRow> rows, const std::vector<std::string>& declared_columns,
                      bool numeric_strings, const IngestOptions& options) {
    std::set<std::string> columns(declared_columns.begin(), declared_columns.end());
    for (const auto& row : rows) {
        for (const auto& [key, v] : row.cells) columns.insert(key);
    }

    Schema schema;
    for (const auto& column : columns) {
        bool all_numeric = true;
        std::set<std::string> distinct;
        for (const auto& row : rows) {
            auto it = row.cells.find(column);
            if (it == row.cells.end()) continue;
            const Value& v = it->second;
            const bool numeric = v.is_number() || (numeric_strings && v.is_string() &&
                                                   parse_number(v.get<std::string>()).has_value());
            all_numeric = all_numeric && numeric;
            distinct.insert(scalar_to_string(v));
        }
        if (all_numeric && !distinct.empty()) {
            schema[column] = ColumnKind::number;
        } else if (distinct.size() <= options.category_threshold) {
            schema[column] = ColumnKind::category;
        } else {
            schema[column] = ColumnKind::string;
        }
    }

    std::size_t width = 1;
    for (std::size_t n = rows.empty() ? 0 : rows.size() - 1; n >= 10; n /= 10) ++width;

    std::vector<Record> records;
    records.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        RawRow& row = rows[i];
        Record record;
        if (row.id) {
            record.id = std::move(*row.id);
        } else {
            std::string index = std::to_string(i);
            record.id = std::string(width - std::min(width, index.size()), '0') + index;
        }
        if (!text::is_valid_utf8(row.text)) throw ParseError(row.line, "text is not valid UTF-8");
        record.text = std::move(row.text);
        record.label = std::move(row.label);
        for (auto& [key, v] : row.cells) {
            if (schema.at(key) == ColumnKind::number) {
                record.extras[key] = v.is_number() ? Value(v.get<double>())
                                                   : Value(*parse_number(v.get<std::string>()));
            } else {
                record.extras[key] = scalar_to_string(v);
            }
        }
        records.push_back(std::move(record));
    }
    return TextDataset(std::move(records), std::move(schema));
}

// RFC 4180: quoted fields may contain separators, quotes ("") and newlines.
struct CsvRow {
    std::size_t line;
    std::vector<std::optional<std::string>> cells;
};

std::vector<CsvRow> parse_csv(std::string_view src) {
    std::vector<CsvRow> rows;
    std::size_t line = 1;
    std::size_t i = 0;
    while (i < src.size()) {
        CsvRow row{line, {}};
        bool row_done = false;
        while (!row_done) {
            std::string cell;
            bool quoted = false;
            if (i < src.size() && src[i] == '"') {
                quoted = true;
                ++i;
                while (true) {
                    if (i >= src.size()) throw ParseError(row.line, "unterminated quoted field");
                    const char c = src[i++];
                    if (c == '"') {
                        if (i < src.size() && src[i] == '"') {
                            cell.push_back('"');
                            ++i;
                        } else {
                            break;
                        }
                    } else {
                        if (c == '\n') ++line;
                        cell.push_back(c);
                    }
                }
                if (i < src.size() && src[i] != ',' && src[i] != '\n' && src[i] != '\r')
                    throw ParseError(line, "unexpected character after closing quote");
            } else {
                while (i < src.size() && src[i] != ',' && src[i] != '\n' && src[i] != '\r') {
                    if (src[i] == '"') throw ParseError(line, "quote inside unquoted field");
                    cell.push_back(src[i++]);
                }
            }
            row.cells.push_back(cell.empty() && !quoted ? std::nullopt : std::optional<std::string>(cell));
            if (i >= src.size()) {
                row_done = true;
            } else if (src[i] == ',') {
                ++i;
            } else {
                if (src[i] == '\r') ++i;
                if (i < src.size() && src[i] == '\n') ++i;
                ++line;
                row_done = true;
            }
        }
        const bool blank = row.cells.size() == 1 && !row.cells[0];
        if (!blank) rows.push_back(std::move(row));
    }
    return rows;
}

TextDataset ingest_csv(std::string_view src, const IngestOptions& options) {
    auto rows = parse_csv(src);
    if (rows.empty()) throw ParseError(1, "missing header row");
    std::vector<std::string> header;
    for (const auto& cell : rows.front().cells) {
        if (!cell) throw ParseError(1, "empty column name");
        if (std::find(header.begin(), header.end(), *cell) != header.end())
            throw ParseError(1, "duplicate column '" + *cell + "'");
        header.push_back(*cell);
    }
    const auto text_col = std::find(header.begin(), header.end(), "text");
    if (text_col == header.end()) throw Error(ErrorCode::MissingTextField, "csv header has no 'text' column");

    std::vector<std::string> declared;
    for (const auto& h : header) {
        if (!is_reserved(h)) declared.push_back(h);
    }

    std::vector<RawRow> raw;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const CsvRow& row = rows[r];
        if (row.cells.size() != header.size()) {
            throw ParseError(row.line, "expected " + std::to_string(header.size()) + " fields, got " +
                                           std::to_string(row.cells.size()));
        }
        RawRow out;
        out.line = row.line;
        for (std::size_t c = 0; c < header.size(); ++c) {
            const auto& cell = row.cells[c];
            const std::string& name = header[c];
            if (name == "text") {
                out.text = cell.value_or("");
            } else if (!cell) {
                continue;
            } else if (name == "id") {
                out.id = *cell;
            } else if (name == "label") {
                out.label = *cell;
            } else {
                out.cells[name] = *cell;
            }
        }
        raw.push_back(std::move(out));
    }
    return normalize(std::move(raw), declared, /*numeric_strings=*/true, options);
}

TextDataset ingest_jsonl(std::string_view src, const IngestOptions& options) {
    std::vector<RawRow> raw;
    std::size_t line = 0;
    std::size_t pos = 0;
    while (pos <= src.size()) {
        const std::size_t nl = src.find('\n', pos);
        std::string_view text = src.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++line;
        if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
        if (text.find_first_not_of(" \t") != std::string_view::npos) {
            Value obj;
            try {
                obj = decode_value(text);
            } catch (const MalformedError& e) {
                throw ParseError(line, e.reason());
            }
            raw.push_back(raw_from_object(obj, line));
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return normalize(std::move(raw), {}, /*numeric_strings=*/false, options);
}

}  // namespace

std::string_view to_string(ColumnKind kind) noexcept {
    switch (kind) {
        case ColumnKind::string: return "string";
        case ColumnKind::number: return "number";
        case ColumnKind::category: return "category";
    }
    return "";
}

TextDataset::TextDataset(std::vector<Record> records, Schema schema)
    : records_(std::move(records)), schema_(std::move(schema)) {
    std::unordered_set<std::string> seen;
    seen.reserve(records_.size());
    for (const auto& r : records_) {
        if (!seen.insert(r.id).second) throw Error(ErrorCode::DuplicateId, r.id);
        for (const auto& [key, v] : r.extras) {
            auto it = schema_.find(key);
            if (it == schema_.end()) throw Error(ErrorCode::UnknownColumn, key);
            const bool ok = it->second == ColumnKind::number ? v.is_number() : v.is_string();
            if (!ok) throw Error(ErrorCode::TypeMismatch, "record '" + r.id + "' column '" + key + "'");
        }
    }
}

std::vector<std::string> TextDataset::ids() const {
    std::vector<std::string> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back(r.id);
    return out;
}

TextDataset ingest_records(const Value& records, const IngestOptions& options) {
    if (!records.is_array()) throw ParseError(1, "records source must be a list");
    std::vector<RawRow> raw;
    raw.reserve(records.size());
    std::size_t index = 0;
    for (const auto& obj : records) raw.push_back(raw_from_object(obj, ++index));
    return normalize(std::move(raw), {}, /*numeric_strings=*/false, options);
}

TextDataset ingest(std::string_view source, SourceFormat format, const IngestOptions& options) {
    switch (format) {
        case SourceFormat::records: {
            Value parsed;
            try {
                parsed = decode_value(source);
            } catch (const MalformedError& e) {
                throw ParseError(1, e.reason());
            }
            return ingest_records(parsed, options);
        }
        case SourceFormat::jsonl: return ingest_jsonl(source, options);
        case SourceFormat::csv: return ingest_csv(source, options);
    }
    throw Error(ErrorCode::BadConfig, "unknown source format");
}

TextDataset load_file(const std::filesystem::path& path, const IngestOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string ext = path.extension().string();
    if (ext == ".jsonl" || ext == ".ndjson") return ingest(buf.str(), SourceFormat::jsonl, options);
    if (ext == ".csv") return ingest(buf.str(), SourceFormat::csv, options);
    if (ext == ".json") return ingest(buf.str(), SourceFormat::records, options);
    throw Error(ErrorCode::Io, "unrecognized dataset extension '" + ext + "'");
}

Value to_record(const Record& record) {
    Value obj = Value::object();
    for (const auto& [key, v] : record.extras) obj[key] = v;
    obj["id"] = record.id;
    obj["text"] = record.text;
    if (record.label) obj["label"] = *record.label;
    return obj;
}

Value to_records(const TextDataset& ds) {
    Value out = Value::array();
    for (const auto& r : ds.records()) out.push_back(to_record(r));
    return out;
}

std::string to_jsonl(const TextDataset& ds) {
    std::string out;
    for (const auto& r : ds.records()) {
        encode_value(to_record(r), out);
        out.push_back('\n');
    }
    return out;
}

Value schema_to_value(const Schema& schema) {
    Value out = Value::object();
    for (const auto& [column, kind] : schema) out[column] = std::string(to_string(kind));
    return out;
}

std::vector<wire::Message> to_pages(const TextDataset& ds, std::size_t page_size,
                                    const wire::PageTarget& target, const std::string& transfer_id) {
    const Value rows = to_records(ds);
    return wire::paginate(rows.get_ref<const Value::array_t&>(), page_size, target, transfer_id);
}

DatasetStats column_stats(const TextDataset& ds) {
    DatasetStats stats;
    stats.count = ds.size();
    bool first = true;
    for (const auto& r : ds.records()) {
        const std::size_t len = text::length(r.text);
        stats.min_length = first ? len : std::min(stats.min_length, len);
        stats.max_length = first ? len : std::max(stats.max_length, len);
        first = false;
    }
    for (const auto& [column, kind] : ds.schema()) {
        ColumnSummary summary;
        summary.kind = kind;
        std::set<std::string> distinct;
        for (const auto& r : ds.records()) {
            auto it = r.extras.find(column);
            if (it == r.extras.end()) continue;
            if (kind == ColumnKind::number) {
                const double d = it->second.get<double>();
                if (!summary.range) {
                    summary.range = NumberRange{d, d};
                } else {
                    summary.range->min = std::min(summary.range->min, d);
                    summary.range->max = std::max(summary.range->max, d);
                }
            } else {
                distinct.insert(it->second.get<std::string>());
            }
        }
        summary.distinct_count = distinct.size();
        if (kind == ColumnKind::category) summary.distinct.assign(distinct.begin(), distinct.end());
        stats.columns.emplace(column, std::move(summary));
    }
    return stats;
}

Value DatasetStats::to_value() const {
    Value cols = Value::object();
    for (const auto& [column, s] : columns) {
        Value entry = {{"kind", std::string(data::to_string(s.kind))}};
        if (s.kind == ColumnKind::number) {
            if (s.range) {
                entry["min"] = s.range->min;
                entry["max"] = s.range->max;
            }
        } else if (s.kind == ColumnKind::category) {
            entry["values"] = s.distinct;
        } else {
            entry["distinct"] = static_cast<double>(s.distinct_count);
        }
        cols[column] = std::move(entry);
    }
    return Value{{"columns", std::move(cols)},
                 {"count", static_cast<double>(count)},
                 {"length", {{"min", static_cast<double>(min_length)}, {"max", static_cast<double>(max_length)}}}};
}

}  // namespace loomxai::data
