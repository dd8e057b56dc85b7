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

#include "loomxai/value.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>

#include "loomxai/error.hpp"
#include "loomxai/text.hpp"

namespace loomxai {
namespace {

constexpr double kMaxExactInteger = 9007199254740992.0;  // 2^53

// Location inside a value, built on the stack and only formatted when an
// error needs it.
struct Path {
    const Path* parent = nullptr;
    const std::string* key = nullptr;  // null means `index` applies
    std::size_t index = 0;
};

std::string render(const Path* p) {
    if (!p) return "";
    std::string parent = render(p->parent);
    if (p->key) return parent.empty() ? *p->key : parent + "." + *p->key;
    return parent + "[" + std::to_string(p->index) + "]";
}

double canonical_double(double d, const Path* path) {
    if (!std::isfinite(d)) throw NotSerializableError(render(path), "non-finite number");
    return d == 0.0 ? 0.0 : d;
}

Value canonicalize(const Value& v, const Path* path) {
    switch (v.type()) {
        case Value::value_t::null:
        case Value::value_t::boolean:
            return v;
        case Value::value_t::number_integer:
            return Value(canonical_double(static_cast<double>(v.get<std::int64_t>()), path));
        case Value::value_t::number_unsigned:
            return Value(canonical_double(static_cast<double>(v.get<std::uint64_t>()), path));
        case Value::value_t::number_float:
            return Value(canonical_double(v.get<double>(), path));
        case Value::value_t::string:
            if (!text::is_valid_utf8(v.get_ref<const std::string&>()))
                throw NotSerializableError(render(path), "string is not valid UTF-8");
            return v;
        case Value::value_t::array: {
            Value out = Value::array();
            auto& arr = out.get_ref<Value::array_t&>();
            arr.reserve(v.size());
            std::size_t i = 0;
            for (const auto& item : v) {
                const Path at{path, nullptr, i++};
                arr.push_back(canonicalize(item, &at));
            }
            return out;
        }
        case Value::value_t::object: {
            Value out = Value::object();
            for (const auto& [key, item] : v.get_ref<const Value::object_t&>()) {
                if (!text::is_valid_utf8(key))
                    throw NotSerializableError(render(path), "map key is not valid UTF-8");
                const Path at{path, &key, 0};
                out[key] = canonicalize(item, &at);
            }
            return out;
        }
        case Value::value_t::binary:
            throw NotSerializableError(render(path), "binary blob");
        case Value::value_t::discarded:
            break;
    }
    throw NotSerializableError(render(path), "discarded value");
}

void append_string(const std::string& s, std::string& out) {
    static constexpr std::array<char, 16> hex = {'0', '1', '2', '3', '4', '5', '6', '7',
                                                 '8', '9', 'a', 'b', 'c', 'd', 'e', 'f'};
    out.push_back('"');
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    out += "\\u00";
                    out.push_back(hex[c >> 4]);
                    out.push_back(hex[c & 0xF]);
                } else {
                    out.push_back(static_cast<char>(c));
                }
        }
    }
    out.push_back('"');
}

void write(const Value& v, const Path* path, std::string& out) {
    switch (v.type()) {
        case Value::value_t::null: out += "null"; return;
        case Value::value_t::boolean: out += v.get<bool>() ? "true" : "false"; return;
        case Value::value_t::number_integer:
            out += format_number(canonical_double(static_cast<double>(v.get<std::int64_t>()), path));
            return;
        case Value::value_t::number_unsigned:
            out += format_number(canonical_double(static_cast<double>(v.get<std::uint64_t>()), path));
            return;
        case Value::value_t::number_float:
            out += format_number(canonical_double(v.get<double>(), path));
            return;
        case Value::value_t::string: {
            const auto& s = v.get_ref<const std::string&>();
            if (!text::is_valid_utf8(s)) throw NotSerializableError(render(path), "string is not valid UTF-8");
            append_string(s, out);
            return;
        }
        case Value::value_t::array: {
            out.push_back('[');
            std::size_t i = 0;
            for (const auto& item : v) {
                if (i) out.push_back(',');
                const Path at{path, nullptr, i};
                write(item, &at, out);
                ++i;
            }
            out.push_back(']');
            return;
        }
        case Value::value_t::object: {
            // object_t is a std::map, so iteration is already bytewise sorted.
            out.push_back('{');
            bool first = true;
            for (const auto& [key, item] : v.get_ref<const Value::object_t&>()) {
                if (!first) out.push_back(',');
                first = false;
                if (!text::is_valid_utf8(key))
                    throw NotSerializableError(render(path), "map key is not valid UTF-8");
                append_string(key, out);
                out.push_back(':');
                const Path at{path, &key, 0};
                write(item, &at, out);
            }
            out.push_back('}');
            return;
        }
        case Value::value_t::binary: throw NotSerializableError(render(path), "binary blob");
        case Value::value_t::discarded: throw NotSerializableError(render(path), "discarded value");
    }
}

}  // namespace

std::string format_number(double number) {
    if (number == 0.0) return "0";
    if (std::trunc(number) == number && std::fabs(number) <= kMaxExactInteger) {
        return std::to_string(static_cast<std::int64_t>(number));
    }
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), number);
    return std::string(buf.data(), end);
}

Value check_serializable(const Value& value) { return canonicalize(value, nullptr); }

Value check_serializable(const HostValue& value) {
    if (const auto* opaque = std::get_if<Opaque>(&value)) {
        throw NotSerializableError(
            "", "opaque host object (" + opaque->type_name +
                    "); register it as a backend_only attribute");
    }
    return canonicalize(std::get<Value>(value), nullptr);
}

void encode_value(const Value& value, std::string& out) { write(value, nullptr, out); }

std::string encode_value(const Value& value) {
    std::string out;
    write(value, nullptr, out);
    return out;
}

Value decode_value(std::string_view text) {
    Value parsed;
    try {
        parsed = Value::parse(text.begin(), text.end());
    } catch (const Value::parse_error& e) {
        // nlohmann reports the 1-based position of the failing byte.
        throw MalformedError(e.byte > 0 ? e.byte - 1 : 0, e.what());
    }
    try {
        return canonicalize(parsed, nullptr);
    } catch (const NotSerializableError& e) {
        throw MalformedError(0, e.what());
    }
}

}  // namespace loomxai
