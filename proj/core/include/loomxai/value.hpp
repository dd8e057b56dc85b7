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

#include <any>
#include <memory>
#include <string>
#include <string_view>
#include <typeinfo>
#include <utility>
#include <variant>

#include <nlohmann/json.hpp>

namespace loomxai {

/// Tree of null / bool / number / string / list / string-keyed map.
///
/// A Value is *canonical* once it has passed check_serializable(): every
/// number is stored as a finite double, negative zero is folded to zero and
/// every string is valid UTF-8. Objects keep their keys sorted bytewise, so
/// iteration order is the wire order.
using Value = nlohmann::json;

/// A non-data host object, e.g. a model handle. It can live in a
/// backend-only attribute but never crosses the wire.
struct Opaque {
    std::any handle;
    std::string type_name;

    template <typename T>
    static Opaque wrap(T value) {
        return Opaque{std::any(std::move(value)), typeid(T).name()};
    }
};

/// Anything the attribute store can hold.
using HostValue = std::variant<Value, Opaque>;

/// Validates `value` and returns its canonical form.
/// Throws NotSerializableError naming the offending path.
Value check_serializable(const HostValue& value);
Value check_serializable(const Value& value);

/// Canonical text: sorted keys, no whitespace, shortest round-trip numbers.
/// Throws NotSerializableError when `value` is not serializable.
std::string encode_value(const Value& value);
void encode_value(const Value& value, std::string& out);

/// Parses text as a Value and canonicalizes it. Throws MalformedError.
Value decode_value(std::string_view text);

/// Shortest round-trip text for a finite double; integral values within
/// +-2^53 print without a fraction.
std::string format_number(double number);

}  // namespace loomxai
