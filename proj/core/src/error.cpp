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

#include "loomxai/error.hpp"

#include <sstream>
#include <utility>

namespace loomxai {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotSerializable: return "NotSerializable";
        case ErrorCode::Malformed: return "Malformed";
        case ErrorCode::UnknownMsgType: return "UnknownMsgType";
        case ErrorCode::MissingField: return "MissingField";
        case ErrorCode::IncompleteTransfer: return "IncompleteTransfer";
        case ErrorCode::MixedTransfer: return "MixedTransfer";
        case ErrorCode::PayloadTooLarge: return "PayloadTooLarge";
        case ErrorCode::DuplicateAttribute: return "DuplicateAttribute";
        case ErrorCode::UnknownAttribute: return "UnknownAttribute";
        case ErrorCode::ModeViolation: return "ModeViolation";
        case ErrorCode::AlreadyAttached: return "AlreadyAttached";
        case ErrorCode::Deadlock: return "Deadlock";
        case ErrorCode::MissingTextField: return "MissingTextField";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::UnknownColumn: return "UnknownColumn";
        case ErrorCode::TypeMismatch: return "TypeMismatch";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::NoLabels: return "NoLabels";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::TooFewPoints: return "TooFewPoints";
        case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
        case ErrorCode::BadK: return "BadK";
        case ErrorCode::BadConfig: return "BadConfig";
        case ErrorCode::PortInUse: return "PortInUse";
        case ErrorCode::UnknownSuite: return "UnknownSuite";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

NotSerializableError::NotSerializableError(std::string path, std::string reason)
    : Error(ErrorCode::NotSerializable,
            "at '" + path + "': " + reason),
      path_(std::move(path)),
      reason_(std::move(reason)) {}

MalformedError::MalformedError(std::size_t offset, std::string reason)
    : Error(ErrorCode::Malformed, "at byte " + std::to_string(offset) + ": " + reason),
      offset_(offset),
      reason_(std::move(reason)) {}

namespace {
std::string describe_missing(const std::vector<std::size_t>& missing) {
    std::ostringstream out;
    out << "missing pages [";
    for (std::size_t i = 0; i < missing.size(); ++i) {
        if (i) out << ",";
        out << missing[i];
    }
    out << "]";
    return out.str();
}
}  // namespace

IncompleteTransferError::IncompleteTransferError(std::vector<std::size_t> missing_pages)
    : Error(ErrorCode::IncompleteTransfer, describe_missing(missing_pages)),
      missing_(std::move(missing_pages)) {}

ParseError::ParseError(std::size_t line, const std::string& reason)
    : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + reason), line_(line) {}

}  // namespace loomxai
