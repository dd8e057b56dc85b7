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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace loomxai {

enum class ErrorCode {
    // wire
    NotSerializable,
    Malformed,
    UnknownMsgType,
    MissingField,
    IncompleteTransfer,
    MixedTransfer,
    PayloadTooLarge,
    // state sync
    DuplicateAttribute,
    UnknownAttribute,
    ModeViolation,
    AlreadyAttached,
    Deadlock,
    // dataset
    MissingTextField,
    ParseError,
    DuplicateId,
    UnknownColumn,
    TypeMismatch,
    InvalidSpec,
    // model
    NoLabels,
    EmptyInput,
    TooFewPoints,
    DimensionTooLarge,
    BadK,
    // harness
    BadConfig,
    PortInUse,
    UnknownSuite,
    Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base of every error raised by the library. `code()` identifies the
/// failure class; subclasses carry the structured detail for the few codes
/// that have any.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class NotSerializableError : public Error {
public:
    NotSerializableError(std::string path, std::string reason);

    /// Dotted/indexed location of the offending value, "" for the root.
    const std::string& path() const noexcept { return path_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::string path_;
    std::string reason_;
};

class MalformedError : public Error {
public:
    MalformedError(std::size_t offset, std::string reason);

    std::size_t offset() const noexcept { return offset_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t offset_;
    std::string reason_;
};

class IncompleteTransferError : public Error {
public:
    explicit IncompleteTransferError(std::vector<std::size_t> missing_pages);

    const std::vector<std::size_t>& missing_pages() const noexcept { return missing_; }

private:
    std::vector<std::size_t> missing_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& reason);

    /// 1-based line number in the source.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace loomxai
