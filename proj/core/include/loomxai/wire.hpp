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
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loomxai/value.hpp"

namespace loomxai::wire {

inline constexpr std::string_view kSchemaVersion = "loomxai/1";
inline constexpr std::size_t kDefaultPayloadCap = std::size_t{10} * 1024 * 1024;
inline constexpr std::size_t kDefaultPageSize = 1000;

enum class MsgType { state_update, event, sync_request, sync_reply, page };
enum class Origin { backend, frontend };

std::string_view to_string(MsgType type) noexcept;
std::string_view to_string(Origin origin) noexcept;
std::optional<MsgType> parse_msg_type(std::string_view s) noexcept;
std::optional<Origin> parse_origin(std::string_view s) noexcept;

struct PageInfo {
    std::int64_t page_index = 0;
    std::int64_t page_count = 1;
    std::string transfer_id;

    bool operator==(const PageInfo&) const = default;
};

/// The envelope for everything exchanged between a widget and its view.
///
/// `seq` is strictly increasing per (widget_id, attr) for each origin.
/// `page_info` is present exactly when `type == MsgType::page`.
struct Message {
    std::string widget_id;
    MsgType type = MsgType::state_update;
    std::string attr;
    Value payload;
    std::uint64_t seq = 0;
    Origin origin = Origin::backend;
    std::optional<PageInfo> page_info;

    bool operator==(const Message&) const = default;
};

std::string encode(const Message& msg);

/// encode() plus the size check every transport applies before sending.
/// Throws Error{PayloadTooLarge} when the text is longer than `payload_cap`.
std::string encode_checked(const Message& msg, std::size_t payload_cap);

/// Throws MalformedError, Error{UnknownMsgType} or Error{MissingField}.
Message decode(std::string_view text);

/// Where a paged transfer is addressed. Page i carries seq `first_seq + i`.
struct PageTarget {
    std::string widget_id;
    std::string attr;
    Origin origin = Origin::backend;
    std::uint64_t first_seq = 1;
};

/// 128 random bits as 32 lowercase hex digits.
std::string random_transfer_id();

using TransferIdSource = std::function<std::string()>;

/// Deterministic transfer ids for reproducible transcripts.
TransferIdSource seeded_transfer_ids(std::uint64_t seed);

/// Splits `rows` into ceil(n / page_size) page messages sharing one
/// transfer id. An empty list yields a single empty page.
std::vector<Message> paginate(std::span<const Value> rows, std::size_t page_size,
                              const PageTarget& target, const std::string& transfer_id);
std::vector<Message> paginate(std::span<const Value> rows, std::size_t page_size,
                              const PageTarget& target = {});

/// Restores the row list from a complete page set in any order.
/// Throws IncompleteTransferError or Error{MixedTransfer}.
Value reassemble(std::span<const Message> pages);

/// Incremental reassembly for receivers that see pages one at a time.
class Reassembler {
public:
    struct Completed {
        std::string attr;
        Value rows;
        std::uint64_t seq = 0;  // highest page seq of the transfer
        Origin origin = Origin::backend;
    };

    /// Returns the finished transfer once its last missing page arrives.
    std::optional<Completed> accept(const Message& page);

    std::size_t pending_transfers() const noexcept { return partial_.size(); }

private:
    std::map<std::string, std::vector<Message>> partial_;
};

}  // namespace loomxai::wire
