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

#include "loomxai/wire.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <random>

#include "loomxai/error.hpp"

namespace loomxai::wire {
namespace {

constexpr double kMaxSeq = 9007199254740992.0;  // 2^53

std::string hex128(std::uint64_t hi, std::uint64_t lo) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(32, '0');
    for (int i = 0; i < 16; ++i) {
        out[15 - i] = digits[(hi >> (4 * i)) & 0xF];
        out[31 - i] = digits[(lo >> (4 * i)) & 0xF];
    }
    return out;
}

const Value& require(const Value& obj, const char* field) {
    auto it = obj.find(field);
    if (it == obj.end()) throw Error(ErrorCode::MissingField, field);
    return *it;
}

const std::string& require_string(const Value& obj, const char* field) {
    const Value& v = require(obj, field);
    if (!v.is_string()) throw MalformedError(0, std::string("field '") + field + "' must be a string");
    return v.get_ref<const std::string&>();
}

std::int64_t require_integer(const Value& obj, const char* field, double min) {
    const Value& v = require(obj, field);
    if (!v.is_number()) throw MalformedError(0, std::string("field '") + field + "' must be a number");
    const double d = v.get<double>();
    if (std::trunc(d) != d || d < min || d > kMaxSeq)
        throw MalformedError(0, std::string("field '") + field + "' must be an integer >= " +
                                    format_number(min));
    return static_cast<std::int64_t>(d);
}

}  // namespace

std::string_view to_string(MsgType type) noexcept {
    switch (type) {
        case MsgType::state_update: return "state_update";
        case MsgType::event: return "event";
        case MsgType::sync_request: return "sync_request";
        case MsgType::sync_reply: return "sync_reply";
        case MsgType::page: return "page";
    }
    return "";
}

std::string_view to_string(Origin origin) noexcept {
    return origin == Origin::backend ? "backend" : "frontend";
}

std::optional<MsgType> parse_msg_type(std::string_view s) noexcept {
    for (auto t : {MsgType::state_update, MsgType::event, MsgType::sync_request,
                   MsgType::sync_reply, MsgType::page}) {
        if (to_string(t) == s) return t;
    }
    return std::nullopt;
}

std::optional<Origin> parse_origin(std::string_view s) noexcept {
    if (s == "backend") return Origin::backend;
    if (s == "frontend") return Origin::frontend;
    return std::nullopt;
}

std::string encode(const Message& msg) {
    if (msg.page_info.has_value() != (msg.type == MsgType::page))
        throw Error(ErrorCode::Malformed, "page_info must be present exactly on page messages");
    // Fields written in sorted order by hand; the payload goes through the
    // canonical writer, which also performs the serializability check.
    std::string out;
    out += R"({"attr":)";
    encode_value(Value(msg.attr), out);
    out += R"(,"msg_type":")";
    out += to_string(msg.type);
    out += R"(","origin":")";
    out += to_string(msg.origin);
    out += '"';
    if (msg.page_info) {
        out += R"(,"page_info":{"page_count":)";
        out += format_number(static_cast<double>(msg.page_info->page_count));
        out += R"(,"page_index":)";
        out += format_number(static_cast<double>(msg.page_info->page_index));
        out += R"(,"transfer_id":)";
        encode_value(Value(msg.page_info->transfer_id), out);
        out += '}';
    }
    out += R"(,"payload":)";
    encode_value(msg.payload, out);
    out += R"(,"seq":)";
    out += format_number(static_cast<double>(msg.seq));
    out += R"(,"widget_id":)";
    encode_value(Value(msg.widget_id), out);
    out += '}';
    return out;
}

std::string encode_checked(const Message& msg, std::size_t payload_cap) {
    std::string text = encode(msg);
    if (text.size() > payload_cap) {
        throw Error(ErrorCode::PayloadTooLarge,
                    "encoded " + std::string(to_string(msg.type)) + " for '" + msg.attr + "' is " +
                        std::to_string(text.size()) + " bytes, cap is " +
                        std::to_string(payload_cap));
    }
    return text;
}

Message decode(std::string_view text) {
    const Value root = decode_value(text);
    if (!root.is_object()) throw MalformedError(0, "message must be an object");

    Message msg;
    msg.widget_id = require_string(root, "widget_id");
    const auto type = parse_msg_type(require_string(root, "msg_type"));
    if (!type) {
        throw Error(ErrorCode::UnknownMsgType, root["msg_type"].get<std::string>());
    }
    msg.type = *type;
    msg.attr = require_string(root, "attr");
    msg.payload = require(root, "payload");
    msg.seq = static_cast<std::uint64_t>(require_integer(root, "seq", 0));
    const auto origin = parse_origin(require_string(root, "origin"));
    if (!origin) throw MalformedError(0, "unknown origin");
    msg.origin = *origin;

    auto page_it = root.find("page_info");
    if (msg.type == MsgType::page) {
        if (page_it == root.end()) throw Error(ErrorCode::MissingField, "page_info");
        if (!page_it->is_object()) throw MalformedError(0, "page_info must be an object");
        PageInfo info;
        info.page_index = require_integer(*page_it, "page_index", 0);
        info.page_count = require_integer(*page_it, "page_count", 1);
        info.transfer_id = require_string(*page_it, "transfer_id");
        if (info.page_index >= info.page_count)
            throw MalformedError(0, "page_index must be below page_count");
        if (!msg.payload.is_array()) throw MalformedError(0, "page payload must be a list");
        msg.page_info = std::move(info);
    } else if (page_it != root.end()) {
        throw MalformedError(0, "page_info on a non-page message");
    }
    return msg;
}

std::string random_transfer_id() {
    std::random_device rd;
    auto draw = [&rd] { return (std::uint64_t{rd()} << 32) | rd(); };
    const std::uint64_t hi = draw();
    return hex128(hi, draw());
}

TransferIdSource seeded_transfer_ids(std::uint64_t seed) {
    auto engine = std::make_shared<std::mt19937_64>(seed);
    return [engine] {
        const std::uint64_t hi = (*engine)();
        return hex128(hi, (*engine)());
    };
}

std::vector<Message> paginate(std::span<const Value> rows, std::size_t page_size,
                              const PageTarget& target, const std::string& transfer_id) {
    if (page_size == 0) throw Error(ErrorCode::BadConfig, "page_size must be >= 1");
    const std::size_t count = rows.empty() ? 1 : (rows.size() + page_size - 1) / page_size;
    std::vector<Message> pages;
    pages.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t begin = i * page_size;
        const std::size_t end = std::min(rows.size(), begin + page_size);
        Message page;
        page.widget_id = target.widget_id;
        page.type = MsgType::page;
        page.attr = target.attr;
        page.payload = Value::array();
        for (std::size_t r = begin; r < end; ++r) page.payload.push_back(rows[r]);
        page.seq = target.first_seq + i;
        page.origin = target.origin;
        page.page_info = PageInfo{static_cast<std::int64_t>(i), static_cast<std::int64_t>(count),
                                  transfer_id};
        pages.push_back(std::move(page));
    }
    return pages;
}

std::vector<Message> paginate(std::span<const Value> rows, std::size_t page_size,
                              const PageTarget& target) {
    return paginate(rows, page_size, target, random_transfer_id());
}

Value reassemble(std::span<const Message> pages) {
    if (pages.empty()) throw IncompleteTransferError({0});
    const Message& first = pages.front();
    if (!first.page_info) throw Error(ErrorCode::MixedTransfer, "not a page message");
    const std::string& transfer = first.page_info->transfer_id;
    const auto count = static_cast<std::size_t>(first.page_info->page_count);

    std::vector<const Message*> slots(count, nullptr);
    for (const Message& page : pages) {
        if (page.type != MsgType::page || !page.page_info)
            throw Error(ErrorCode::MixedTransfer, "not a page message");
        const PageInfo& info = *page.page_info;
        if (info.transfer_id != transfer)
            throw Error(ErrorCode::MixedTransfer, "transfer ids " + transfer + " and " + info.transfer_id);
        if (static_cast<std::size_t>(info.page_count) != count)
            throw Error(ErrorCode::MixedTransfer, "inconsistent page_count in transfer " + transfer);
        const auto index = static_cast<std::size_t>(info.page_index);
        if (index >= count) throw Error(ErrorCode::MixedTransfer, "page_index out of range");
        if (slots[index]) throw Error(ErrorCode::MixedTransfer, "duplicate page " + std::to_string(index));
        slots[index] = &page;
    }
    std::vector<std::size_t> missing;
    for (std::size_t i = 0; i < count; ++i) {
        if (!slots[i]) missing.push_back(i);
    }
    if (!missing.empty()) throw IncompleteTransferError(std::move(missing));

    Value rows = Value::array();
    for (const Message* page : slots) {
        for (const Value& row : page->payload) rows.push_back(row);
    }
    return rows;
}

std::optional<Reassembler::Completed> Reassembler::accept(const Message& page) {
    if (!page.page_info) throw Error(ErrorCode::MixedTransfer, "not a page message");
    auto& bucket = partial_[page.page_info->transfer_id];
    if (!bucket.empty() && (bucket.front().attr != page.attr || bucket.front().origin != page.origin)) {
        throw Error(ErrorCode::MixedTransfer,
                    "transfer " + page.page_info->transfer_id + " spans attributes");
    }
    bucket.push_back(page);
    if (bucket.size() < static_cast<std::size_t>(page.page_info->page_count)) return std::nullopt;

    auto node = partial_.extract(page.page_info->transfer_id);
    std::vector<Message>& pages = node.mapped();
    Completed done;
    done.rows = reassemble(pages);
    done.attr = pages.front().attr;
    done.origin = pages.front().origin;
    for (const Message& m : pages) done.seq = std::max(done.seq, m.seq);
    return done;
}

}  // namespace loomxai::wire
