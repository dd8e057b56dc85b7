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

#include "loomxai/headless.hpp"

#include <algorithm>
#include <sstream>

#include "loomxai/error.hpp"
#include "loomxai/widgets.hpp"

namespace loomxai::widgets {
namespace {

using sync::Origin;
using sync::SyncMode;
using wire::Message;
using wire::MsgType;

constexpr std::uint64_t kClientTransferSeed = 0x6c6f6f6d;  // "loom"

std::map<std::string, std::size_t> counters(const sync::ObservableState& state, bool handlers) {
    std::map<std::string, std::size_t> out;
    for (const auto& name : state.attribute_names()) {
        out[name] = handlers ? state.handler_calls(name) : state.applied_changes(name);
    }
    return out;
}

std::map<std::string, std::size_t> delta(std::map<std::string, std::size_t> after,
                                         const std::map<std::string, std::size_t>& before) {
    for (auto& [name, n] : after) n -= before.at(name);
    std::erase_if(after, [](const auto& kv) { return kv.second == 0; });
    return after;
}

}  // namespace

HeadlessClient::HeadlessClient(std::string widget_id, sync::Transport& transport)
    : widget_id_(std::move(widget_id)),
      transport_(transport),
      transfer_ids_(wire::seeded_transfer_ids(kClientTransferSeed)) {
    transport_.set_sink([this](std::string_view text) { receive(text); });
}

HeadlessClient::~HeadlessClient() { transport_.set_sink(nullptr); }

std::uint64_t HeadlessClient::next_seq(const std::string& attr) {
    std::uint64_t& out = outbound_seq_[attr];
    out = std::max(out, seen_seq_[attr]) + 1;
    return out;
}

void HeadlessClient::send(MsgType type, const std::string& attr, Value payload) {
    const std::uint64_t seq = next_seq(attr);
    transport_.send(wire::encode(Message{widget_id_, type, attr, std::move(payload), seq, Origin::frontend,
                                         std::nullopt}));
}

void HeadlessClient::attach() { request_sync(); }

void HeadlessClient::request_sync() {
    send(MsgType::sync_request, "", Value{{"schema", std::string(wire::kSchemaVersion)}});
}

void HeadlessClient::set(const std::string& attr, const Value& raw) {
    Value value = check_serializable(raw);
    const std::uint64_t seq = next_seq(attr);
    auto it = mirror_.find(attr);
    // After a sync_reply the mirror knows every published attribute, so a
    // write to anything else is not mirrored.
    const bool mirrored = it == mirror_.end() ? sync_replies_ == 0
                                              : !it->second.mode || *it->second.mode == SyncMode::two_way;
    if (mirrored) {
        MirrorEntry& entry = mirror_[attr];
        entry.value = value;
        entry.writer = {seq, Origin::frontend};
    }
    transport_.send(wire::encode(Message{widget_id_, MsgType::state_update, attr, std::move(value), seq,
                                         Origin::frontend, std::nullopt}));
}

void HeadlessClient::apply_filter(const data::FilterSpec& spec) {
    auto it = mirror_.find("selection_spec");
    if (it != mirror_.end() && (!it->second.mode || *it->second.mode == SyncMode::two_way)) {
        set("selection_spec", spec.to_value());
    } else {
        send_event("filter", spec.to_value());
    }
}

void HeadlessClient::submit_text(const std::string& text) { set("pending_input", text); }

void HeadlessClient::brush(const std::optional<model::Rect>& rect) {
    set("brush_rect", rect ? rect->to_value() : Value(nullptr));
}

void HeadlessClient::send_pages(const std::string& attr, const Value& rows, std::size_t page_size) {
    const auto& list = rows.get_ref<const Value::array_t&>();
    const std::uint64_t first = next_seq(attr);
    auto pages = wire::paginate(list, page_size, {widget_id_, attr, Origin::frontend, first}, transfer_ids_());
    outbound_seq_[attr] = first + pages.size() - 1;
    for (const auto& page : pages) transport_.send(wire::encode(page));
}

void HeadlessClient::send_event(const std::string& name, const Value& payload) {
    send(MsgType::event, name, check_serializable(payload));
}

std::map<std::string, Value> HeadlessClient::values() const {
    std::map<std::string, Value> out;
    for (const auto& [name, entry] : mirror_) out.emplace(name, entry.value);
    return out;
}

std::optional<Value> HeadlessClient::value(const std::string& attr) const {
    auto it = mirror_.find(attr);
    if (it == mirror_.end()) return std::nullopt;
    return std::optional<Value>(std::in_place, it->second.value);
}

void HeadlessClient::apply_backend(const std::string& attr, const Value& value, std::uint64_t seq) {
    MirrorEntry& entry = mirror_[attr];
    entry.backend_seq = std::max(entry.backend_seq, seq);
    if (sync::resolve_conflict(entry.writer, {seq, Origin::backend}) == sync::Winner::incoming) {
        entry.value = value;
        entry.writer = {seq, Origin::backend};
    }
}

void HeadlessClient::apply_sync_reply(const Value& payload) {
    ++sync_replies_;
    if (!payload.is_object() || payload.value("schema", Value()) != std::string(wire::kSchemaVersion)) {
        errors_.push_back("sync_reply without schema " + std::string(wire::kSchemaVersion));
    }
    const auto it = payload.find("attributes");
    if (it == payload.end() || !it->is_object()) return;
    for (const auto& [name, entry] : it->items()) {
        MirrorEntry& mirror = mirror_[name];
        if (auto mode = sync::parse_sync_mode(entry.value("mode", std::string()))) mirror.mode = mode;
        const auto seq = static_cast<std::uint64_t>(entry.value("seq", 0.0));
        seen_seq_[name] = std::max(seen_seq_[name], seq);
        // Paged values follow as pages; only the others are inline.
        if (entry.contains("value")) {
            const Origin origin = wire::parse_origin(entry.value("origin", std::string())).value_or(Origin::backend);
            mirror.backend_seq = std::max(mirror.backend_seq, seq);
            if (sync::resolve_conflict(mirror.writer, {seq, origin}) == sync::Winner::incoming ||
                mirror.writer == sync::Version{seq, origin}) {
                mirror.value = entry["value"];
                mirror.writer = {seq, origin};
            }
        }
    }
}

void HeadlessClient::receive(std::string_view text) {
    ++received_;
    Message msg;
    try {
        msg = wire::decode(text);
    } catch (const Error& e) {
        errors_.push_back(e.what());
        return;
    }
    if (msg.widget_id != widget_id_ || msg.origin != Origin::backend) {
        errors_.push_back("unexpected message for '" + msg.widget_id + "'");
        return;
    }
    seen_seq_[msg.attr] = std::max(seen_seq_[msg.attr], msg.seq);
    switch (msg.type) {
        case MsgType::state_update:
            apply_backend(msg.attr, msg.payload, msg.seq);
            return;
        case MsgType::page:
            try {
                if (auto done = reassembler_.accept(msg)) apply_backend(done->attr, done->rows, done->seq);
            } catch (const Error& e) {
                errors_.push_back(e.what());
            }
            return;
        case MsgType::sync_reply:
            apply_sync_reply(msg.payload);
            return;
        case MsgType::event:
            events_.push_back(std::move(msg));
            return;
        case MsgType::sync_request:
            errors_.push_back("sync_request sent to the view");
            return;
    }
}

void perform(HeadlessClient& client, const ClientAction& action) {
    std::visit(
        [&client](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, ApplyFilter>) {
                client.apply_filter(a.spec);
            } else if constexpr (std::is_same_v<T, SubmitText>) {
                client.submit_text(a.text);
            } else if constexpr (std::is_same_v<T, Brush>) {
                client.brush(a.rect);
            } else if constexpr (std::is_same_v<T, RequestSync>) {
                client.request_sync();
            } else if constexpr (std::is_same_v<T, RawUpdate>) {
                client.set(a.attr, a.value);
            } else if constexpr (std::is_same_v<T, RawPages>) {
                client.send_pages(a.attr, a.rows, a.page_size);
            } else {
                client.send_event(a.name, a.payload);
            }
        },
        action);
}

std::string describe(const ClientAction& action) {
    return std::visit(
        [](const auto& a) -> std::string {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, ApplyFilter>) {
                return "apply_filter " + encode_value(a.spec.to_value());
            } else if constexpr (std::is_same_v<T, SubmitText>) {
                return "submit_text " + encode_value(a.text);
            } else if constexpr (std::is_same_v<T, Brush>) {
                return "brush " + (a.rect ? encode_value(a.rect->to_value()) : std::string("null"));
            } else if constexpr (std::is_same_v<T, RequestSync>) {
                return "request_sync";
            } else if constexpr (std::is_same_v<T, RawUpdate>) {
                return "set " + a.attr + " " + encode_value(a.value);
            } else if constexpr (std::is_same_v<T, RawPages>) {
                return "pages " + a.attr + " " + encode_value(a.rows);
            } else {
                return "event " + a.name + " " + encode_value(a.payload);
            }
        },
        action);
}

std::size_t action_budget(const sync::ObservableState& state, const ClientAction& action) {
    std::size_t own_pages = 0;
    if (const auto* pages = std::get_if<RawPages>(&action)) {
        const std::size_t n = pages->rows.size();
        own_pages = n == 0 ? 1 : (n + pages->page_size - 1) / pages->page_size;
    }
    return 4 + state.page_message_count() + own_pages;
}

void Transcript::write(std::ostream& out) const {
    for (const auto& m : messages) out << m << '\n';
}

std::string Transcript::text() const {
    std::ostringstream out;
    write(out);
    return out.str();
}

Transcript headless_run(const std::vector<ClientAction>& script, Widget& widget, const RunOptions& options) {
    sync::ObservableState& state = widget.state();
    sync::LoopbackLink link;
    if (options.drop) link.set_drop_predicate(options.drop);
    HeadlessClient client(widget.id(), link.frontend_side());

    const auto handlers_before = counters(state, true);
    const auto applied_before = counters(state, false);

    Transcript t;
    state.connect(link.backend_side());
    struct Detach {
        sync::ObservableState& s;
        ~Detach() { s.disconnect(); }
    } detach{state};

    const std::size_t queued = link.pending();
    client.attach();
    t.handshake_messages = link.drain(queued + 4 + state.page_message_count());
    for (const auto& action : script) {
        perform(client, action);
        t.action_messages.push_back(link.drain(action_budget(state, action)));
    }

    for (const auto& d : link.log()) {
        t.messages.push_back(d.text);
        t.directions.push_back(d.direction);
    }
    t.backend = state.snapshot();
    t.frontend = client.values();
    t.handler_calls = delta(counters(state, true), handlers_before);
    t.applied_changes = delta(counters(state, false), applied_before);
    t.dropped = link.dropped();
    t.client_errors = client.errors();
    return t;
}

}  // namespace loomxai::widgets
