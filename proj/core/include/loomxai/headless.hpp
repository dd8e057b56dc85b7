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
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "loomxai/filter.hpp"
#include "loomxai/projection.hpp"
#include "loomxai/sync.hpp"
#include "loomxai/transport.hpp"
#include "loomxai/wire.hpp"

namespace loomxai::widgets {

class Widget;

/// Scripted stand-in for the browser view.
///
/// Keeps a mirror of every attribute the widget publishes and talks to it
/// only through wire messages on a Transport. Its own writes to two_way
/// attributes are applied to the mirror optimistically, like the real view.
class HeadlessClient {
public:
    struct MirrorEntry {
        Value value;
        std::optional<sync::SyncMode> mode;  // known once a sync_reply arrived
        sync::Version writer;
        std::uint64_t backend_seq = 0;  // highest backend seq seen for this attr
    };

    HeadlessClient(std::string widget_id, sync::Transport& transport);
    ~HeadlessClient();
    HeadlessClient(const HeadlessClient&) = delete;
    HeadlessClient& operator=(const HeadlessClient&) = delete;

    /// Sends the sync_request that starts a session.
    void attach();
    void request_sync();

    /// Two-way `selection_spec` when the widget has one, else a "filter" event.
    void apply_filter(const data::FilterSpec& spec);
    /// Always a fresh seq, so resubmitting the same text fires again.
    void submit_text(const std::string& text);
    /// nullopt clears the brush.
    void brush(const std::optional<model::Rect>& rect);

    /// A state_update for any attribute, whatever its mode.
    void set(const std::string& attr, const Value& value);
    /// Frontend-origin page messages for `attr`.
    void send_pages(const std::string& attr, const Value& rows, std::size_t page_size);
    void send_event(const std::string& name, const Value& payload);

    const std::map<std::string, MirrorEntry>& mirror() const noexcept { return mirror_; }
    /// Mirror values, keyed like ObservableState::snapshot().
    std::map<std::string, Value> values() const;
    std::optional<Value> value(const std::string& attr) const;

    std::size_t received() const noexcept { return received_; }
    const std::vector<wire::Message>& events() const noexcept { return events_; }
    std::size_t sync_replies() const noexcept { return sync_replies_; }
    const std::vector<std::string>& errors() const noexcept { return errors_; }

private:
    void receive(std::string_view text);
    void apply_backend(const std::string& attr, const Value& value, std::uint64_t seq);
    void apply_sync_reply(const Value& payload);
    std::uint64_t next_seq(const std::string& attr);
    void send(wire::MsgType type, const std::string& attr, Value payload);

    std::string widget_id_;
    sync::Transport& transport_;
    std::map<std::string, MirrorEntry> mirror_;
    std::map<std::string, std::uint64_t> outbound_seq_;
    std::map<std::string, std::uint64_t> seen_seq_;  // backend seq per attr, any msg type
    wire::Reassembler reassembler_;
    wire::TransferIdSource transfer_ids_;
    std::size_t received_ = 0;
    std::size_t sync_replies_ = 0;
    std::vector<wire::Message> events_;
    std::vector<std::string> errors_;
};

struct ApplyFilter {
    data::FilterSpec spec;
};
struct SubmitText {
    std::string text;
};
struct Brush {
    std::optional<model::Rect> rect;
};
struct RequestSync {};
struct RawUpdate {
    std::string attr;
    Value value;
};
struct RawPages {
    std::string attr;
    Value rows;
    std::size_t page_size = 1;
};
struct SendEvent {
    std::string name;
    Value payload;
};

using ClientAction = std::variant<ApplyFilter, SubmitText, Brush, RequestSync, RawUpdate, RawPages, SendEvent>;

/// Replays `action` on `client`.
void perform(HeadlessClient& client, const ClientAction& action);
std::string describe(const ClientAction& action);

/// Result of one scripted session.
struct Transcript {
    /// Encoded messages in delivery order.
    std::vector<std::string> messages;
    std::vector<sync::LoopbackLink::Direction> directions;
    /// Messages delivered for the handshake, then for each action.
    std::size_t handshake_messages = 0;
    std::vector<std::size_t> action_messages;
    std::map<std::string, Value> backend;
    std::map<std::string, Value> frontend;
    /// Handler callbacks during the session, per attribute.
    std::map<std::string, std::size_t> handler_calls;
    std::map<std::string, std::size_t> applied_changes;
    std::size_t dropped = 0;
    /// Messages the client could not decode or apply.
    std::vector<std::string> client_errors;

    /// One encoded message per line.
    void write(std::ostream& out) const;
    std::string text() const;
};

struct RunOptions {
    /// Fault injection for the loopback link; empty means reliable.
    sync::LoopbackLink::DropPredicate drop;
};

/// Runs `script` against `widget` over a fresh loopback link: attach,
/// handshake, then each action drained to quiescence. The message budget is
/// 4 + pages per step; exceeding it throws Error{Deadlock}. The widget is
/// detached afterwards, so a later run joins late through sync.
Transcript headless_run(const std::vector<ClientAction>& script, Widget& widget, const RunOptions& options = {});

/// Budget for one action: 4 messages plus every page a full publish takes.
std::size_t action_budget(const sync::ObservableState& state, const ClientAction& action);

}  // namespace loomxai::widgets
