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
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loomxai/error.hpp"
#include "loomxai/transport.hpp"
#include "loomxai/value.hpp"
#include "loomxai/wire.hpp"

namespace loomxai::sync {

using wire::Origin;

enum class SyncMode {
    backend_only,     // never on the wire; model handles live here
    one_way_to_view,  // kernel publishes, view renders
    two_way,          // either side may write
};

std::string_view to_string(SyncMode mode) noexcept;
std::optional<SyncMode> parse_sync_mode(std::string_view s) noexcept;

/// Who wrote an attribute value, and at which sequence number.
struct Version {
    std::uint64_t seq = 0;
    Origin origin = Origin::backend;

    bool operator==(const Version&) const = default;
};

enum class Winner { local, incoming };

/// Last-writer-wins: the higher seq wins, a frontend write wins a seq tie.
/// Identical versions keep the local value.
Winner resolve_conflict(const Version& local, const Version& incoming) noexcept;

struct Diagnostic {
    std::string code;
    std::string attr;
    std::string message;
};

struct StateOptions {
    std::size_t payload_cap = wire::kDefaultPayloadCap;
    std::size_t page_size = wire::kDefaultPageSize;
    /// Empty means random 128-bit ids.
    wire::TransferIdSource transfer_ids;
};

struct AttributeOptions {
    /// Publish the (list) value as page messages instead of one
    /// state_update. Only valid for one_way_to_view attributes.
    bool paged = false;
};

struct AttributeInfo {
    SyncMode mode = SyncMode::two_way;
    bool paged = false;
    std::uint64_t seq_backend = 0;   // highest version written by the kernel
    std::uint64_t seq_frontend = 0;  // highest frontend seq seen
    Version writer;                  // version of the current value

    bool operator==(const AttributeInfo&) const = default;
};

/// The kernel-side attribute store of one widget.
///
/// Backend writes go out to the attached view and never fire local handlers;
/// frontend writes that win last-writer-wins fire the handlers of that
/// attribute synchronously, in registration order. A handler may write other
/// attributes (that is how results reach the view) without re-triggering
/// anything. Messages produced before connect() are queued and flushed on
/// connect.
///
/// Not thread-safe except snapshot(), info(), get(), diagnostics() and the
/// counters, which may be called from any thread.
class ObservableState {
public:
    using Handler = std::function<void(const Value& old_value, const Value& new_value)>;
    /// Throw to reject an incoming frontend value.
    using Validator = std::function<void(const Value& value)>;
    using EventListener = std::function<void(const std::string& name, const Value& payload)>;
    using HandlerId = std::uint64_t;

    explicit ObservableState(std::string widget_id, StateOptions options = {});
    ~ObservableState();
    ObservableState(const ObservableState&) = delete;
    ObservableState& operator=(const ObservableState&) = delete;

    const std::string& widget_id() const noexcept { return widget_id_; }
    const StateOptions& options() const noexcept { return options_; }

    void define_attribute(const std::string& name, Value initial, SyncMode mode,
                          AttributeOptions attr_options = {}) {
        define_host(name, HostValue(std::in_place_type<Value>, std::move(initial)), mode, attr_options);
    }
    /// Host objects only fit backend_only attributes.
    void define_attribute(const std::string& name, Opaque initial, SyncMode mode,
                          AttributeOptions attr_options = {}) {
        define_host(name, HostValue(std::move(initial)), mode, attr_options);
    }
    void set_attribute(const std::string& name, Value value, Origin origin = Origin::backend) {
        set_host(name, HostValue(std::in_place_type<Value>, std::move(value)), origin);
    }
    void set_attribute(const std::string& name, Opaque value, Origin origin = Origin::backend) {
        set_host(name, HostValue(std::move(value)), origin);
    }

    bool has_attribute(const std::string& name) const;
    std::vector<std::string> attribute_names() const;
    AttributeInfo info(const std::string& name) const;

    /// Copy of a data-valued attribute. Throws Error{TypeMismatch} for an
    /// opaque backend-only value.
    Value get(const std::string& name) const;

    template <typename T>
    T get_opaque(const std::string& name) const {
        std::lock_guard lock(mutex_);
        const Attribute& attr = find_locked(name);
        const auto* opaque = std::get_if<Opaque>(&attr.value);
        const T* typed = opaque ? std::any_cast<T>(&opaque->handle) : nullptr;
        if (!typed) throw Error(ErrorCode::TypeMismatch, "attribute '" + name + "' does not hold that type");
        return *typed;
    }

    HandlerId register_handler(const std::string& name, Handler handler);
    void unregister_handler(HandlerId id);
    void set_validator(const std::string& name, Validator validator);
    void on_event(EventListener listener);

    /// Sends a custom event (msg_type event) to the view.
    void emit_event(const std::string& name, const Value& payload);

    /// One attached view per widget. Throws Error{AlreadyAttached}.
    void connect(Transport& transport);
    void disconnect();
    bool connected() const noexcept { return transport_ != nullptr; }

    void dispatch_incoming(const wire::Message& msg);
    /// Decodes and dispatches; malformed text becomes a diagnostic.
    void receive(std::string_view text);

    /// Deep copy of every synced attribute.
    std::map<std::string, Value> snapshot() const;

    std::vector<Diagnostic> diagnostics() const;
    /// Frontend changes applied to `name` (and thus handler-chain firings).
    std::size_t applied_changes(const std::string& name) const;
    /// Individual handler callback invocations for `name`.
    std::size_t handler_calls(const std::string& name) const;
    std::size_t events_received() const;
    /// Page messages a full publish of every paged attribute takes.
    std::size_t page_message_count() const;

private:
    struct Attribute {
        HostValue value;
        AttributeInfo info;
        std::size_t applied_changes = 0;
        std::size_t handler_calls = 0;
        std::size_t page_count = 0;
    };

    struct HandlerEntry {
        HandlerId id;
        std::string attr;
        Handler handler;
    };

    void define_host(const std::string& name, HostValue initial, SyncMode mode, AttributeOptions attr_options);
    void set_host(const std::string& name, HostValue value, Origin origin);

    const Attribute& find_locked(const std::string& name) const;
    Attribute& find_locked(const std::string& name);
    std::uint64_t next_seq_locked(const std::string& name, const AttributeInfo* info) const;
    /// Encodes the publish of `value` for `name` without committing it.
    std::vector<std::string> build_publish_locked(const std::string& name, const Attribute& attr,
                                                  const Value& value, std::uint64_t* last_seq);
    std::string next_transfer_id();
    void emit(std::vector<std::string> texts);
    void record(std::string code, std::string attr, std::string message);

    void handle_state_update(const std::string& name, const Value& value, std::uint64_t seq);
    void handle_sync_request(const wire::Message& msg);
    void handle_event(const wire::Message& msg);

    std::string widget_id_;
    StateOptions options_;

    mutable std::mutex mutex_;
    std::map<std::string, Attribute> attributes_;
    std::map<std::string, std::uint64_t> outbound_seq_;
    std::vector<Diagnostic> diagnostics_;
    std::size_t events_received_ = 0;

    std::vector<HandlerEntry> handlers_;
    std::map<std::string, Validator> validators_;
    std::vector<EventListener> event_listeners_;
    HandlerId next_handler_id_ = 1;

    wire::Reassembler reassembler_;
    std::deque<std::string> outbox_;
    Transport* transport_ = nullptr;
};

}  // namespace loomxai::sync
