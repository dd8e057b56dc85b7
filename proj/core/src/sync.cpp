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

#include "loomxai/sync.hpp"

#include <algorithm>
#include <exception>
#include <utility>

namespace loomxai::sync {
namespace {

using wire::Message;
using wire::MsgType;

const std::string kControlAttr;  // sync_request / sync_reply channel

}  // namespace

std::string_view to_string(SyncMode mode) noexcept {
    switch (mode) {
        case SyncMode::backend_only: return "backend_only";
        case SyncMode::one_way_to_view: return "one_way_to_view";
        case SyncMode::two_way: return "two_way";
    }
    return "";
}

std::optional<SyncMode> parse_sync_mode(std::string_view s) noexcept {
    for (auto m : {SyncMode::backend_only, SyncMode::one_way_to_view, SyncMode::two_way}) {
        if (to_string(m) == s) return m;
    }
    return std::nullopt;
}

Winner resolve_conflict(const Version& local, const Version& incoming) noexcept {
    if (incoming.seq != local.seq) return incoming.seq > local.seq ? Winner::incoming : Winner::local;
    if (incoming.origin == Origin::frontend && local.origin == Origin::backend) return Winner::incoming;
    return Winner::local;
}

ObservableState::ObservableState(std::string widget_id, StateOptions options)
    : widget_id_(std::move(widget_id)), options_(std::move(options)) {
    if (options_.page_size == 0) throw Error(ErrorCode::BadConfig, "page_size must be >= 1");
}

ObservableState::~ObservableState() { disconnect(); }

const ObservableState::Attribute& ObservableState::find_locked(const std::string& name) const {
    auto it = attributes_.find(name);
    if (it == attributes_.end()) throw Error(ErrorCode::UnknownAttribute, name);
    return it->second;
}

ObservableState::Attribute& ObservableState::find_locked(const std::string& name) {
    auto it = attributes_.find(name);
    if (it == attributes_.end()) throw Error(ErrorCode::UnknownAttribute, name);
    return it->second;
}

std::uint64_t ObservableState::next_seq_locked(const std::string& name,
                                               const AttributeInfo* info) const {
    std::uint64_t top = 0;
    if (auto it = outbound_seq_.find(name); it != outbound_seq_.end()) top = it->second;
    if (info) top = std::max({top, info->seq_backend, info->seq_frontend, info->writer.seq});
    return top + 1;
}

std::string ObservableState::next_transfer_id() {
    return options_.transfer_ids ? options_.transfer_ids() : wire::random_transfer_id();
}

std::vector<std::string> ObservableState::build_publish_locked(const std::string& name,
                                                               const Attribute& attr,
                                                               const Value& value,
                                                               std::uint64_t* last_seq) {
    const std::uint64_t first = next_seq_locked(name, &attr.info);
    std::vector<std::string> texts;
    if (attr.info.paged) {
        if (!value.is_array()) throw Error(ErrorCode::TypeMismatch, "paged attribute '" + name + "' needs a list");
        const auto& rows = value.get_ref<const Value::array_t&>();
        auto pages = wire::paginate(rows, options_.page_size,
                                    {widget_id_, name, Origin::backend, first}, next_transfer_id());
        texts.reserve(pages.size());
        for (const auto& page : pages) texts.push_back(wire::encode_checked(page, options_.payload_cap));
        *last_seq = first + pages.size() - 1;
    } else {
        Message msg{widget_id_, MsgType::state_update, name, value, first, Origin::backend, std::nullopt};
        texts.push_back(wire::encode_checked(msg, options_.payload_cap));
        *last_seq = first;
    }
    return texts;
}

void ObservableState::emit(std::vector<std::string> texts) {
    for (auto& text : texts) {
        if (transport_) {
            transport_->send(std::move(text));
        } else {
            outbox_.push_back(std::move(text));
        }
    }
}

void ObservableState::record(std::string code, std::string attr, std::string message) {
    std::lock_guard lock(mutex_);
    diagnostics_.push_back({std::move(code), std::move(attr), std::move(message)});
}

void ObservableState::define_host(const std::string& name, HostValue initial, SyncMode mode,
                                  AttributeOptions attr_options) {
    std::vector<std::string> texts;
    {
        std::lock_guard lock(mutex_);
        if (attributes_.count(name)) throw Error(ErrorCode::DuplicateAttribute, name);
        if (attr_options.paged && mode != SyncMode::one_way_to_view)
            throw Error(ErrorCode::ModeViolation, "paged attribute '" + name + "' must be one_way_to_view");

        Attribute attr;
        attr.info.mode = mode;
        attr.info.paged = attr_options.paged;
        if (mode == SyncMode::backend_only) {
            attr.value = std::move(initial);
        } else {
            Value canonical = check_serializable(initial);
            std::uint64_t seq = 0;
            texts = build_publish_locked(name, attr, canonical, &seq);
            attr.info.seq_backend = seq;
            attr.info.writer = {seq, Origin::backend};
            attr.page_count = attr.info.paged ? texts.size() : 0;
            outbound_seq_[name] = seq;
            attr.value = std::move(canonical);
        }
        attributes_.emplace(name, std::move(attr));
    }
    emit(std::move(texts));
}

void ObservableState::set_host(const std::string& name, HostValue value, Origin origin) {
    if (origin == Origin::frontend) {
        Value canonical;
        Validator validator;
        std::uint64_t seq = 0;
        {
            std::lock_guard lock(mutex_);
            Attribute& attr = find_locked(name);
            if (attr.info.mode != SyncMode::two_way) {
                throw Error(ErrorCode::ModeViolation,
                            "frontend write to " + std::string(to_string(attr.info.mode)) +
                                " attribute '" + name + "'");
            }
            canonical = check_serializable(value);
            seq = std::max(attr.info.seq_backend, attr.info.seq_frontend) + 1;
            if (auto it = validators_.find(name); it != validators_.end()) validator = it->second;
        }
        if (validator) validator(canonical);
        handle_state_update(name, canonical, seq);
        return;
    }

    std::vector<std::string> texts;
    {
        std::lock_guard lock(mutex_);
        Attribute& attr = find_locked(name);
        if (attr.info.mode == SyncMode::backend_only) {
            attr.value = std::move(value);
            ++attr.info.seq_backend;
            attr.info.writer = {attr.info.seq_backend, Origin::backend};
            return;
        }
        Value canonical = check_serializable(value);
        std::uint64_t seq = 0;
        texts = build_publish_locked(name, attr, canonical, &seq);
        attr.value = std::move(canonical);
        attr.info.seq_backend = seq;
        attr.info.writer = {seq, Origin::backend};
        if (attr.info.paged) attr.page_count = texts.size();
        outbound_seq_[name] = seq;
    }
    emit(std::move(texts));
}

bool ObservableState::has_attribute(const std::string& name) const {
    std::lock_guard lock(mutex_);
    return attributes_.count(name) > 0;
}

std::vector<std::string> ObservableState::attribute_names() const {
    std::lock_guard lock(mutex_);
    std::vector<std::string> names;
    for (const auto& [name, attr] : attributes_) names.push_back(name);
    return names;
}

AttributeInfo ObservableState::info(const std::string& name) const {
    std::lock_guard lock(mutex_);
    return find_locked(name).info;
}

Value ObservableState::get(const std::string& name) const {
    std::lock_guard lock(mutex_);
    const Attribute& attr = find_locked(name);
    if (const auto* v = std::get_if<Value>(&attr.value)) return *v;
    throw Error(ErrorCode::TypeMismatch, "attribute '" + name + "' holds an opaque host object");
}

ObservableState::HandlerId ObservableState::register_handler(const std::string& name, Handler handler) {
    std::lock_guard lock(mutex_);
    find_locked(name);
    const HandlerId id = next_handler_id_++;
    handlers_.push_back({id, name, std::move(handler)});
    return id;
}

void ObservableState::unregister_handler(HandlerId id) {
    std::lock_guard lock(mutex_);
    std::erase_if(handlers_, [id](const HandlerEntry& e) { return e.id == id; });
}

void ObservableState::set_validator(const std::string& name, Validator validator) {
    std::lock_guard lock(mutex_);
    find_locked(name);
    validators_[name] = std::move(validator);
}

void ObservableState::on_event(EventListener listener) {
    std::lock_guard lock(mutex_);
    event_listeners_.push_back(std::move(listener));
}

void ObservableState::emit_event(const std::string& name, const Value& payload) {
    std::string text;
    {
        std::lock_guard lock(mutex_);
        const std::uint64_t seq = next_seq_locked(name, nullptr);
        Message msg{widget_id_, MsgType::event, name, check_serializable(payload), seq, Origin::backend,
                    std::nullopt};
        text = wire::encode_checked(msg, options_.payload_cap);
        outbound_seq_[name] = seq;
    }
    emit({std::move(text)});
}

void ObservableState::connect(Transport& transport) {
    if (transport_) throw Error(ErrorCode::AlreadyAttached, "widget '" + widget_id_ + "' already has a view");
    transport_ = &transport;
    transport_->set_sink([this](std::string_view text) { receive(text); });
    std::vector<std::string> queued(std::make_move_iterator(outbox_.begin()),
                                    std::make_move_iterator(outbox_.end()));
    outbox_.clear();
    emit(std::move(queued));
}

void ObservableState::disconnect() {
    if (!transport_) return;
    transport_->set_sink(nullptr);
    transport_ = nullptr;
}

void ObservableState::receive(std::string_view text) {
    try {
        dispatch_incoming(wire::decode(text));
    } catch (const Error& e) {
        record(std::string(loomxai::to_string(e.code())), "", e.what());
    }
}

void ObservableState::dispatch_incoming(const Message& msg) {
    if (msg.widget_id != widget_id_) {
        record("WrongWidget", msg.attr, "message addressed to '" + msg.widget_id + "'");
        return;
    }
    if (msg.origin != Origin::frontend) {
        record("WrongOrigin", msg.attr, "backend-origin message received by the kernel");
        return;
    }
    switch (msg.type) {
        case MsgType::state_update:
            handle_state_update(msg.attr, msg.payload, msg.seq);
            return;
        case MsgType::page:
            try {
                if (auto done = reassembler_.accept(msg)) {
                    handle_state_update(done->attr, done->rows, done->seq);
                }
            } catch (const Error& e) {
                record(std::string(loomxai::to_string(e.code())), msg.attr, e.what());
            }
            return;
        case MsgType::event:
            handle_event(msg);
            return;
        case MsgType::sync_request:
            handle_sync_request(msg);
            return;
        case MsgType::sync_reply:
            record("UnexpectedMessage", msg.attr, "sync_reply sent to the kernel");
            return;
    }
}

void ObservableState::handle_state_update(const std::string& name, const Value& value, std::uint64_t seq) {
    Validator validator;
    {
        std::lock_guard lock(mutex_);
        auto it = attributes_.find(name);
        if (it == attributes_.end()) {
            diagnostics_.push_back({"UnknownAttribute", name, "update for unknown attribute dropped"});
            return;
        }
        Attribute& attr = it->second;
        if (attr.info.mode != SyncMode::two_way) {
            diagnostics_.push_back({"ModeViolation", name,
                                    "frontend update to " + std::string(to_string(attr.info.mode)) +
                                        " attribute dropped"});
            return;
        }
        if (seq <= attr.info.seq_frontend) {
            diagnostics_.push_back({"StaleSeq", name, "frontend seq " + std::to_string(seq) +
                                                          " not above " + std::to_string(attr.info.seq_frontend)});
            return;
        }
        if (resolve_conflict(attr.info.writer, {seq, Origin::frontend}) == Winner::local) {
            attr.info.seq_frontend = seq;
            diagnostics_.push_back({"Superseded", name, "frontend seq " + std::to_string(seq) +
                                                            " lost to seq " + std::to_string(attr.info.writer.seq)});
            return;
        }
        if (auto v = validators_.find(name); v != validators_.end()) validator = v->second;
    }

    if (validator) {
        try {
            validator(value);
        } catch (const std::exception& e) {
            // Keep the previous value and push it back so the view re-converges.
            std::vector<std::string> texts;
            {
                std::lock_guard lock(mutex_);
                Attribute& attr = attributes_.at(name);
                attr.info.seq_frontend = seq;
                diagnostics_.push_back({"InvalidValue", name, e.what()});
                std::uint64_t out_seq = 0;
                texts = build_publish_locked(name, attr, std::get<Value>(attr.value), &out_seq);
                attr.info.seq_backend = out_seq;
                attr.info.writer = {out_seq, Origin::backend};
                outbound_seq_[name] = out_seq;
            }
            emit(std::move(texts));
            return;
        }
    }

    Value old_value;
    std::vector<Handler> to_run;
    {
        std::lock_guard lock(mutex_);
        Attribute& attr = attributes_.at(name);
        old_value = std::move(std::get<Value>(attr.value));
        attr.value = value;
        attr.info.seq_frontend = seq;
        attr.info.writer = {seq, Origin::frontend};
        ++attr.applied_changes;
        for (const auto& entry : handlers_) {
            if (entry.attr == name) to_run.push_back(entry.handler);
        }
    }
    for (const auto& handler : to_run) {
        {
            std::lock_guard lock(mutex_);
            ++attributes_.at(name).handler_calls;
        }
        try {
            handler(old_value, value);
        } catch (const std::exception& e) {
            record("HandlerError", name, e.what());
        } catch (...) {
            record("HandlerError", name, "unknown exception");
        }
    }
}

void ObservableState::handle_event(const Message& msg) {
    std::vector<EventListener> listeners;
    {
        std::lock_guard lock(mutex_);
        ++events_received_;
        listeners = event_listeners_;
    }
    for (const auto& listener : listeners) {
        try {
            listener(msg.attr, msg.payload);
        } catch (const std::exception& e) {
            record("HandlerError", msg.attr, e.what());
        }
    }
}

void ObservableState::handle_sync_request(const Message& msg) {
    const Value* schema = msg.payload.is_object() && msg.payload.contains("schema")
                              ? &msg.payload["schema"]
                              : nullptr;
    if (!schema || !schema->is_string() || schema->get<std::string>() != wire::kSchemaVersion) {
        record("SchemaMismatch", "", "view did not announce schema " + std::string(wire::kSchemaVersion));
    }

    std::vector<std::string> texts;
    try {
        std::lock_guard lock(mutex_);
        Value entries = Value::object();
        std::vector<std::string> page_texts;
        for (auto& [name, attr] : attributes_) {
            if (attr.info.mode == SyncMode::backend_only) continue;
            Value entry = {{"mode", std::string(to_string(attr.info.mode))}};
            if (attr.info.paged) {
                std::uint64_t last = 0;
                auto pages = build_publish_locked(name, attr, std::get<Value>(attr.value), &last);
                outbound_seq_[name] = last;
                entry["paged"] = true;
                entry["page_count"] = static_cast<double>(pages.size());
                entry["origin"] = "backend";
                entry["seq"] = static_cast<double>(last);
                for (auto& p : pages) page_texts.push_back(std::move(p));
            } else {
                entry["origin"] = std::string(wire::to_string(attr.info.writer.origin));
                entry["seq"] = static_cast<double>(attr.info.writer.seq);
                entry["value"] = std::get<Value>(attr.value);
            }
            entries[name] = std::move(entry);
        }
        const std::uint64_t seq = next_seq_locked(kControlAttr, nullptr);
        Message reply{widget_id_,
                      MsgType::sync_reply,
                      kControlAttr,
                      Value{{"attributes", std::move(entries)}, {"schema", std::string(wire::kSchemaVersion)}},
                      seq,
                      Origin::backend,
                      std::nullopt};
        texts.push_back(wire::encode_checked(reply, options_.payload_cap));
        outbound_seq_[kControlAttr] = seq;
        for (auto& p : page_texts) texts.push_back(std::move(p));
    } catch (const Error& e) {
        record(std::string(loomxai::to_string(e.code())), "", e.what());
        return;
    }
    emit(std::move(texts));
}

std::map<std::string, Value> ObservableState::snapshot() const {
    std::lock_guard lock(mutex_);
    std::map<std::string, Value> out;
    for (const auto& [name, attr] : attributes_) {
        if (attr.info.mode != SyncMode::backend_only) out.emplace(name, std::get<Value>(attr.value));
    }
    return out;
}

std::vector<Diagnostic> ObservableState::diagnostics() const {
    std::lock_guard lock(mutex_);
    return diagnostics_;
}

std::size_t ObservableState::applied_changes(const std::string& name) const {
    std::lock_guard lock(mutex_);
    return find_locked(name).applied_changes;
}

std::size_t ObservableState::handler_calls(const std::string& name) const {
    std::lock_guard lock(mutex_);
    return find_locked(name).handler_calls;
}

std::size_t ObservableState::events_received() const {
    std::lock_guard lock(mutex_);
    return events_received_;
}

std::size_t ObservableState::page_message_count() const {
    std::lock_guard lock(mutex_);
    std::size_t total = 0;
    for (const auto& [name, attr] : attributes_) total += attr.page_count;
    return total;
}

}  // namespace loomxai::sync
