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

#include <memory>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "loomxai/error.hpp"
#include "loomxai/sync.hpp"

namespace loomxai::sync {
namespace {

using wire::Message;
using wire::MsgType;

// Records what the kernel sends and lets the test play the view.
class Capture final : public Transport {
public:
    void send(std::string text) override { sent.push_back(wire::decode(text)); }
    void set_sink(Sink s) override { sink = std::move(s); }
    void deliver(const Message& m) { sink(wire::encode(m)); }

    std::vector<Message> sent;
    Sink sink;
};

Message from_view(const std::string& attr, Value payload, std::uint64_t seq, MsgType type = MsgType::state_update) {
    return Message{"w", type, attr, std::move(payload), seq, Origin::frontend, std::nullopt};
}

bool has_diagnostic(const ObservableState& s, const std::string& code, const std::string& attr = "") {
    for (const auto& d : s.diagnostics()) {
        if (d.code == code && (attr.empty() || d.attr == attr)) return true;
    }
    return false;
}

struct Handle {
    int n = 0;
};

TEST(ResolveConflict, HigherSeqWins) {
    EXPECT_EQ(resolve_conflict({3, Origin::backend}, {5, Origin::backend}), Winner::incoming);
    EXPECT_EQ(resolve_conflict({5, Origin::frontend}, {3, Origin::frontend}), Winner::local);
}

TEST(ResolveConflict, FrontendWinsTies) {
    EXPECT_EQ(resolve_conflict({4, Origin::backend}, {4, Origin::frontend}), Winner::incoming);
    EXPECT_EQ(resolve_conflict({4, Origin::frontend}, {4, Origin::backend}), Winner::local);
    EXPECT_EQ(resolve_conflict({4, Origin::frontend}, {4, Origin::frontend}), Winner::local);
}

TEST(ResolveConflict, BothEndsPickTheSameValue) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 2000; ++i) {
        const Version a{rng() % 6, rng() % 2 ? Origin::frontend : Origin::backend};
        const Version b{rng() % 6, rng() % 2 ? Origin::frontend : Origin::backend};
        const Version at_a = resolve_conflict(a, b) == Winner::local ? a : b;
        const Version at_b = resolve_conflict(b, a) == Winner::local ? b : a;
        if (!(a == b)) {
            ASSERT_EQ(at_a, at_b) << a.seq << " " << b.seq;
        }
    }
}

TEST(Define, PublishesUpdate) {
    ObservableState s("w");
    Capture t;
    s.connect(t);
    s.define_attribute("data", Value::array({1, 2}), SyncMode::one_way_to_view);
    ASSERT_EQ(t.sent.size(), 1u);
    EXPECT_EQ(t.sent[0].type, MsgType::state_update);
    EXPECT_EQ(t.sent[0].attr, "data");
    EXPECT_EQ(t.sent[0].seq, 1u);
}

TEST(Define, QueuesUntilConnect) {
    ObservableState s("w");
    s.define_attribute("x", 1, SyncMode::two_way);
    Capture t;
    s.connect(t);
    ASSERT_EQ(t.sent.size(), 1u);
    EXPECT_EQ(t.sent[0].payload, 1);
}

TEST(Define, OpaqueModelStaysOffTheWire) {
    ObservableState s("w");
    Capture t;
    s.connect(t);
    s.define_attribute("model", Opaque::wrap(std::make_shared<Handle>()), SyncMode::backend_only);
    EXPECT_TRUE(t.sent.empty());
    EXPECT_EQ(s.snapshot().count("model"), 0u);
    EXPECT_TRUE(s.get_opaque<std::shared_ptr<Handle>>("model"));
    EXPECT_THROW(s.get("model"), Error);
}

TEST(Define, OpaqueNeedsBackendOnly) {
    ObservableState s("w");
    EXPECT_THROW(s.define_attribute("m", Opaque::wrap(1), SyncMode::two_way), NotSerializableError);
}

TEST(Define, Duplicate) {
    ObservableState s("w");
    s.define_attribute("x", 1, SyncMode::two_way);
    try {
        s.define_attribute("x", 1, SyncMode::two_way);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DuplicateAttribute);
    }
}

TEST(Define, PagedMustBeOneWay) {
    ObservableState s("w");
    try {
        s.define_attribute("x", Value::array(), SyncMode::two_way, {.paged = true});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ModeViolation);
    }
}

TEST(Define, PagedPublishesPages) {
    StateOptions options;
    options.page_size = 2;
    ObservableState s("w", options);
    Capture t;
    s.connect(t);
    s.define_attribute("rows", Value::array({1, 2, 3, 4, 5}), SyncMode::one_way_to_view, {.paged = true});
    ASSERT_EQ(t.sent.size(), 3u);
    for (const auto& m : t.sent) EXPECT_EQ(m.type, MsgType::page);
    EXPECT_EQ(wire::reassemble(t.sent), Value::array({1, 2, 3, 4, 5}));
    EXPECT_EQ(s.page_message_count(), 3u);
}

TEST(Set, BackendUpdateBumpsSeq) {
    ObservableState s("w");
    Capture t;
    s.connect(t);
    s.define_attribute("x", 1, SyncMode::two_way);
    s.set_attribute("x", 2);
    ASSERT_EQ(t.sent.size(), 2u);
    EXPECT_EQ(t.sent[1].payload, 2);
    EXPECT_EQ(t.sent[1].seq, 2u);
    EXPECT_EQ(t.sent[1].origin, Origin::backend);
    EXPECT_EQ(s.get("x"), 2);
}

TEST(Set, FrontendOnOneWayIsModeViolation) {
    ObservableState s("w");
    s.define_attribute("data", 1, SyncMode::one_way_to_view);
    try {
        s.set_attribute("data", 5, Origin::frontend);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ModeViolation);
    }
    EXPECT_EQ(s.get("data"), 1);
}

TEST(Set, BackendWriteFiresNoHandlers) {
    ObservableState s("w");
    Capture t;
    s.connect(t);
    s.define_attribute("x", 1, SyncMode::two_way);
    int calls = 0;
    s.register_handler("x", [&](const Value&, const Value&) { ++calls; });
    s.set_attribute("x", 2);
    EXPECT_EQ(calls, 0);
    EXPECT_EQ(t.sent.size(), 2u);
}

TEST(Set, UnknownAttribute) {
    ObservableState s("w");
    EXPECT_THROW(s.set_attribute("nope", 1), Error);
}

TEST(Handlers, ExactlyOnceWithOldAndNew) {
    ObservableState s("w");
    Capture t;
    s.connect(t);
    s.define_attribute("pending_input", "", SyncMode::two_way);
    std::vector<std::pair<Value, Value>> seen;
    s.register_handler("pending_input", [&](const Value& o, const Value& n) { seen.emplace_back(o, n); });
    t.deliver(from_view("pending_input", "hello", 5));
    ASSERT_EQ(seen.size(), 1u);
    EXPECT_EQ(seen[0].first, "");
    EXPECT_EQ(seen[0].second, "hello");
    EXPECT_EQ(s.applied_changes("pending_input"), 1u);
    EXPECT_EQ(s.handler_calls("pending_input"), 1u);
}

TEST(Handlers, RegistrationOrder) {
    ObservableState s("w");
    s.define_attribute("x", 0, SyncMode::two_way);
    std::string order;
    s.register_handler("x", [&](const Value&, const Value&) { order += "a"; });
    s.register_handler("x", [&](const Value&, const Value&) { order += "b"; });
    s.dispatch_incoming(from_view("x", 1, 2));
    EXPECT_EQ(order, "ab");
    EXPECT_EQ(s.handler_calls("x"), 2u);
    EXPECT_EQ(s.applied_changes("x"), 1u);
}

TEST(Handlers, Unregister) {
    ObservableState s("w");
    s.define_attribute("x", 0, SyncMode::two_way);
    int calls = 0;
    auto id = s.register_handler("x", [&](const Value&, const Value&) { ++calls; });
    s.unregister_handler(id);
    s.dispatch_incoming(from_view("x", 1, 2));
    EXPECT_EQ(calls, 0);
}

TEST(Handlers, WriteBackDoesNotRetrigger) {
    ObservableState s("w");
    Capture t;
    s.connect(t);
    s.define_attribute("x", 0, SyncMode::two_way);
    s.define_attribute("y", 0, SyncMode::one_way_to_view);
    int calls = 0;
    s.register_handler("x", [&](const Value&, const Value& now) {
        ++calls;
        s.set_attribute("y", now.get<int>() * 10);
        s.set_attribute("x", now.get<int>() + 1);
    });
    t.sent.clear();
    t.deliver(from_view("x", 4, 2));
    EXPECT_EQ(calls, 1);
    EXPECT_EQ(s.get("y"), 40);
    EXPECT_EQ(s.get("x"), 5);
    EXPECT_EQ(t.sent.size(), 2u);
}

TEST(Handlers, ExceptionBecomesDiagnostic) {
    ObservableState s("w");
    s.define_attribute("x", 0, SyncMode::two_way);
    s.register_handler("x", [](const Value&, const Value&) { throw std::runtime_error("boom"); });
    int after = 0;
    s.register_handler("x", [&](const Value&, const Value&) { ++after; });
    s.dispatch_incoming(from_view("x", 1, 2));
    EXPECT_TRUE(has_diagnostic(s, "HandlerError", "x"));
    EXPECT_EQ(after, 1);
    EXPECT_EQ(s.get("x"), 1);
}

TEST(Dispatch, OneWayUpdateDropped) {
    ObservableState s("w");
    s.define_attribute("data", Value::array({1}), SyncMode::one_way_to_view);
    s.dispatch_incoming(from_view("data", Value::array(), 9));
    EXPECT_EQ(s.get("data"), Value::array({1}));
    EXPECT_TRUE(has_diagnostic(s, "ModeViolation", "data"));
}

TEST(Dispatch, BackendOnlyUpdateDropped) {
    ObservableState s("w");
    s.define_attribute("model", Opaque::wrap(1), SyncMode::backend_only);
    s.dispatch_incoming(from_view("model", 2, 9));
    EXPECT_EQ(s.get_opaque<int>("model"), 1);
    EXPECT_TRUE(has_diagnostic(s, "ModeViolation", "model"));
}

TEST(Dispatch, UnknownAttributeDropped) {
    ObservableState s("w");
    s.dispatch_incoming(from_view("ghost", 1, 1));
    EXPECT_TRUE(has_diagnostic(s, "UnknownAttribute", "ghost"));
}

TEST(Dispatch, StaleSeqDropped) {
    ObservableState s("w");
    s.define_attribute("x", 0, SyncMode::two_way);
    s.dispatch_incoming(from_view("x", 1, 5));
    s.dispatch_incoming(from_view("x", 2, 5));
    s.dispatch_incoming(from_view("x", 3, 4));
    EXPECT_EQ(s.get("x"), 1);
    EXPECT_TRUE(has_diagnostic(s, "StaleSeq", "x"));
}

TEST(Dispatch, BackendWinsHigherSeq) {
    ObservableState s("w");
    s.define_attribute("x", 0, SyncMode::two_way);
    for (int i = 0; i < 5; ++i) s.set_attribute("x", i);  // writer seq 6
    s.dispatch_incoming(from_view("x", 99, 3));
    EXPECT_EQ(s.get("x"), 4);
    EXPECT_TRUE(has_diagnostic(s, "Superseded", "x"));
    s.dispatch_incoming(from_view("x", 99, 6));  // tie, frontend wins
    EXPECT_EQ(s.get("x"), 99);
}

TEST(Dispatch, ValidatorRejectionRepublishes) {
    ObservableState s("w");
    Capture t;
    s.connect(t);
    s.define_attribute("x", 1, SyncMode::two_way);
    s.set_validator("x", [](const Value& v) {
        if (!v.is_number()) throw Error(ErrorCode::TypeMismatch, "x must be a number");
    });
    t.sent.clear();
    t.deliver(from_view("x", "bad", 2));
    EXPECT_EQ(s.get("x"), 1);
    EXPECT_TRUE(has_diagnostic(s, "InvalidValue", "x"));
    ASSERT_EQ(t.sent.size(), 1u);
    EXPECT_EQ(t.sent[0].payload, 1);
    EXPECT_GT(t.sent[0].seq, 2u);
}

TEST(Dispatch, WrongWidgetAndOrigin) {
    ObservableState s("w");
    s.define_attribute("x", 0, SyncMode::two_way);
    Message m = from_view("x", 1, 2);
    m.widget_id = "other";
    s.dispatch_incoming(m);
    Message b = from_view("x", 1, 2);
    b.origin = Origin::backend;
    s.dispatch_incoming(b);
    EXPECT_EQ(s.get("x"), 0);
    EXPECT_TRUE(has_diagnostic(s, "WrongWidget"));
    EXPECT_TRUE(has_diagnostic(s, "WrongOrigin"));
}

TEST(Dispatch, MalformedTextBecomesDiagnostic) {
    ObservableState s("w");
    s.receive("{not json");
    EXPECT_TRUE(has_diagnostic(s, "Malformed"));
}

TEST(Dispatch, FrontendPagesReassemble) {
    ObservableState s("w");
    s.define_attribute("rows", Value::array(), SyncMode::two_way);
    const std::vector<Value> rows{1, 2, 3};
    auto pages = wire::paginate(rows, 2, {"w", "rows", Origin::frontend, 4}, "t");
    s.dispatch_incoming(pages[1]);
    EXPECT_EQ(s.get("rows"), Value::array());
    s.dispatch_incoming(pages[0]);
    EXPECT_EQ(s.get("rows"), Value::array({1, 2, 3}));
    EXPECT_EQ(s.info("rows").seq_frontend, 5u);
}

TEST(Events, ListenersSeeViewEvents) {
    ObservableState s("w");
    std::vector<std::string> names;
    s.on_event([&](const std::string& name, const Value&) { names.push_back(name); });
    s.dispatch_incoming(from_view("filter", {{"min_len", 2}}, 1, MsgType::event));
    EXPECT_EQ(names, std::vector<std::string>{"filter"});
    EXPECT_EQ(s.events_received(), 1u);
}

TEST(Events, EmitSendsEvent) {
    ObservableState s("w");
    Capture t;
    s.connect(t);
    s.emit_event("ping", 1);
    ASSERT_EQ(t.sent.size(), 1u);
    EXPECT_EQ(t.sent[0].type, MsgType::event);
    EXPECT_EQ(t.sent[0].attr, "ping");
}

TEST(SyncRequest, ReplyListsSyncedAttributes) {
    ObservableState s("w");
    Capture t;
    s.connect(t);
    s.define_attribute("x", 1, SyncMode::two_way);
    s.define_attribute("data", Value::array({1, 2, 3}), SyncMode::one_way_to_view, {.paged = true});
    s.define_attribute("model", Opaque::wrap(0), SyncMode::backend_only);
    s.set_attribute("x", 7);
    t.sent.clear();
    t.deliver(from_view("", {{"schema", "loomxai/1"}}, 1, MsgType::sync_request));
    ASSERT_GE(t.sent.size(), 2u);
    const Message& reply = t.sent[0];
    EXPECT_EQ(reply.type, MsgType::sync_reply);
    EXPECT_EQ(reply.payload["schema"], "loomxai/1");
    const Value& attrs = reply.payload["attributes"];
    EXPECT_EQ(attrs.size(), 2u);
    EXPECT_FALSE(attrs.contains("model"));
    EXPECT_EQ(attrs["x"]["value"], 7);
    EXPECT_EQ(attrs["x"]["seq"], 2);
    EXPECT_EQ(attrs["x"]["mode"], "two_way");
    EXPECT_EQ(attrs["data"]["paged"], true);
    EXPECT_EQ(attrs["data"]["page_count"], 1);
    EXPECT_EQ(t.sent[1].type, MsgType::page);
    EXPECT_EQ(t.sent[1].seq, attrs["data"]["seq"].get<std::uint64_t>());
    EXPECT_FALSE(has_diagnostic(s, "SchemaMismatch"));
}

TEST(SyncRequest, SchemaMismatchIsBestEffort) {
    ObservableState s("w");
    Capture t;
    s.connect(t);
    s.define_attribute("x", 1, SyncMode::two_way);
    t.sent.clear();
    t.deliver(from_view("", {{"schema", "loomxai/0"}}, 1, MsgType::sync_request));
    EXPECT_TRUE(has_diagnostic(s, "SchemaMismatch"));
    ASSERT_EQ(t.sent.size(), 1u);
    EXPECT_EQ(t.sent[0].type, MsgType::sync_reply);
}

TEST(Snapshot, DeepCopy) {
    ObservableState s("w");
    s.define_attribute("x", 1, SyncMode::two_way);
    const auto first = s.snapshot();
    s.set_attribute("x", 2);
    EXPECT_EQ(first.at("x"), 1);
    EXPECT_EQ(s.snapshot().at("x"), 2);
}

TEST(Connect, OneViewOnly) {
    ObservableState s("w");
    Capture a, b;
    s.connect(a);
    try {
        s.connect(b);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::AlreadyAttached);
    }
    s.disconnect();
    EXPECT_FALSE(s.connected());
    s.connect(b);
    EXPECT_TRUE(s.connected());
}

TEST(Cap, OversizeUpdateRejectedBeforeTransport) {
    StateOptions options;
    options.payload_cap = 200;
    ObservableState s("w", options);
    Capture t;
    s.connect(t);
    s.define_attribute("x", "", SyncMode::two_way);
    try {
        s.set_attribute("x", std::string(500, 'a'));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PayloadTooLarge);
    }
    EXPECT_EQ(s.get("x"), "");
    EXPECT_EQ(t.sent.size(), 1u);
}

TEST(SeqProperty, MonotonePerAttributeAndOrigin) {
    ObservableState s("w");
    Capture t;
    s.connect(t);
    s.define_attribute("a", 0, SyncMode::two_way);
    s.define_attribute("b", 0, SyncMode::two_way);
    std::mt19937_64 rng(9);
    std::map<std::string, std::uint64_t> view_seq;
    std::map<std::string, std::uint64_t> writer;
    for (int i = 0; i < 500; ++i) {
        const std::string attr = rng() % 2 ? "a" : "b";
        if (rng() % 2) {
            s.set_attribute(attr, static_cast<int>(rng() % 100));
        } else {
            view_seq[attr] = std::max(view_seq[attr], s.info(attr).seq_backend) + 1;
            t.deliver(from_view(attr, static_cast<int>(rng() % 100), view_seq[attr]));
        }
        const auto info = s.info(attr);
        ASSERT_GE(info.writer.seq, writer[attr]);
        ASSERT_EQ(info.writer.seq, std::max(info.seq_backend, info.seq_frontend));
        writer[attr] = info.writer.seq;
    }
    std::map<std::string, std::uint64_t> last;
    for (const auto& m : t.sent) {
        ASSERT_GT(m.seq, last[m.attr]);
        last[m.attr] = m.seq;
    }
}

}  // namespace
}  // namespace loomxai::sync
