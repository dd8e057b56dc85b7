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
#include <deque>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace loomxai::sync {

/// Moves encoded wire messages between one widget and one view.
///
/// Implementations deliver inbound text to the registered sink in send
/// order and never duplicate a message.
class Transport {
public:
    using Sink = std::function<void(std::string_view)>;

    virtual ~Transport() = default;

    virtual void send(std::string text) = 0;
    virtual void set_sink(Sink sink) = 0;
};

/// In-process transport pair. Nothing moves until drain() is called, which
/// makes message interleaving deterministic for tests.
class LoopbackLink {
public:
    enum class Direction { to_frontend, to_backend };

    struct Delivery {
        Direction direction;
        std::string text;
    };

    /// Fault injection: return true to drop the message instead of
    /// delivering it. Only meant for tests of lossy links.
    using DropPredicate = std::function<bool(Direction, std::string_view)>;

    LoopbackLink();
    LoopbackLink(const LoopbackLink&) = delete;
    LoopbackLink& operator=(const LoopbackLink&) = delete;

    Transport& backend_side() noexcept { return backend_; }
    Transport& frontend_side() noexcept { return frontend_; }

    /// Delivers queued messages, alternating directions, until both queues
    /// are empty. Returns the number delivered. Throws Error{Deadlock} as
    /// soon as more than `budget` messages would be delivered.
    std::size_t drain(std::size_t budget = static_cast<std::size_t>(-1));

    std::size_t pending() const noexcept { return to_frontend_.size() + to_backend_.size(); }
    const std::vector<Delivery>& log() const noexcept { return log_; }
    void clear_log() { log_.clear(); }
    void set_drop_predicate(DropPredicate drop) { drop_ = std::move(drop); }
    std::size_t dropped() const noexcept { return dropped_; }

private:
    class Side final : public Transport {
    public:
        explicit Side(std::deque<std::string>& outbound) : outbound_(outbound) {}
        void send(std::string text) override { outbound_.push_back(std::move(text)); }
        void set_sink(Sink sink) override { sink_ = std::move(sink); }
        const Sink& sink() const noexcept { return sink_; }

    private:
        std::deque<std::string>& outbound_;
        Sink sink_;
    };

    bool deliver_one(std::deque<std::string>& queue, Side& receiver, Direction direction);

    std::deque<std::string> to_frontend_;
    std::deque<std::string> to_backend_;
    Side backend_;
    Side frontend_;
    std::vector<Delivery> log_;
    DropPredicate drop_;
    std::size_t dropped_ = 0;
};

}  // namespace loomxai::sync
