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

#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "loomxai/sync.hpp"
#include "loomxai/transport.hpp"

namespace loomxai::net {

/// Newline-framed wire messages over TCP. The canonical encoding escapes
/// every control character, so a raw '\n' can only be a frame boundary.
class LineChannel {
public:
    explicit LineChannel(int fd) : fd_(fd) {}

    /// Next complete line, or nullopt on timeout. Throws Error{Io} once the
    /// peer has closed and no full line is left.
    std::optional<std::string> read_line(std::chrono::milliseconds timeout);
    void write_line(const std::string& text);

private:
    int fd_;
    std::string buffer_;
};

struct HostOptions {
    std::string address = "127.0.0.1";
    std::uint16_t port = 0;  // 0 asks the OS for a free port
};

/// Standalone host for one widget.
///
/// Accepts one view at a time and bridges its messages into the widget.
/// A pump thread reads the socket; the thread that calls serve_one() or
/// run() is the widget's dispatch context.
class SocketHost {
public:
    /// Binds and listens. Throws Error{PortInUse} or Error{Io}.
    SocketHost(sync::ObservableState& state, HostOptions options = {});
    ~SocketHost();
    SocketHost(const SocketHost&) = delete;
    SocketHost& operator=(const SocketHost&) = delete;

    std::uint16_t port() const noexcept { return port_; }

    /// Serves one view until it disconnects. Returns false if stopped first.
    bool serve_one();
    /// serve_one() until stop().
    void run();
    /// Safe from any thread.
    void stop();

    std::size_t sessions() const noexcept { return sessions_; }

private:
    sync::ObservableState& state_;
    int listen_fd_ = -1;
    int wake_[2] = {-1, -1};
    std::uint16_t port_ = 0;
    std::atomic<bool> stopping_{false};
    std::atomic<int> active_fd_{-1};
    std::atomic<std::size_t> sessions_{0};
};

/// The view's end of a SocketHost connection.
class SocketClient final : public sync::Transport {
public:
    /// Throws Error{Io} if the host is unreachable.
    SocketClient(const std::string& address, std::uint16_t port);
    ~SocketClient() override;
    SocketClient(const SocketClient&) = delete;
    SocketClient& operator=(const SocketClient&) = delete;

    void send(std::string text) override;
    void set_sink(Sink sink) override { sink_ = std::move(sink); }

    /// Delivers inbound messages to the sink on the calling thread until
    /// `count` arrived or nothing came for `idle`. Returns how many arrived.
    std::size_t pump(std::size_t count, std::chrono::milliseconds idle);
    void close();

private:
    int fd_ = -1;
    std::optional<LineChannel> channel_;
    Sink sink_;
};

}  // namespace loomxai::net
