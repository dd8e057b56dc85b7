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

#include "loomxai/socket.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>
#include <thread>

#include "loomxai/error.hpp"

namespace loomxai::net {
namespace {

[[noreturn]] void fail(const std::string& what) {
    throw Error(ErrorCode::Io, what + ": " + std::strerror(errno));
}

sockaddr_in make_address(const std::string& address, std::uint16_t port) {
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (inet_pton(AF_INET, address.c_str(), &addr.sin_addr) != 1)
        throw Error(ErrorCode::BadConfig, "not an IPv4 address: " + address);
    return addr;
}

void close_fd(int& fd) {
    if (fd >= 0) ::close(fd);
    fd = -1;
}

// The host side of one accepted connection. Writes may come from whichever
// thread sets a backend attribute, so they are serialized.
class Connection final : public sync::Transport {
public:
    explicit Connection(int fd) : channel_(fd) {}

    void send(std::string text) override {
        std::lock_guard lock(write_mutex_);
        channel_.write_line(text);
    }
    void set_sink(Sink sink) override { sink_ = std::move(sink); }
    const Sink& sink() const noexcept { return sink_; }
    LineChannel& channel() noexcept { return channel_; }

private:
    LineChannel channel_;
    std::mutex write_mutex_;
    Sink sink_;
};

}  // namespace

std::optional<std::string> LineChannel::read_line(std::chrono::milliseconds timeout) {
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    for (;;) {
        if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
            std::string line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            return line;
        }
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
        if (left.count() < 0) return std::nullopt;
        pollfd p{fd_, POLLIN, 0};
        const int ready = ::poll(&p, 1, static_cast<int>(left.count()));
        if (ready < 0) {
            if (errno == EINTR) continue;
            fail("poll");
        }
        if (ready == 0) return std::nullopt;
        char chunk[65536];
        const ssize_t got = ::recv(fd_, chunk, sizeof chunk, 0);
        if (got < 0) {
            if (errno == EINTR) continue;
            fail("recv");
        }
        if (got == 0) throw Error(ErrorCode::Io, "peer closed the connection");
        buffer_.append(chunk, static_cast<std::size_t>(got));
    }
}

void LineChannel::write_line(const std::string& text) {
    std::string frame = text;
    frame.push_back('\n');
    std::size_t sent = 0;
    while (sent < frame.size()) {
        const ssize_t n = ::send(fd_, frame.data() + sent, frame.size() - sent, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            fail("send");
        }
        sent += static_cast<std::size_t>(n);
    }
}

SocketHost::SocketHost(sync::ObservableState& state, HostOptions options) : state_(state) {
    sockaddr_in addr = make_address(options.address, options.port);
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0);
    if (listen_fd_ < 0) fail("socket");
    const int on = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &on, sizeof on);
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
        const int err = errno;
        close_fd(listen_fd_);
        if (err == EADDRINUSE) throw Error(ErrorCode::PortInUse, "port " + std::to_string(options.port) + " is taken");
        errno = err;
        fail("bind");
    }
    if (::listen(listen_fd_, 4) < 0) fail("listen");
    socklen_t len = sizeof addr;
    if (::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len) < 0) fail("getsockname");
    port_ = ntohs(addr.sin_port);
    if (::pipe(wake_) < 0) fail("pipe");
}

SocketHost::~SocketHost() {
    stop();
    close_fd(listen_fd_);
    close_fd(wake_[0]);
    close_fd(wake_[1]);
}

void SocketHost::stop() {
    if (stopping_.exchange(true)) return;
    const char byte = 1;
    [[maybe_unused]] auto n = ::write(wake_[1], &byte, 1);
    if (int fd = active_fd_.load(); fd >= 0) ::shutdown(fd, SHUT_RDWR);
}

bool SocketHost::serve_one() {
    pollfd waits[2] = {{listen_fd_, POLLIN, 0}, {wake_[0], POLLIN, 0}};
    while (!stopping_) {
        if (::poll(waits, 2, -1) < 0) {
            if (errno == EINTR) continue;
            fail("poll");
        }
        if (waits[1].revents) return false;
        if (waits[0].revents & POLLIN) break;
    }
    if (stopping_) return false;
    int fd = ::accept4(listen_fd_, nullptr, nullptr, SOCK_CLOEXEC);
    if (fd < 0) fail("accept");
    active_fd_ = fd;
    ++sessions_;

    Connection conn(fd);
    std::mutex mutex;
    std::condition_variable ready;
    std::deque<std::string> inbox;
    bool closed = false;

    // Socket pump: only reads and queues. Dispatch stays on this thread.
    std::thread pump([&] {
        LineChannel reader(fd);
        for (;;) {
            std::optional<std::string> line;
            try {
                line = reader.read_line(std::chrono::milliseconds(200));
            } catch (const Error&) {
                break;
            }
            if (stopping_) break;
            if (!line) continue;
            std::lock_guard lock(mutex);
            inbox.push_back(std::move(*line));
            ready.notify_one();
        }
        std::lock_guard lock(mutex);
        closed = true;
        ready.notify_one();
    });

    try {
        state_.connect(conn);
    } catch (...) {
        ::shutdown(fd, SHUT_RDWR);
        pump.join();
        active_fd_ = -1;
        ::close(fd);
        throw;
    }
    for (;;) {
        std::string line;
        {
            std::unique_lock lock(mutex);
            ready.wait(lock, [&] { return !inbox.empty() || closed; });
            if (inbox.empty()) break;
            line = std::move(inbox.front());
            inbox.pop_front();
        }
        try {
            if (conn.sink()) conn.sink()(line);
        } catch (const Error&) {
            break;  // the view went away mid-reply
        }
    }
    state_.disconnect();
    ::shutdown(fd, SHUT_RDWR);
    pump.join();
    active_fd_ = -1;
    ::close(fd);
    return !stopping_;
}

void SocketHost::run() {
    while (serve_one()) {
    }
}

SocketClient::SocketClient(const std::string& address, std::uint16_t port) {
    sockaddr_in addr = make_address(address, port);
    fd_ = ::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0);
    if (fd_ < 0) fail("socket");
    if (::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
        const int err = errno;
        close_fd(fd_);
        errno = err;
        fail("connect to " + address + ":" + std::to_string(port));
    }
    channel_.emplace(fd_);
}

SocketClient::~SocketClient() { close(); }

void SocketClient::close() {
    channel_.reset();
    if (fd_ >= 0) ::shutdown(fd_, SHUT_RDWR);
    close_fd(fd_);
}

void SocketClient::send(std::string text) {
    if (!channel_) throw Error(ErrorCode::Io, "client is closed");
    channel_->write_line(text);
}

std::size_t SocketClient::pump(std::size_t count, std::chrono::milliseconds idle) {
    if (!channel_) throw Error(ErrorCode::Io, "client is closed");
    std::size_t delivered = 0;
    while (delivered < count) {
        auto line = channel_->read_line(idle);
        if (!line) break;
        ++delivered;
        if (sink_) sink_(*line);
    }
    return delivered;
}

}  // namespace loomxai::net
