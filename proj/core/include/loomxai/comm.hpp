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
#include <functional>
#include <string>

#include "loomxai/transport.hpp"
#include "loomxai/value.hpp"

namespace loomxai::sync {

/// Carries wire text inside notebook comm messages.
///
/// Outbound text goes out as {"comm_id": id, "data": {"wire": text}}
/// through `publish`; the host glue feeds inbound comm messages to
/// on_comm_msg(). The wire text is never re-encoded.
class CommTransport final : public Transport {
public:
    using Publish = std::function<void(const Value& comm_msg)>;

    CommTransport(std::string comm_id, Publish publish);

    void send(std::string text) override;
    void set_sink(Sink sink) override { sink_ = std::move(sink); }

    /// Returns false (and counts it) when `msg` is not a wire envelope for
    /// this comm.
    bool on_comm_msg(const Value& msg);

    const std::string& comm_id() const noexcept { return comm_id_; }
    std::size_t rejected() const noexcept { return rejected_; }

private:
    std::string comm_id_;
    Publish publish_;
    Sink sink_;
    std::size_t rejected_ = 0;
};

}  // namespace loomxai::sync
