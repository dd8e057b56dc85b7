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

#include "loomxai/transport.hpp"

#include "loomxai/error.hpp"

namespace loomxai::sync {

LoopbackLink::LoopbackLink() : backend_(to_frontend_), frontend_(to_backend_) {}

bool LoopbackLink::deliver_one(std::deque<std::string>& queue, Side& receiver,
                               Direction direction) {
    if (queue.empty()) return false;
    std::string text = std::move(queue.front());
    queue.pop_front();
    if (drop_ && drop_(direction, text)) {
        ++dropped_;
        return false;
    }
    log_.push_back({direction, text});
    if (receiver.sink()) receiver.sink()(text);
    return true;
}

std::size_t LoopbackLink::drain(std::size_t budget) {
    std::size_t delivered = 0;
    while (pending() > 0) {
        for (auto direction : {Direction::to_frontend, Direction::to_backend}) {
            auto& queue = direction == Direction::to_frontend ? to_frontend_ : to_backend_;
            if (queue.empty()) continue;
            if (delivered == budget) {
                throw Error(ErrorCode::Deadlock, "message budget of " + std::to_string(budget) +
                                                     " exhausted with " + std::to_string(pending()) +
                                                     " still queued");
            }
            Side& receiver = direction == Direction::to_frontend ? frontend_ : backend_;
            if (deliver_one(queue, receiver, direction)) ++delivered;
        }
    }
    return delivered;
}

}  // namespace loomxai::sync
