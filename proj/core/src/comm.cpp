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

#include "loomxai/comm.hpp"

#include "loomxai/error.hpp"

namespace loomxai::sync {

CommTransport::CommTransport(std::string comm_id, Publish publish)
    : comm_id_(std::move(comm_id)), publish_(std::move(publish)) {
    if (!publish_) throw Error(ErrorCode::BadConfig, "comm transport needs a publish callback");
}

void CommTransport::send(std::string text) {
    publish_(Value{{"comm_id", comm_id_}, {"data", {{"wire", std::move(text)}}}});
}

bool CommTransport::on_comm_msg(const Value& msg) {
    const bool ok = msg.is_object() && msg.value("comm_id", Value()) == comm_id_ && msg.contains("data") &&
                    msg["data"].is_object() && msg["data"].contains("wire") && msg["data"]["wire"].is_string();
    if (!ok) {
        ++rejected_;
        return false;
    }
    if (sink_) sink_(msg["data"]["wire"].get_ref<const std::string&>());
    return true;
}

}  // namespace loomxai::sync
