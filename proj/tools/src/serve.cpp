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

#include "loomxai/harness/serve.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

#include "loomxai/error.hpp"
#include "loomxai/model.hpp"
#include "loomxai/socket.hpp"

namespace loomxai::harness {

std::size_t payload_cap_from_env() {
    const char* raw = std::getenv("LOOMXAI_PAYLOAD_CAP");
    if (!raw || !*raw) return wire::kDefaultPayloadCap;
    const std::string_view s(raw);
    std::size_t cap = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
    if (ec != std::errc() || end != s.data() + s.size() || cap == 0)
        throw Error(ErrorCode::BadConfig, "LOOMXAI_PAYLOAD_CAP must be a positive integer, got '" + std::string(s) + "'");
    return cap;
}

std::unique_ptr<widgets::Widget> make_widget(const std::string& kind, data::TextDataset ds,
                                             const widgets::WidgetOptions& options) {
    if (kind == "data_explorer") return std::make_unique<widgets::DataExplorerWidget>(std::move(ds), options);
    if (kind == "data_selector") return std::make_unique<widgets::DataSelectorWidget>(std::move(ds), options);
    if (kind == "inference_explorer") {
        auto adapter = std::make_shared<model::ToyClassifier>(model::toy_fit(ds));
        widgets::InferenceOptions io;
        io.widget = options;
        return std::make_unique<widgets::InferenceExplorerWidget>(std::move(ds), std::move(adapter),
                                                                 model::pca_factory(), io);
    }
    throw Error(ErrorCode::BadConfig, "unknown widget kind '" + kind + "'");
}

void serve(widgets::Widget& widget, const ServeOptions& options) {
    net::SocketHost host(widget.state(), {options.address, options.port});
    if (options.on_listen) options.on_listen(host.port());
    while (host.serve_one()) {
        if (options.max_sessions && host.sessions() >= options.max_sessions) break;
    }
}

}  // namespace loomxai::harness
