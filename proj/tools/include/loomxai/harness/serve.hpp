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
#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "loomxai/dataset.hpp"
#include "loomxai/widgets.hpp"

namespace loomxai::harness {

/// Payload cap from LOOMXAI_PAYLOAD_CAP, or the wire default. Throws
/// Error{BadConfig} for a value that is not a positive integer.
std::size_t payload_cap_from_env();

/// Builds "data_explorer", "data_selector" or "inference_explorer" over
/// `ds`; the inference explorer gets a toy classifier fitted on it.
/// Throws Error{BadConfig} for other kinds.
std::unique_ptr<widgets::Widget> make_widget(const std::string& kind, data::TextDataset ds,
                                             const widgets::WidgetOptions& options);

struct ServeOptions {
    std::string address = "127.0.0.1";
    std::uint16_t port = 0;
    /// Called once the socket listens, with the bound port.
    std::function<void(std::uint16_t)> on_listen;
    /// Stop after this many views have come and gone; 0 serves forever.
    std::size_t max_sessions = 0;
};

/// Runs the standalone host for `widget` on the calling thread.
void serve(widgets::Widget& widget, const ServeOptions& options);

}  // namespace loomxai::harness
