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
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "loomxai/dataset.hpp"
#include "loomxai/filter.hpp"
#include "loomxai/model.hpp"
#include "loomxai/projection.hpp"
#include "loomxai/sync.hpp"

namespace loomxai::widgets {

struct WidgetOptions {
    /// Empty picks the widget kind's default id.
    std::string widget_id;
    std::size_t page_size = wire::kDefaultPageSize;
    std::size_t payload_cap = wire::kDefaultPayloadCap;
    wire::TransferIdSource transfer_ids;
};

/// Kernel half of a widget: an attribute store plus the handlers that give
/// it behavior. All runtime interaction goes through state().
class Widget {
public:
    virtual ~Widget() = default;
    Widget(const Widget&) = delete;
    Widget& operator=(const Widget&) = delete;

    sync::ObservableState& state() noexcept { return state_; }
    const sync::ObservableState& state() const noexcept { return state_; }
    const std::string& id() const noexcept { return state_.widget_id(); }

protected:
    Widget(const std::string& default_id, const WidgetOptions& options);

    sync::ObservableState state_;
};

/// Publishes a dataset one way: `data` (paged records), `schema`, `stats`.
/// Filtering happens in the view; the view's filter events are logged and
/// never touch the store.
class DataExplorerWidget : public Widget {
public:
    explicit DataExplorerWidget(data::TextDataset ds, const WidgetOptions& options = {});

    const data::TextDataset& dataset() const noexcept { return ds_; }
    std::size_t filter_events() const noexcept { return filter_events_; }

protected:
    DataExplorerWidget(data::TextDataset ds, const std::string& default_id, const WidgetOptions& options);

private:
    void publish_dataset();

    data::TextDataset ds_;
    std::size_t filter_events_ = 0;
};

/// DataExplorer plus a two-way `selection_spec`. The view edits the spec;
/// selection() re-runs the reference filter over the kernel's dataset.
class DataSelectorWidget final : public DataExplorerWidget {
public:
    explicit DataSelectorWidget(data::TextDataset ds, const WidgetOptions& options = {});

    data::FilterSpec selection_spec() const;
    data::TextDataset selection() const;
};

struct InferenceOptions {
    WidgetOptions widget;
    std::size_t k_default = 10;
    std::size_t inferred_cap = 100;
    std::size_t diagnostics_cap = 100;
};

/// Embedding view with live inference.
///
/// Writing `pending_input` runs the model on the text, projects it into the
/// fitted plane and appends {text,label,x,y,...} to `inferred_points`.
/// Writing `brush_rect` lists the training and inferred points inside it
/// in `neighbor_rows`. Model failures land in `diagnostics`.
class InferenceExplorerWidget final : public Widget {
public:
    InferenceExplorerWidget(data::TextDataset ds, std::shared_ptr<const model::ClassifierAdapter> adapter,
                            model::ProjectorFactory projector_factory = model::pca_factory(),
                            InferenceOptions options = {});

    const data::TextDataset& dataset() const noexcept { return ds_; }
    const model::ClassifierAdapter& adapter() const noexcept { return *adapter_; }
    const std::vector<model::Point2>& training_coords() const noexcept { return coords_; }
    std::size_t k_default() const noexcept { return options_.k_default; }

    /// Ids of the k training records nearest to `p` in the plane.
    std::vector<std::string> nearest_training(const model::Point2& p, std::size_t k) const;

private:
    struct Inferred {
        std::string input_id;
        std::string text;
        std::string label;
        model::Point2 at;
        std::map<std::string, double> scores;
        std::vector<std::string> neighbors;  // nearest training ids
    };

    void on_pending_input(const Value& text);
    void on_brush(const Value& rect);
    Value neighbor_rows_for(const Value& rect) const;
    void add_diagnostic(const std::string& code, const std::string& message, const Value& input);

    data::TextDataset ds_;
    std::shared_ptr<const model::ClassifierAdapter> adapter_;
    std::shared_ptr<model::Projector> projector_;
    InferenceOptions options_;
    std::vector<model::Point2> coords_;
    std::vector<std::size_t> by_id_;  // training indices in ascending id order
    std::vector<Inferred> inferred_;
    std::size_t next_input_ = 0;
    Value diagnostics_ = Value::array();
};

}  // namespace loomxai::widgets
