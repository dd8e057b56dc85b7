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

#include "loomxai/widgets.hpp"

#include <algorithm>
#include <numeric>

#include "loomxai/error.hpp"

namespace loomxai::widgets {

using sync::SyncMode;

Widget::Widget(const std::string& default_id, const WidgetOptions& options)
    : state_(options.widget_id.empty() ? default_id : options.widget_id,
             sync::StateOptions{options.payload_cap, options.page_size, options.transfer_ids}) {}

// -- DataExplorer -----------------------------------------------------------

DataExplorerWidget::DataExplorerWidget(data::TextDataset ds, const WidgetOptions& options)
    : DataExplorerWidget(std::move(ds), "data_explorer", options) {}

DataExplorerWidget::DataExplorerWidget(data::TextDataset ds, const std::string& default_id,
                                       const WidgetOptions& options)
    : Widget(default_id, options), ds_(std::move(ds)) {
    publish_dataset();
    state_.on_event([this](const std::string& name, const Value&) {
        if (name == "filter") ++filter_events_;
    });
}

void DataExplorerWidget::publish_dataset() {
    state_.define_attribute("data", data::to_records(ds_), SyncMode::one_way_to_view, {.paged = true});
    state_.define_attribute("schema", data::schema_to_value(ds_.schema()), SyncMode::one_way_to_view);
    state_.define_attribute("stats", data::column_stats(ds_).to_value(), SyncMode::one_way_to_view);
}

// -- DataSelector -----------------------------------------------------------

DataSelectorWidget::DataSelectorWidget(data::TextDataset ds, const WidgetOptions& options)
    : DataExplorerWidget(std::move(ds), "data_selector", options) {
    state_.define_attribute("selection_spec", Value::object(), SyncMode::two_way);
    state_.set_validator("selection_spec", [this](const Value& v) {
        data::validate(data::FilterSpec::from_value(v), dataset().schema());
    });
}

data::FilterSpec DataSelectorWidget::selection_spec() const {
    return data::FilterSpec::from_value(state_.get("selection_spec"));
}

data::TextDataset DataSelectorWidget::selection() const { return data::apply_filter(dataset(), selection_spec()); }

// -- InferenceExplorer ------------------------------------------------------

InferenceExplorerWidget::InferenceExplorerWidget(data::TextDataset ds,
                                                 std::shared_ptr<const model::ClassifierAdapter> adapter,
                                                 model::ProjectorFactory projector_factory,
                                                 InferenceOptions options)
    : Widget("inference_explorer", options.widget),
      ds_(std::move(ds)),
      adapter_(std::move(adapter)),
      options_(std::move(options)) {
    if (!adapter_) throw Error(ErrorCode::BadConfig, "inference explorer needs a classifier adapter");
    if (options_.k_default == 0) throw Error(ErrorCode::BadK, "k_default must be >= 1");

    std::vector<model::Embedding> vectors;
    vectors.reserve(ds_.size());
    for (const auto& r : ds_.records()) vectors.push_back(adapter_->embed(r.text));
    projector_ = std::shared_ptr<model::Projector>(projector_factory());
    coords_ = projector_->fit(vectors);

    by_id_.resize(ds_.size());
    std::iota(by_id_.begin(), by_id_.end(), std::size_t{0});
    std::sort(by_id_.begin(), by_id_.end(), [this](std::size_t a, std::size_t b) { return ds_[a].id < ds_[b].id; });

    Value points = Value::array();
    for (std::size_t i = 0; i < ds_.size(); ++i) {
        const auto& r = ds_[i];
        points.push_back({{"id", r.id},
                          {"label", r.label ? Value(*r.label) : Value(nullptr)},
                          {"x", coords_[i].x},
                          {"y", coords_[i].y}});
    }

    state_.define_attribute("model", Opaque::wrap(adapter_), SyncMode::backend_only);
    state_.define_attribute("projector", Opaque::wrap(projector_), SyncMode::backend_only);
    state_.define_attribute("labels", adapter_->labels(), SyncMode::one_way_to_view);
    state_.define_attribute("points", std::move(points), SyncMode::one_way_to_view, {.paged = true});
    state_.define_attribute("pending_input", "", SyncMode::two_way);
    state_.define_attribute("inferred_points", Value::array(), SyncMode::one_way_to_view);
    state_.define_attribute("brush_rect", nullptr, SyncMode::two_way);
    state_.define_attribute("neighbor_rows", Value::array(), SyncMode::one_way_to_view);
    state_.define_attribute("diagnostics", Value::array(), SyncMode::one_way_to_view);

    state_.set_validator("pending_input", [](const Value& v) {
        if (!v.is_string()) throw Error(ErrorCode::TypeMismatch, "pending_input must be a string");
    });
    state_.set_validator("brush_rect", [](const Value& v) {
        if (!v.is_null()) model::Rect::from_value(v);
    });
    state_.register_handler("pending_input", [this](const Value&, const Value& now) { on_pending_input(now); });
    state_.register_handler("brush_rect", [this](const Value&, const Value& now) { on_brush(now); });
}

std::vector<std::string> InferenceExplorerWidget::nearest_training(const model::Point2& p, std::size_t k) const {
    std::vector<std::string> ids;
    for (std::size_t i : model::knn(coords_, p, std::min(k, coords_.size()))) ids.push_back(ds_[i].id);
    return ids;
}

void InferenceExplorerWidget::add_diagnostic(const std::string& code, const std::string& message,
                                             const Value& input) {
    diagnostics_.push_back({{"attr", "pending_input"}, {"code", code}, {"input", input}, {"message", message}});
    while (diagnostics_.size() > options_.diagnostics_cap) diagnostics_.erase(diagnostics_.begin());
    state_.set_attribute("diagnostics", diagnostics_);
}

void InferenceExplorerWidget::on_pending_input(const Value& value) {
    const auto& text = value.get_ref<const std::string&>();
    const auto model = state_.get_opaque<std::shared_ptr<const model::ClassifierAdapter>>("model");
    model::Prediction prediction;
    try {
        prediction = model->predict(text);
    } catch (const Error& e) {
        add_diagnostic(std::string(to_string(e.code())), e.what(), value);
        return;
    }
    const model::Point2 at = projector_->transform(model->embed(text));

    Inferred entry{"input-" + std::to_string(next_input_++), text, prediction.label, at,
                   prediction.scores, nearest_training(at, options_.k_default)};
    inferred_.push_back(std::move(entry));
    while (inferred_.size() > options_.inferred_cap) inferred_.erase(inferred_.begin());

    Value list = Value::array();
    for (const auto& e : inferred_) {
        list.push_back({{"id", e.input_id},
                        {"label", e.label},
                        {"neighbors", e.neighbors},
                        {"scores", e.scores},
                        {"text", e.text},
                        {"x", e.at.x},
                        {"y", e.at.y}});
    }
    state_.set_attribute("inferred_points", std::move(list));

    const Value rect = state_.get("brush_rect");
    if (!rect.is_null()) {
        Value rows = neighbor_rows_for(rect);
        if (rows != state_.get("neighbor_rows")) state_.set_attribute("neighbor_rows", std::move(rows));
    }
}

Value InferenceExplorerWidget::neighbor_rows_for(const Value& rect_value) const {
    Value rows = Value::array();
    if (rect_value.is_null()) return rows;
    const model::Rect rect = model::Rect::from_value(rect_value).normalized();
    for (std::size_t i : by_id_) {
        if (!rect.contains(coords_[i])) continue;
        const auto& r = ds_[i];
        rows.push_back({{"id", r.id},
                        {"label", r.label ? Value(*r.label) : Value(nullptr)},
                        {"source", "train"},
                        {"text", r.text}});
    }
    for (const auto& e : inferred_) {
        if (!rect.contains(e.at)) continue;
        rows.push_back({{"id", e.input_id}, {"label", e.label}, {"source", "input"}, {"text", e.text}});
    }
    return rows;
}

void InferenceExplorerWidget::on_brush(const Value& rect) { state_.set_attribute("neighbor_rows", neighbor_rows_for(rect)); }

}  // namespace loomxai::widgets
