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

#include "loomxai/harness/generators.hpp"

#include <cmath>

#include "loomxai/harness/demo.hpp"
#include "loomxai/text.hpp"

namespace loomxai::harness {
namespace {

const std::vector<std::string> kGlyphs = {"a", "b", "c", "G", "O", "D", "x", "Z", " ", " ", "1", "7", "-", "!",
                                          "\xC3\xA9", "\xC3\x89", "\xCF\x83", "\xCE\xA3", "\xC3\x9F",
                                          "\xE6\x97\xA5", "\xF0\x9F\x99\x82"};
const std::vector<std::string> kSources = {"forum", "news", "review", "chat"};

double random_number(Rng& rng) {
    switch (pick(rng, 4)) {
        case 0: return static_cast<double>(static_cast<std::int64_t>(pick(rng, 2001)) - 1000);
        case 1: return (unit(rng) - 0.5) * 1e6;
        case 2: return std::ldexp(unit(rng), static_cast<int>(pick(rng, 200)) - 100);
        default: return static_cast<double>(pick(rng, 1u << 20)) / 8.0;
    }
}

}  // namespace

std::string random_text(Rng& rng, std::size_t max_scalars) {
    std::string out;
    const std::size_t n = pick(rng, max_scalars + 1);
    for (std::size_t i = 0; i < n; ++i) out += kGlyphs[pick(rng, kGlyphs.size())];
    return out;
}

Value random_value(Rng& rng, int depth) {
    const std::size_t kinds = depth > 0 ? 6 : 4;
    switch (pick(rng, kinds)) {
        case 0: return nullptr;
        case 1: return pick(rng, 2) == 1;
        case 2: return random_number(rng);
        case 3: return random_text(rng, 8);
        case 4: {
            Value list = Value::array();
            for (std::size_t i = pick(rng, 4); i > 0; --i) list.push_back(random_value(rng, depth - 1));
            return list;
        }
        default: {
            Value map = Value::object();
            for (std::size_t i = pick(rng, 4); i > 0; --i) map[random_text(rng, 5)] = random_value(rng, depth - 1);
            return map;
        }
    }
}

wire::Message random_message(Rng& rng) {
    wire::Message m;
    m.widget_id = random_text(rng, 6);
    m.type = static_cast<wire::MsgType>(pick(rng, 5));
    m.attr = random_text(rng, 6);
    m.payload = random_value(rng, 3);
    m.seq = rng() >> (11 + pick(rng, 40));  // stays within 2^53
    m.origin = pick(rng, 2) ? wire::Origin::frontend : wire::Origin::backend;
    if (m.type == wire::MsgType::page) {
        const auto count = static_cast<std::int64_t>(1 + pick(rng, 50));
        m.page_info = wire::PageInfo{static_cast<std::int64_t>(pick(rng, static_cast<std::size_t>(count))), count,
                                     wire::random_transfer_id()};
        if (!m.payload.is_array()) m.payload = Value::array({m.payload});
    }
    return m;
}

data::TextDataset random_dataset(Rng& rng, std::size_t max_rows) {
    const std::size_t n = pick(rng, max_rows + 1);
    std::vector<data::Record> records;
    records.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        data::Record r;
        r.id = "r" + std::to_string(i);
        r.text = random_text(rng, 14);
        if (pick(rng, 4)) r.label = pick(rng, 2) ? "pos" : "neg";
        if (pick(rng, 5)) r.extras["rating"] = static_cast<double>(pick(rng, 11)) / 2.0;
        if (pick(rng, 5)) r.extras["source"] = kSources[pick(rng, kSources.size())];
        if (pick(rng, 2)) r.extras["note"] = random_text(rng, 4);
        records.push_back(std::move(r));
    }
    data::Schema schema{{"note", data::ColumnKind::string},
                        {"rating", data::ColumnKind::number},
                        {"source", data::ColumnKind::category}};
    return data::TextDataset(std::move(records), std::move(schema));
}

data::FilterSpec random_spec(Rng& rng, const data::TextDataset& ds) {
    data::FilterSpec spec;
    if (pick(rng, 2)) {
        // Often a piece of a real text, so some rows match.
        if (!ds.empty() && pick(rng, 3)) {
            const std::u32string scalars = text::decode(ds[pick(rng, ds.size())].text);
            const std::size_t at = pick(rng, scalars.size() + 1);
            spec.substring = text::encode(std::u32string_view(scalars).substr(at, 1 + pick(rng, 3)));
        } else {
            spec.substring = random_text(rng, 2);
        }
    }
    if (pick(rng, 3) == 0) spec.min_len = static_cast<std::int64_t>(pick(rng, 10));
    if (pick(rng, 3) == 0) spec.max_len = static_cast<std::int64_t>(spec.min_len.value_or(0) + pick(rng, 10));
    for (std::size_t i = pick(rng, 3); i > 0; --i) {
        data::Predicate p;
        switch (pick(rng, 3)) {
            case 0:
                p.column = "rating";
                p.op = static_cast<data::PredicateOp>(pick(rng, 4));
                p.value = static_cast<double>(pick(rng, 11)) / 2.0;
                break;
            case 1:
                p.column = "source";
                p.op = pick(rng, 2) ? data::PredicateOp::eq : data::PredicateOp::ne;
                p.value = kSources[pick(rng, kSources.size())];
                break;
            default:
                p.column = "note";
                p.op = pick(rng, 2) ? data::PredicateOp::eq : data::PredicateOp::ne;
                p.value = random_text(rng, 2);
                break;
        }
        spec.predicates.push_back(std::move(p));
    }
    for (std::size_t i = pick(rng, 3); i > 0 && !ds.empty(); --i) spec.excluded_ids.insert(ds[pick(rng, ds.size())].id);
    return spec;
}

Value random_invalid_spec(Rng& rng) {
    switch (pick(rng, 5)) {
        case 0: return Value{{"min_len", 9}, {"max_len", 3}};
        case 1: return Value{{"predicates", {{{"column", "nope"}, {"op", "eq"}, {"value", 1}}}}};
        case 2: return Value{{"predicates", {{{"column", "source"}, {"op", "le"}, {"value", "news"}}}}};
        case 3: return Value{{"substring", 5}};
        default: return Value::array({1, 2, 3});
    }
}

std::vector<model::Point2> random_points(Rng& rng, std::size_t n, bool grid) {
    std::vector<model::Point2> pts(n);
    for (auto& p : pts) {
        if (grid) {
            p = {static_cast<double>(pick(rng, 11)) - 5.0, static_cast<double>(pick(rng, 11)) - 5.0};
        } else {
            p = {unit(rng) * 20.0 - 10.0, unit(rng) * 20.0 - 10.0};
        }
    }
    return pts;
}

model::Rect random_rect(Rng& rng) {
    return {unit(rng) * 20.0 - 10.0, unit(rng) * 20.0 - 10.0, unit(rng) * 20.0 - 10.0, unit(rng) * 20.0 - 10.0};
}

widgets::ClientAction random_explorer_action(Rng& rng, const data::TextDataset& ds) {
    using namespace widgets;
    static const std::vector<std::string> kAttrs = {"data", "schema", "stats", "selection_spec", "ghost"};
    switch (pick(rng, 7)) {
        case 0:
        case 1: return ApplyFilter{random_spec(rng, ds)};
        case 2: return RawUpdate{kAttrs[pick(rng, kAttrs.size())], random_value(rng, 2)};
        case 3: {
            Value rows = Value::array();
            for (std::size_t i = pick(rng, 5); i > 0; --i) rows.push_back(random_value(rng, 1));
            return RawPages{"data", std::move(rows), 1 + pick(rng, 3)};
        }
        case 4: return RequestSync{};
        case 5: return SendEvent{pick(rng, 2) ? "filter" : "scroll", random_value(rng, 2)};
        default: return RawUpdate{"data", data::to_records(ds)};
    }
}

widgets::ClientAction random_selector_action(Rng& rng, const data::TextDataset& ds) {
    using namespace widgets;
    switch (pick(rng, 8)) {
        case 0:
        case 1:
        case 2: return ApplyFilter{random_spec(rng, ds)};
        case 3: return RawUpdate{"selection_spec", random_invalid_spec(rng)};
        case 4: return RawUpdate{"selection_spec", random_spec(rng, ds).to_value()};
        case 5: return RequestSync{};
        case 6: return RawUpdate{"data", Value::array()};
        default: return SendEvent{"filter", random_spec(rng, ds).to_value()};
    }
}

widgets::ClientAction random_inference_action(Rng& rng, const std::vector<std::string>& vocabulary) {
    using namespace widgets;
    switch (pick(rng, 9)) {
        case 0:
        case 1:
        case 2: {
            std::string text;
            for (std::size_t i = 1 + pick(rng, 5); i > 0; --i) {
                if (!text.empty()) text += ' ';
                text += vocabulary[pick(rng, vocabulary.size())];
            }
            return SubmitText{std::move(text)};
        }
        case 3: return SubmitText{pick(rng, 2) ? "" : " !? "};
        case 4: return Brush{random_rect(rng)};
        case 5: return Brush{std::nullopt};
        case 6: return RawUpdate{pick(rng, 2) ? "pending_input" : "brush_rect", random_value(rng, 1)};
        case 7: return RequestSync{};
        default: return RawUpdate{pick(rng, 2) ? "points" : "model", random_value(rng, 1)};
    }
}

}  // namespace loomxai::harness
