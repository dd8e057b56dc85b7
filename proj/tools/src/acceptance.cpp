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

#include "loomxai/harness/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <random>

#include "loomxai/error.hpp"
#include "loomxai/harness/demo.hpp"
#include "loomxai/harness/generators.hpp"
#include "loomxai/headless.hpp"
#include "loomxai/model.hpp"
#include "loomxai/projection.hpp"
#include "loomxai/text.hpp"
#include "loomxai/widgets.hpp"
#include "loomxai/wire.hpp"

namespace loomxai::harness {
namespace {

using Clock = std::chrono::steady_clock;
using widgets::ClientAction;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Rng rng_for(const AcceptOptions& options, int criterion) {
    return Rng(options.seed * 1000003u + static_cast<std::uint64_t>(criterion));
}

widgets::WidgetOptions seeded_widget(std::uint64_t seed, std::size_t page_size = wire::kDefaultPageSize) {
    widgets::WidgetOptions w;
    w.page_size = page_size;
    w.transfer_ids = wire::seeded_transfer_ids(seed);
    return w;
}

// Everything about an attribute the kernel could observe: value bytes plus
// mode, paging and version bookkeeping.
std::map<std::string, std::string> fingerprint(const sync::ObservableState& state) {
    std::map<std::string, std::string> out;
    for (const auto& name : state.attribute_names()) {
        const sync::AttributeInfo info = state.info(name);
        Value v = {{"mode", std::string(sync::to_string(info.mode))},
                   {"paged", info.paged},
                   {"seq_backend", static_cast<double>(info.seq_backend)},
                   {"seq_frontend", static_cast<double>(info.seq_frontend)},
                   {"writer", {static_cast<double>(info.writer.seq), std::string(wire::to_string(info.writer.origin))}}};
        if (info.mode != sync::SyncMode::backend_only) v["value"] = state.get(name);
        out[name] = encode_value(v);
    }
    return out;
}

std::vector<std::string> two_way_attributes(const sync::ObservableState& state) {
    std::vector<std::string> out;
    for (const auto& name : state.attribute_names()) {
        if (state.info(name).mode == sync::SyncMode::two_way) out.push_back(name);
    }
    return out;
}

std::shared_ptr<const model::ClassifierAdapter> fit_adapter(const data::TextDataset& ds) {
    return std::make_shared<model::ToyClassifier>(model::toy_fit(ds));
}

std::vector<std::string> flat_vocabulary(const DemoData& demo) {
    std::vector<std::string> out;
    for (const auto& [label, words] : demo.vocabulary) out.insert(out.end(), words.begin(), words.end());
    return out;
}

// Straight-line restatement of the toy classifier, used as the oracle.
struct CosineOracle {
    std::size_t d = model::kDefaultDimension;
    std::map<std::string, std::vector<double>> centroids;

    std::vector<double> embed(std::string_view s) const {
        std::vector<double> v(d, 0.0);
        for (const auto& token : text::tokenize(s)) {
            std::uint32_t h = 2166136261u;
            for (unsigned char c : token) {
                h ^= c;
                h *= 16777619u;
            }
            v[h % d] += 1.0;
        }
        double norm = 0;
        for (double x : v) norm += x * x;
        if (norm > 0)
            for (double& x : v) x /= std::sqrt(norm);
        return v;
    }

    explicit CosineOracle(const data::TextDataset& ds) {
        std::map<std::string, std::size_t> counts;
        for (const auto& r : ds.records()) {
            if (!r.label) continue;
            auto& c = centroids.try_emplace(*r.label, std::vector<double>(d, 0.0)).first->second;
            const auto e = embed(r.text);
            for (std::size_t i = 0; i < d; ++i) c[i] += e[i];
            ++counts[*r.label];
        }
        for (auto& [label, c] : centroids) {
            double norm = 0;
            for (double& x : c) {
                x /= static_cast<double>(counts[label]);
                norm += x * x;
            }
            if (norm > 0)
                for (double& x : c) x /= std::sqrt(norm);
        }
    }

    std::string predict(std::string_view s) const {
        const auto e = embed(s);
        std::string best;
        double best_score = -2;
        for (const auto& [label, c] : centroids) {
            double score = 0;
            for (std::size_t i = 0; i < d; ++i) score += e[i] * c[i];
            if (score > best_score) {
                best_score = score;
                best = label;
            }
        }
        return best;
    }
};

}  // namespace

std::string CriterionResult::report_line() const {
    return encode_value(Value{{"criterion", number}, {"id", id}, {"measured", measured}, {"pass", pass}});
}

CriterionResult check_dp1_isolation(const AcceptOptions& options) {
    const auto start = Clock::now();
    Rng rng = rng_for(options, 1);
    const DemoData demo = demo_data({.n_records = 200, .seed = options.seed});
    widgets::DataExplorerWidget widget(demo.dataset, seeded_widget(options.seed, 32));

    std::vector<ClientAction> script;
    for (int i = 0; i < 1000; ++i) script.push_back(random_explorer_action(rng, demo.dataset));

    const auto before = fingerprint(widget.state());
    const auto transcript = widgets::headless_run(script, widget);
    const auto after = fingerprint(widget.state());

    std::size_t changed = 0;
    for (const auto& [name, print] : before) changed += after.count(name) && after.at(name) == print ? 0 : 1;
    changed += after.size() > before.size() ? after.size() - before.size() : 0;
    const double secs = seconds_since(start);
    return {1,
            "dp1-isolation",
            changed == 0 && secs < 5.0,
            {{"actions", script.size()},
             {"changed_attributes", changed},
             {"diagnostics", widget.state().diagnostics().size()},
             {"messages", transcript.messages.size()},
             {"seconds", secs}}};
}

CriterionResult check_dp2_oracle(const AcceptOptions& options) {
    const auto start = Clock::now();
    Rng rng = rng_for(options, 2);
    std::size_t mismatches = 0;
    std::size_t rejected = 0;
    std::size_t rows = 0;
    for (int pair = 0; pair < 200; ++pair) {
        const data::TextDataset ds = random_dataset(rng, 500);
        rows += ds.size();
        widgets::DataSelectorWidget widget(ds, seeded_widget(options.seed + pair));
        data::FilterSpec expected;
        std::vector<ClientAction> script;
        for (std::size_t i = 1 + pick(rng, 3); i > 0; --i) {
            if (pick(rng, 4) == 0) {
                script.push_back(widgets::RawUpdate{"selection_spec", random_invalid_spec(rng)});
                ++rejected;
            } else {
                expected = random_spec(rng, ds);
                script.push_back(widgets::ApplyFilter{expected});
            }
        }
        widgets::headless_run(script, widget);
        const data::TextDataset oracle = data::apply_filter(ds, expected);
        if (!(widget.selection() == oracle) || !(widget.selection_spec() == expected)) ++mismatches;
    }
    const double secs = seconds_since(start);
    return {2,
            "dp2-oracle-equivalence",
            mismatches == 0 && secs < 10.0,
            {{"mismatches", mismatches},
             {"pairs", 200},
             {"rejected_specs", rejected},
             {"rows", rows},
             {"seconds", secs}}};
}

CriterionResult check_convergence(const AcceptOptions& options) {
    const auto start = Clock::now();
    Rng rng = rng_for(options, 3);
    std::size_t diverged = 0;
    std::size_t one_way_diverged = 0;
    std::size_t compared = 0;
    std::size_t client_errors = 0;
    for (int session = 0; session < 100; ++session) {
        std::unique_ptr<widgets::Widget> widget;
        std::vector<ClientAction> script;
        const std::size_t actions = 20 + pick(rng, 41);
        if (session % 2 == 0) {
            data::TextDataset ds = random_dataset(rng, 80);
            for (std::size_t i = 0; i < actions; ++i) script.push_back(random_selector_action(rng, ds));
            widget = std::make_unique<widgets::DataSelectorWidget>(std::move(ds), seeded_widget(session, 16));
        } else {
            const DemoData demo = demo_data({.n_records = 60, .seed = options.seed + static_cast<std::uint64_t>(session)});
            const auto vocab = flat_vocabulary(demo);
            for (std::size_t i = 0; i < actions; ++i) script.push_back(random_inference_action(rng, vocab));
            widgets::InferenceOptions io;
            io.widget = seeded_widget(session, 16);
            widget = std::make_unique<widgets::InferenceExplorerWidget>(demo.dataset, fit_adapter(demo.dataset),
                                                                       model::pca_factory(), io);
        }
        const auto t = widgets::headless_run(script, *widget);
        client_errors += t.client_errors.size();
        for (const auto& name : two_way_attributes(widget->state())) {
            ++compared;
            auto it = t.frontend.find(name);
            if (it == t.frontend.end() || encode_value(it->second) != encode_value(t.backend.at(name))) ++diverged;
        }
        for (const auto& [name, value] : t.backend) {
            auto it = t.frontend.find(name);
            if (it == t.frontend.end() || encode_value(it->second) != encode_value(value)) ++one_way_diverged;
        }
    }
    const double secs = seconds_since(start);
    return {3,
            "dp2-dp3-convergence",
            diverged == 0,
            {{"client_errors", client_errors},
             {"compared_two_way", compared},
             {"diverged_any_mode", one_way_diverged},
             {"diverged_two_way", diverged},
             {"seconds", secs},
             {"sessions", 100}}};
}

CriterionResult check_exactly_once(const AcceptOptions& options) {
    const auto start = Clock::now();
    Rng rng = rng_for(options, 4);
    std::size_t failures = 0;
    std::size_t submissions = 0;
    std::size_t errors = 0;
    std::size_t label_checks = 0;
    for (int run = 0; run < 25; ++run) {
        const DemoData demo = demo_data({.n_records = 120, .seed = options.seed * 31 + static_cast<std::uint64_t>(run)});
        const auto vocab = flat_vocabulary(demo);
        widgets::InferenceOptions io;
        io.widget = seeded_widget(run);
        widgets::InferenceExplorerWidget widget(demo.dataset, fit_adapter(demo.dataset), model::pca_factory(), io);
        const model::ToyClassifier independent = model::toy_fit(demo.dataset);

        std::vector<ClientAction> script;
        std::vector<std::string> texts;
        const std::size_t k = 1 + pick(rng, 40);
        std::size_t expected_errors = 0;
        while (texts.size() < k) {
            ClientAction a = random_inference_action(rng, vocab);
            if (const auto* s = std::get_if<widgets::SubmitText>(&a)) {
                texts.push_back(s->text);
                if (text::tokenize(s->text).empty()) ++expected_errors;
                script.push_back(std::move(a));
            } else if (std::holds_alternative<widgets::Brush>(a)) {
                script.push_back(std::move(a));
            }
        }
        const auto t = widgets::headless_run(script, widget);
        submissions += k;
        errors += expected_errors;

        const std::size_t fired = t.handler_calls.count("pending_input") ? t.handler_calls.at("pending_input") : 0;
        const Value& inferred = t.backend.at("inferred_points");
        bool ok = fired == k && inferred.size() == k - expected_errors &&
                  t.backend.at("diagnostics").size() == expected_errors;
        std::size_t j = 0;
        for (const auto& text : texts) {
            if (text::tokenize(text).empty()) continue;
            if (j >= inferred.size()) {
                ok = false;
                break;
            }
            const Value& entry = inferred[j++];
            ++label_checks;
            ok = ok && entry["text"] == text && entry["label"] == independent.predict(text).label;
        }
        if (!ok) ++failures;
    }
    const double secs = seconds_since(start);
    return {4,
            "dp3-exactly-once",
            failures == 0,
            {{"error_inputs", errors},
             {"failed_scripts", failures},
             {"label_checks", label_checks},
             {"scripts", 25},
             {"seconds", secs},
             {"submissions", submissions}}};
}

CriterionResult check_no_echo(const AcceptOptions& options) {
    const auto start = Clock::now();
    Rng rng = rng_for(options, 5);
    std::size_t deadlocks = 0;
    std::size_t most = 0;
    std::size_t total = 0;
    for (int session = 0; session < 100; ++session) {
        std::unique_ptr<widgets::Widget> widget;
        std::vector<ClientAction> script;
        const DemoData demo = demo_data({.n_records = 40, .seed = options.seed + static_cast<std::uint64_t>(session)});
        switch (session % 3) {
            case 0:
                for (int i = 0; i < 500; ++i) script.push_back(random_explorer_action(rng, demo.dataset));
                widget = std::make_unique<widgets::DataExplorerWidget>(demo.dataset, seeded_widget(session, 8));
                break;
            case 1:
                for (int i = 0; i < 500; ++i) script.push_back(random_selector_action(rng, demo.dataset));
                widget = std::make_unique<widgets::DataSelectorWidget>(demo.dataset, seeded_widget(session, 8));
                break;
            default: {
                const auto vocab = flat_vocabulary(demo);
                for (int i = 0; i < 500; ++i) script.push_back(random_inference_action(rng, vocab));
                widgets::InferenceOptions io;
                io.widget = seeded_widget(session, 8);
                io.inferred_cap = 20;
                widget = std::make_unique<widgets::InferenceExplorerWidget>(demo.dataset, fit_adapter(demo.dataset),
                                                                           model::pca_factory(), io);
            }
        }
        try {
            const auto t = widgets::headless_run(script, *widget);
            for (std::size_t n : t.action_messages) most = std::max(most, n);
            total += t.messages.size();
        } catch (const Error& e) {
            if (e.code() != ErrorCode::Deadlock) throw;
            ++deadlocks;
        }
    }
    const double secs = seconds_since(start);
    return {5,
            "no-echo-loops",
            deadlocks == 0,
            {{"actions_per_session", 500},
             {"deadlocks", deadlocks},
             {"max_messages_per_action", most},
             {"messages", total},
             {"seconds", secs},
             {"sessions", 100}}};
}

CriterionResult check_wire(const AcceptOptions& options) {
    const auto start = Clock::now();
    Rng rng = rng_for(options, 6);

    std::size_t roundtrip_failures = 0;
    for (int i = 0; i < 10000; ++i) {
        const wire::Message m = random_message(rng);
        const std::string text = wire::encode(m);
        const wire::Message back = wire::decode(text);
        if (!(back == m) || wire::encode(back) != text) ++roundtrip_failures;
    }

    std::size_t page_failures = 0;
    int page_trials = 0;
    for (int i = 0; i < 200; ++i, ++page_trials) {
        const data::TextDataset ds = random_dataset(rng, 120);
        const std::size_t page_size = 1 + pick(rng, 30);
        auto pages = data::to_pages(ds, page_size, {"w", "data", wire::Origin::backend, 1}, "t" + std::to_string(i));
        std::vector<wire::Message> received;
        for (const auto& p : pages) received.push_back(wire::decode(wire::encode(p)));
        for (std::size_t j = received.size(); j > 1; --j) std::swap(received[j - 1], received[pick(rng, j)]);
        const Value rows = wire::reassemble(received);
        const std::size_t expected_pages = ds.empty() ? 1 : (ds.size() + page_size - 1) / page_size;
        if (encode_value(rows) != encode_value(data::to_records(ds)) || pages.size() != expected_pages) ++page_failures;
    }

    std::size_t cap_failures = 0;
    for (int i = 0; i < 50; ++i) {
        wire::Message m = random_message(rng);
        m.type = wire::MsgType::state_update;
        m.page_info.reset();
        const std::size_t len = wire::encode(m).size();
        bool ok = true;
        try {
            wire::encode_checked(m, len);
            wire::encode_checked(m, len + 1);
        } catch (const Error&) {
            ok = false;
        }
        try {
            wire::encode_checked(m, len - 1);
            ok = false;
        } catch (const Error& e) {
            ok = ok && e.code() == ErrorCode::PayloadTooLarge;
        }

        // Same boundary through the attribute store.
        const Value value = random_value(rng, 2);
        const std::size_t state_len =
            wire::encode({"w", wire::MsgType::state_update, "x", value, 1, wire::Origin::backend, std::nullopt}).size();
        for (std::size_t cap : {state_len - 1, state_len, state_len + 1}) {
            sync::StateOptions so;
            so.payload_cap = cap;
            sync::ObservableState state("w", so);
            try {
                state.define_attribute("x", value, sync::SyncMode::two_way);
                ok = ok && cap >= state_len;
            } catch (const Error& e) {
                ok = ok && cap < state_len && e.code() == ErrorCode::PayloadTooLarge && !state.has_attribute("x");
            }
        }
        if (!ok) ++cap_failures;
    }
    const double secs = seconds_since(start);
    return {6,
            "wire-roundtrip",
            roundtrip_failures == 0 && page_failures == 0 && cap_failures == 0,
            {{"cap_failures", cap_failures},
             {"cap_trials", 50},
             {"messages", 10000},
             {"page_failures", page_failures},
             {"page_trials", page_trials},
             {"roundtrip_failures", roundtrip_failures},
             {"seconds", secs}}};
}

CriterionResult check_geometry(const AcceptOptions& options) {
    const auto start = Clock::now();
    Rng rng = rng_for(options, 7);
    std::size_t knn_failures = 0;
    std::size_t rect_failures = 0;
    for (int i = 0; i < 50; ++i) {
        const bool grid = i % 2 == 0;
        const auto pts = random_points(rng, 100, grid);
        const model::Point2 q = random_points(rng, 1, grid).front();
        const std::size_t k = 1 + pick(rng, 100);
        std::vector<std::size_t> order(pts.size());
        for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
        auto dist2 = [&](std::size_t j) {
            const double dx = pts[j].x - q.x;
            const double dy = pts[j].y - q.y;
            return dx * dx + dy * dy;
        };
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return dist2(a) != dist2(b) ? dist2(a) < dist2(b) : a < b;
        });
        order.resize(k);
        if (model::knn(pts, q, k) != order) ++knn_failures;
    }
    for (int i = 0; i < 50; ++i) {
        const bool grid = i % 2 == 0;
        const auto pts = random_points(rng, 100, grid);
        model::Rect r = random_rect(rng);
        if (grid) r = {std::round(r.x0), std::round(r.y0), std::round(r.x1), std::round(r.y1)};
        std::vector<std::size_t> oracle;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            const auto& p = pts[j];
            if (std::min(r.x0, r.x1) <= p.x && p.x <= std::max(r.x0, r.x1) && std::min(r.y0, r.y1) <= p.y &&
                p.y <= std::max(r.y0, r.y1))
                oracle.push_back(j);
        }
        const model::Rect swapped{r.x1, r.y1, r.x0, r.y0};
        if (model::points_in_rect(pts, r) != oracle || model::points_in_rect(pts, swapped) != oracle) ++rect_failures;
    }
    const double secs = seconds_since(start);
    return {7,
            "geometry-oracles",
            knn_failures == 0 && rect_failures == 0,
            {{"instances", 50}, {"knn_failures", knn_failures}, {"rect_failures", rect_failures}, {"seconds", secs}}};
}

CriterionResult check_projector(const AcceptOptions& options) {
    const auto start = Clock::now();
    Rng rng = rng_for(options, 8);
    const DemoData demo = demo_data({.n_records = 200, .seed = options.seed});
    const auto adapter = model::toy_fit(demo.dataset);
    std::vector<model::Embedding> vectors;
    for (const auto& r : demo.dataset.records()) vectors.push_back(adapter.embed(r.text));

    const model::PcaProjector first = model::pca_fit(vectors);
    double worst = 0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        const model::Point2 c = first.fitted_coords()[i];
        const model::Point2 t = first.transform(vectors[i]);
        const double err = std::hypot(t.x - c.x, t.y - c.y) / (1.0 + std::hypot(c.x, c.y));
        worst = std::max(worst, err);
    }
    auto coords_text = [](const std::vector<model::Point2>& coords) {
        std::string out;
        for (const auto& p : coords) out += format_number(p.x) + "," + format_number(p.y) + ";";
        return out;
    };
    const model::PcaProjector second = model::pca_fit(vectors);
    const bool identical = coords_text(first.fitted_coords()) == coords_text(second.fitted_coords());

    double rank1_max = 0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> base(5), dir(5);
        for (auto& x : base) x = unit(rng) * 4 - 2;
        for (auto& x : dir) x = unit(rng) * 2 - 1;
        std::vector<model::Embedding> line;
        for (std::size_t i = 3 + pick(rng, 8); i > 0; --i) {
            const double t = unit(rng) * 10 - 5;
            model::Embedding v(5);
            for (std::size_t j = 0; j < 5; ++j) v[j] = base[j] + t * dir[j];
            line.push_back(std::move(v));
        }
        const model::PcaProjector p = model::pca_fit(line);
        for (const auto& c : p.fitted_coords()) rank1_max = std::max(rank1_max, std::fabs(c.y));
    }
    const double secs = seconds_since(start);
    return {8,
            "projector-self-consistency",
            worst <= 1e-6 && identical && rank1_max <= 1e-6,
            {{"byte_identical", identical},
             {"max_relative_error", worst},
             {"rank1_max_abs_y", rank1_max},
             {"seconds", secs}}};
}

CriterionResult check_end_to_end(const AcceptOptions& options) {
    const auto start = Clock::now();
    (void)options;
    DemoConfig config;
    config.n_records = 200;
    config.classes = {"pos", "neg"};
    config.seed = 7;
    const DemoData demo = demo_data(config);
    const std::string& class_a = config.classes.front();

    Rng rng(7);
    std::string sentence;
    const auto& pool = demo.vocabulary.at(class_a);
    for (int i = 0; i < 6; ++i) {
        if (!sentence.empty()) sentence += ' ';
        sentence += pool[pick(rng, pool.size())];
    }

    widgets::InferenceOptions io;
    io.widget = seeded_widget(7);
    widgets::InferenceExplorerWidget widget(demo.dataset, fit_adapter(demo.dataset), model::pca_factory(), io);
    const auto t = widgets::headless_run({widgets::SubmitText{sentence}}, widget);

    const Value& inferred = t.backend.at("inferred_points");
    const CosineOracle oracle(demo.dataset);
    const std::string expected = oracle.predict(sentence);
    std::string label;
    std::size_t neighbors_a = 0;
    std::size_t neighbors = 0;
    bool finite = false;
    if (inferred.size() == 1) {
        label = inferred[0]["label"].get<std::string>();
        finite = std::isfinite(inferred[0]["x"].get<double>()) && std::isfinite(inferred[0]["y"].get<double>());
        std::map<std::string, std::string> label_of;
        for (const auto& r : demo.dataset.records()) label_of[r.id] = r.label.value_or("");
        for (const auto& id : inferred[0]["neighbors"]) {
            ++neighbors;
            if (label_of[id.get<std::string>()] == class_a) ++neighbors_a;
        }
    }
    const double secs = seconds_since(start);
    const bool pass = label == class_a && expected == class_a && finite && neighbors == 10 &&
                      2 * neighbors_a > neighbors && secs < 10.0;
    return {9,
            "end-to-end-inference",
            pass,
            {{"class_a", class_a},
             {"label", label},
             {"neighbors", neighbors},
             {"neighbors_class_a", neighbors_a},
             {"oracle_label", expected},
             {"seconds", secs},
             {"sentence", sentence}}};
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"dp1",  "dp2",      "convergence", "callbacks", "echo",
                                                   "wire", "geometry", "projector",   "e2e",       "all"};
    return names;
}

std::vector<CriterionResult> run_suite(const std::string& suite, const AcceptOptions& options) {
    using Check = std::function<CriterionResult(const AcceptOptions&)>;
    static const std::vector<std::pair<std::string, Check>> checks = {
        {"dp1", check_dp1_isolation}, {"dp2", check_dp2_oracle},     {"convergence", check_convergence},
        {"callbacks", check_exactly_once}, {"echo", check_no_echo}, {"wire", check_wire},
        {"geometry", check_geometry}, {"projector", check_projector}, {"e2e", check_end_to_end},
    };
    std::vector<CriterionResult> results;
    for (const auto& [name, check] : checks) {
        if (suite == "all" || suite == name) results.push_back(check(options));
    }
    if (results.empty()) throw Error(ErrorCode::UnknownSuite, "no suite named '" + suite + "'");
    return results;
}

bool write_report(const std::vector<CriterionResult>& results, std::ostream& out) {
    bool all = true;
    for (const auto& r : results) {
        out << r.report_line() << '\n';
        all = all && r.pass;
    }
    out.flush();
    return all;
}

}  // namespace loomxai::harness
