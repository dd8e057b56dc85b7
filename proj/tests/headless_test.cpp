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

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "loomxai/error.hpp"
#include "loomxai/harness/demo.hpp"
#include "loomxai/harness/generators.hpp"
#include "loomxai/headless.hpp"
#include "loomxai/widgets.hpp"

namespace loomxai::widgets {
namespace {

using sync::LoopbackLink;

harness::DemoData demo(std::size_t n) {
    harness::DemoConfig config;
    config.n_records = n;
    return harness::demo_data(config);
}

WidgetOptions seeded(std::size_t page_size = 4) {
    WidgetOptions options;
    options.page_size = page_size;
    options.transfer_ids = wire::seeded_transfer_ids(99);
    return options;
}

std::unique_ptr<InferenceExplorerWidget> inference(const data::TextDataset& ds) {
    auto adapter = std::make_shared<model::ToyClassifier>(model::toy_fit(ds));
    InferenceOptions options;
    options.widget = seeded();
    return std::make_unique<InferenceExplorerWidget>(ds, adapter, model::pca_factory(), options);
}

TEST(HeadlessRun, EmptyScriptIsHandshakeOnly) {
    DataExplorerWidget w(demo(10).dataset, seeded());
    const auto t = headless_run({}, w);
    // 3 pages + schema + stats published at creation, then request and reply
    // with the data pages sent again.
    EXPECT_EQ(t.handshake_messages, 3u + 2u + 1u + 1u + 3u);
    EXPECT_EQ(t.messages.size(), t.handshake_messages);
    EXPECT_TRUE(t.action_messages.empty());
    EXPECT_TRUE(t.handler_calls.empty());
    EXPECT_EQ(t.frontend, t.backend);
    EXPECT_TRUE(t.client_errors.empty());
}

TEST(HeadlessRun, ThreeSubmissionsThreeFirings) {
    auto w = inference(demo(20).dataset);
    const auto t = headless_run({SubmitText{"same"}, SubmitText{"same"}, SubmitText{"same"}}, *w);
    EXPECT_EQ(t.handler_calls.at("pending_input"), 3u);
    EXPECT_EQ(t.applied_changes.at("pending_input"), 3u);
    EXPECT_EQ(w->state().get("inferred_points").size(), 3u);
}

TEST(HeadlessRun, RandomLongScriptStaysWithinBudget) {
    const auto d = demo(40);
    auto w = inference(d.dataset);
    std::vector<std::string> vocabulary;
    for (const auto& [label, words] : d.vocabulary) vocabulary.insert(vocabulary.end(), words.begin(), words.end());
    harness::Rng rng(500);
    std::vector<ClientAction> script;
    for (int i = 0; i < 500; ++i) script.push_back(harness::random_inference_action(rng, vocabulary));
    const auto t = headless_run(script, *w);
    ASSERT_EQ(t.action_messages.size(), 500u);
    for (std::size_t i = 0; i < script.size(); ++i) {
        ASSERT_LE(t.action_messages[i], action_budget(w->state(), script[i])) << describe(script[i]);
    }
    for (const auto& [name, value] : t.backend) {
        if (w->state().info(name).mode == sync::SyncMode::two_way) {
            EXPECT_EQ(t.frontend.at(name), value) << name;
        }
    }
}

TEST(HeadlessRun, LateJoinSyncsCurrentState) {
    DataSelectorWidget w(demo(10).dataset, seeded());
    data::FilterSpec spec;
    spec.min_len = 20;
    headless_run({ApplyFilter{spec}}, w);
    const auto second = headless_run({}, w);
    EXPECT_EQ(second.frontend.at("selection_spec"), spec.to_value());
    EXPECT_EQ(second.frontend, second.backend);
}

TEST(HeadlessRun, RequestSyncRepairsDroppedUpdates) {
    auto w = inference(demo(20).dataset);
    RunOptions options;
    options.drop = [](LoopbackLink::Direction dir, std::string_view text) {
        return dir == LoopbackLink::Direction::to_frontend &&
               text.find(R"("attr":"inferred_points","msg_type":"state_update")") != std::string_view::npos;
    };
    // The creation-time publish is dropped as well; the handshake covers it.
    const auto lossy = headless_run({SubmitText{"hello"}}, *w, options);
    EXPECT_EQ(lossy.dropped, 2u);
    EXPECT_NE(lossy.frontend.at("inferred_points"), lossy.backend.at("inferred_points"));

    auto w2 = inference(demo(20).dataset);
    const auto repaired = headless_run({SubmitText{"hello"}, RequestSync{}}, *w2, options);
    EXPECT_EQ(repaired.dropped, 2u);
    EXPECT_EQ(repaired.frontend, repaired.backend);
}

TEST(HeadlessRun, SeqStrictlyIncreasesPerAttrAndOrigin) {
    DataSelectorWidget w(demo(30).dataset, seeded());
    harness::Rng rng(7);
    std::vector<ClientAction> script;
    for (int i = 0; i < 200; ++i) script.push_back(harness::random_selector_action(rng, w.dataset()));
    const auto t = headless_run(script, w);
    std::map<std::pair<std::string, std::string>, std::uint64_t> last;
    for (const auto& text : t.messages) {
        const auto m = wire::decode(text);
        if (m.type == wire::MsgType::event || m.type == wire::MsgType::sync_request || m.type == wire::MsgType::sync_reply)
            continue;
        auto& prev = last[{m.attr, std::string(wire::to_string(m.origin))}];
        ASSERT_GT(m.seq, prev) << text;
        prev = m.seq;
    }
}

TEST(Transcript, OneMessagePerLine) {
    DataExplorerWidget w(demo(3).dataset, seeded());
    const auto t = headless_run({}, w);
    std::istringstream lines(t.text());
    std::string line;
    std::size_t n = 0;
    while (std::getline(lines, line)) {
        EXPECT_EQ(line, t.messages[n]);
        ++n;
    }
    EXPECT_EQ(n, t.messages.size());
}

TEST(Transcript, Golden) {
    DataSelectorWidget w(demo(6).dataset, seeded(2));
    data::FilterSpec spec;
    spec.substring = "a";
    spec.excluded_ids = {"1"};
    const auto t = headless_run({ApplyFilter{spec}, RawUpdate{"data", Value::array()}, SendEvent{"ping", 1},
                                 RequestSync{}},
                                w);
    const std::string path = std::string(LOOMXAI_GOLDEN_DIR) + "/selector_session.jsonl";
    if (std::getenv("LOOMXAI_UPDATE_GOLDEN")) {
        std::ofstream(path) << t.text();
    }
    std::ifstream in(path);
    ASSERT_TRUE(in) << "missing " << path << "; rerun with LOOMXAI_UPDATE_GOLDEN=1";
    std::stringstream golden;
    golden << in.rdbuf();
    EXPECT_EQ(t.text(), golden.str());
}

TEST(Client, SpeaksOnlyWire) {
    DataSelectorWidget w(demo(5).dataset, seeded());
    sync::LoopbackLink link;
    w.state().connect(link.backend_side());
    HeadlessClient client(w.id(), link.frontend_side());
    client.attach();
    link.drain();
    client.submit_text("x");  // no such attribute on a selector
    link.drain();
    EXPECT_EQ(client.values(), w.state().snapshot());
    bool unknown = false;
    for (const auto& d : w.state().diagnostics()) unknown = unknown || d.code == "UnknownAttribute";
    EXPECT_TRUE(unknown);
    w.state().disconnect();
}

TEST(Client, DescribeActions) {
    EXPECT_NE(describe(SubmitText{"hi"}).find("hi"), std::string::npos);
    EXPECT_FALSE(describe(RequestSync{}).empty());
}

}  // namespace
}  // namespace loomxai::widgets
