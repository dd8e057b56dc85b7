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

#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "loomxai/error.hpp"
#include "loomxai/harness/demo.hpp"
#include "loomxai/harness/generators.hpp"
#include "loomxai/model.hpp"

namespace loomxai::model {
namespace {

// Independent FNV-1a and bucket arithmetic for the oracles below.
std::uint32_t fnv(const std::string& s) {
    std::uint32_t h = 0x811c9dc5u;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x01000193u;
    }
    return h;
}

std::size_t bucket(const std::string& token, std::size_t d = kDefaultDimension) { return fnv(token) % d; }

data::TextDataset labeled(std::initializer_list<std::pair<const char*, const char*>> rows) {
    Value records = Value::array();
    for (const auto& [t, l] : rows) records.push_back({{"text", t}, {"label", l}});
    return data::ingest_records(records);
}

TEST(Fnv, PublishedVectors) {
    EXPECT_EQ(fnv1a32(""), 0x811c9dc5u);
    EXPECT_EQ(fnv1a32("a"), 0xe40c292cu);
    EXPECT_EQ(fnv1a32("foobar"), 0xbf9cf968u);
    EXPECT_EQ(kFnvOffsetBasis, 0x811c9dc5u);
    EXPECT_EQ(kFnvPrime, 0x01000193u);
}

TEST(Embed, CountsThenNormalizes) {
    const auto v = hashed_bag_of_words("Good good bad", 64);
    ASSERT_NE(bucket("good"), bucket("bad"));
    EXPECT_NEAR(v[bucket("good")], 2 / std::sqrt(5.0), 1e-15);
    EXPECT_NEAR(v[bucket("bad")], 1 / std::sqrt(5.0), 1e-15);
    EXPECT_NEAR(dot(v, v), 1.0, 1e-15);
}

TEST(Embed, NoTokensIsZero) {
    const auto v = hashed_bag_of_words(" ,.! ", 8);
    EXPECT_EQ(v, Embedding(8, 0.0));
}

TEST(Embed, Deterministic) {
    harness::Rng rng(31);
    for (int i = 0; i < 1000; ++i) {
        const std::string s = harness::random_text(rng, 30);
        ASSERT_EQ(hashed_bag_of_words(s, 64), hashed_bag_of_words(s, 64));
    }
}

TEST(ToyFit, SingleRecordCentroidIsOneHot) {
    const auto clf = toy_fit(labeled({{"good", "pos"}}));
    Embedding expected(kDefaultDimension, 0.0);
    expected[bucket("good")] = 1.0;
    EXPECT_EQ(clf.centroids().at("pos"), expected);
}

TEST(ToyFit, DisjointVocabGivesOrthogonalCentroids) {
    const std::vector<std::string> pos{"good", "great", "fine"};
    const std::vector<std::string> neg{"bad", "awful"};
    std::set<std::size_t> pos_buckets, neg_buckets;
    for (const auto& t : pos) pos_buckets.insert(bucket(t));
    for (const auto& t : neg) neg_buckets.insert(bucket(t));
    for (auto b : neg_buckets) ASSERT_EQ(pos_buckets.count(b), 0u) << "hash collision";

    const auto clf = toy_fit(labeled({{"good great fine", "pos"}, {"bad awful", "neg"}}));
    EXPECT_EQ(dot(clf.centroids().at("pos"), clf.centroids().at("neg")), 0.0);
}

TEST(ToyFit, NoLabels) {
    try {
        toy_fit(data::ingest_records(Value::parse(R"([{"text":"a"}])")));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoLabels);
    }
}

TEST(ToyPredict, HandComputedCosine) {
    const auto clf = toy_fit(labeled({{"good great fine", "pos"}, {"bad awful", "neg"}}));
    ASSERT_EQ(std::set<std::size_t>({bucket("good"), bucket("great"), bucket("fine")}).size(), 3u);
    const auto p = clf.predict("good good");
    EXPECT_EQ(p.label, "pos");
    EXPECT_NEAR(p.scores.at("pos"), 1 / std::sqrt(3.0), 1e-12);
    EXPECT_EQ(p.scores.at("neg"), 0.0);
    EXPECT_EQ(clf.labels(), (std::vector<std::string>{"neg", "pos"}));
}

TEST(ToyPredict, EmptyInput) {
    const auto clf = toy_fit(labeled({{"good", "pos"}}));
    for (const char* s : {"", "   ", "?!"}) {
        try {
            clf.predict(s);
            FAIL() << s;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::EmptyInput);
        }
    }
}

TEST(ToyPredict, SingleClassAlwaysWins) {
    const auto clf = toy_fit(labeled({{"good", "pos"}}));
    EXPECT_EQ(clf.predict("unrelated words").label, "pos");
}

TEST(ToyPredict, TieGoesToSmallestLabel) {
    const auto clf = toy_fit(labeled({{"same", "zeta"}, {"same", "alpha"}}));
    EXPECT_EQ(clf.predict("same").label, "alpha");
}

TEST(ToyPredict, PermutationSymmetry) {
    harness::DemoConfig config;
    config.n_records = 60;
    const auto ds = harness::demo_data(config).dataset;
    std::vector<data::Record> shuffled = ds.records();
    std::mt19937_64 rng(8);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto a = toy_fit(ds);
    const auto b = toy_fit(data::TextDataset(shuffled, ds.schema()));
    for (const auto& [label, c] : a.centroids()) {
        const auto& other = b.centroids().at(label);
        for (std::size_t i = 0; i < c.size(); ++i) ASSERT_NEAR(c[i], other[i], 1e-12);
    }
    for (const auto& r : ds.records()) {
        const auto pa = a.predict(r.text);
        const auto pb = b.predict(r.text);
        ASSERT_EQ(pa.label, pb.label);
        for (const auto& [label, s] : pa.scores) ASSERT_NEAR(s, pb.scores.at(label), 1e-12);
    }
}

}  // namespace
}  // namespace loomxai::model
