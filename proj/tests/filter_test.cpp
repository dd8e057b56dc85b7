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

#include <unicode/uchar.h>
#include <unicode/ustring.h>
#include <unicode/utf16.h>

#include <gtest/gtest.h>

#include "loomxai/error.hpp"
#include "loomxai/filter.hpp"
#include "loomxai/harness/demo.hpp"
#include "loomxai/harness/generators.hpp"
#include "loomxai/text.hpp"

namespace loomxai::data {
namespace {

// Oracle: ICU's own UTF-8 conversion plus per-code-point simple folding.
std::u32string icu_fold(const std::string& s) {
    UErrorCode status = U_ZERO_ERROR;
    int32_t len16 = 0;
    u_strFromUTF8(nullptr, 0, &len16, s.data(), static_cast<int32_t>(s.size()), &status);
    status = U_ZERO_ERROR;
    std::u16string utf16(static_cast<std::size_t>(len16), u'\0');
    u_strFromUTF8(utf16.data(), len16, nullptr, s.data(), static_cast<int32_t>(s.size()), &status);
    EXPECT_TRUE(U_SUCCESS(status));
    std::u32string out;
    for (int32_t i = 0; i < len16;) {
        UChar32 c;
        U16_NEXT(utf16.data(), i, len16, c);
        out.push_back(static_cast<char32_t>(u_foldCase(c, U_FOLD_CASE_DEFAULT)));
    }
    return out;
}

std::int64_t icu_length(const std::string& s) { return static_cast<std::int64_t>(icu_fold(s).size()); }

bool oracle_matches(const Record& r, const FilterSpec& spec) {
    if (spec.excluded_ids.count(r.id)) return false;
    const auto len = icu_length(r.text);
    if (spec.min_len && len < *spec.min_len) return false;
    if (spec.max_len && len > *spec.max_len) return false;
    if (spec.substring && icu_fold(r.text).find(icu_fold(*spec.substring)) == std::u32string::npos) return false;
    for (const auto& p : spec.predicates) {
        auto it = r.extras.find(p.column);
        if (it == r.extras.end()) return false;
        const Value& cell = it->second;
        bool ok = false;
        switch (p.op) {
            case PredicateOp::eq: ok = cell == p.value; break;
            case PredicateOp::ne: ok = cell != p.value; break;
            case PredicateOp::le: ok = cell.get<double>() <= p.value.get<double>(); break;
            case PredicateOp::ge: ok = cell.get<double>() >= p.value.get<double>(); break;
        }
        if (!ok) return false;
    }
    return true;
}

TextDataset texts(std::initializer_list<const char*> items) {
    Value records = Value::array();
    for (const char* t : items) records.push_back({{"text", t}});
    return ingest_records(records);
}

std::vector<std::string> texts_of(const TextDataset& ds) {
    std::vector<std::string> out;
    for (const auto& r : ds.records()) out.push_back(r.text);
    return out;
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::Io;
}

TEST(Filter, MinLength) {
    FilterSpec spec;
    spec.min_len = 5;
    EXPECT_EQ(texts_of(apply_filter(texts({"hi", "hello", "worlds"}), spec)),
              (std::vector<std::string>{"hello", "worlds"}));
}

TEST(Filter, SubstringIgnoresCase) {
    FilterSpec spec;
    spec.substring = "GOOD";
    EXPECT_EQ(apply_filter(texts({"Goodness me", "bad"}), spec).size(), 1u);
}

TEST(Filter, EmptySpecIsIdentity) {
    const auto ds = texts({"a", "b"});
    EXPECT_TRUE(FilterSpec{}.empty());
    EXPECT_EQ(apply_filter(ds, {}), ds);
}

TEST(Filter, UnicodeFolding) {
    FilterSpec spec;
    spec.substring = "σοφ";
    EXPECT_EQ(apply_filter(texts({"ΣΟΦΙΑ", "sofia"}), spec).size(), 1u);
    spec.substring = "ς";  // final sigma folds to σ
    EXPECT_EQ(apply_filter(texts({"ΣΟΦΙΑ"}), spec).size(), 1u);
    spec.substring = "ÉTÉ";
    EXPECT_EQ(apply_filter(texts({"un été chaud"}), spec).size(), 1u);
    spec.substring = "ss";  // simple folding keeps ß as is
    EXPECT_EQ(apply_filter(texts({"straße"}), spec).size(), 0u);
}

TEST(Filter, LengthCountsScalars) {
    FilterSpec spec;
    spec.min_len = 2;
    spec.max_len = 2;
    EXPECT_EQ(texts_of(apply_filter(texts({"日本", "é", "abc", "😀😀"}), spec)),
              (std::vector<std::string>{"日本", "😀😀"}));
}

TEST(Filter, PredicatesAndMissingCells) {
    const auto ds = ingest_records(Value::parse(
        R"([{"id":"a","text":"x","n":1,"c":"red"},{"id":"b","text":"y","n":5},{"id":"c","text":"z","c":"blue"}])"));
    FilterSpec ge;
    ge.predicates = {{"n", PredicateOp::ge, 2}};
    EXPECT_EQ(apply_filter(ds, ge).ids(), std::vector<std::string>{"b"});
    FilterSpec ne;
    ne.predicates = {{"c", PredicateOp::ne, "red"}};
    EXPECT_EQ(apply_filter(ds, ne).ids(), std::vector<std::string>{"c"});
    FilterSpec excluded;
    excluded.excluded_ids = {"a", "c"};
    EXPECT_EQ(apply_filter(ds, excluded).ids(), std::vector<std::string>{"b"});
}

TEST(Filter, ValidationErrors) {
    const auto ds = ingest_records(Value::parse(R"([{"text":"x","n":1,"c":"red"}])"));
    FilterSpec bounds;
    bounds.min_len = 4;
    bounds.max_len = 3;
    EXPECT_EQ(code_of([&] { apply_filter(ds, bounds); }), ErrorCode::InvalidSpec);
    FilterSpec unknown;
    unknown.predicates = {{"zzz", PredicateOp::eq, 1}};
    EXPECT_EQ(code_of([&] { apply_filter(ds, unknown); }), ErrorCode::UnknownColumn);
    FilterSpec wrong;
    wrong.predicates = {{"n", PredicateOp::eq, "1"}};
    EXPECT_EQ(code_of([&] { apply_filter(ds, wrong); }), ErrorCode::TypeMismatch);
    FilterSpec order;
    order.predicates = {{"c", PredicateOp::le, "m"}};
    EXPECT_EQ(code_of([&] { apply_filter(ds, order); }), ErrorCode::TypeMismatch);
}

TEST(FilterSpec, WireForm) {
    EXPECT_EQ(FilterSpec{}.to_value(), Value::object());
    FilterSpec spec;
    spec.substring = "a";
    spec.min_len = 1;
    spec.predicates = {{"n", PredicateOp::le, 3}};
    spec.excluded_ids = {"q"};
    EXPECT_EQ(FilterSpec::from_value(spec.to_value()), spec);
    EXPECT_EQ(code_of([] { FilterSpec::from_value(Value::parse(R"({"bogus":1})")); }), ErrorCode::InvalidSpec);
    EXPECT_EQ(code_of([] { FilterSpec::from_value(Value::parse(R"({"min_len":1.5})")); }), ErrorCode::InvalidSpec);
    EXPECT_EQ(code_of([] { FilterSpec::from_value(Value::parse(R"({"predicates":[{"column":"n","op":"lt","value":1}]})")); }),
              ErrorCode::InvalidSpec);
    EXPECT_EQ(code_of([] { FilterSpec::from_value(Value::array()); }), ErrorCode::InvalidSpec);
}

TEST(FilterProperty, MatchesIcuOracle) {
    harness::Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const auto ds = harness::random_dataset(rng, 80);
        const auto spec = harness::random_spec(rng, ds);
        std::vector<std::string> expected;
        for (const auto& r : ds.records()) {
            if (oracle_matches(r, spec)) expected.push_back(r.id);
        }
        ASSERT_EQ(apply_filter(ds, spec).ids(), expected) << encode_value(spec.to_value());
    }
}

TEST(FilterProperty, IdempotentMonotoneOrdered) {
    harness::Rng rng(22);
    for (int trial = 0; trial < 200; ++trial) {
        const auto ds = harness::random_dataset(rng, 80);
        auto spec = harness::random_spec(rng, ds);
        const auto once = apply_filter(ds, spec);
        ASSERT_EQ(apply_filter(once, spec), once);

        const auto all = ds.ids();
        std::size_t at = 0;
        for (const auto& id : once.ids()) {
            while (at < all.size() && all[at] != id) ++at;
            ASSERT_LT(at, all.size()) << "not a subsequence";
            ++at;
        }

        auto tighter = spec;
        tighter.predicates.push_back({"rating", PredicateOp::ge, 2.5});
        const auto narrowed = apply_filter(ds, tighter);
        for (const auto& id : narrowed.ids()) {
            ASSERT_NE(std::find(once.ids().begin(), once.ids().end(), id), once.ids().end());
        }
        ASSERT_LE(narrowed.size(), once.size());
    }
}

TEST(Text, FoldAgreesWithIcuOracle) {
    harness::Rng rng(23);
    for (int i = 0; i < 500; ++i) {
        const std::string s = harness::random_text(rng, 20);
        ASSERT_EQ(text::casefold(text::decode(s)), icu_fold(s));
        ASSERT_EQ(static_cast<std::int64_t>(text::length(s)), icu_length(s));
    }
}

TEST(Text, Utf8Validation) {
    EXPECT_TRUE(text::is_valid_utf8("héllo 日本 😀"));
    EXPECT_FALSE(text::is_valid_utf8("\xc3"));
    EXPECT_FALSE(text::is_valid_utf8("\xed\xa0\x80"));  // surrogate
    EXPECT_FALSE(text::is_valid_utf8("\xc0\xaf"));      // overlong
}

TEST(Text, Tokenize) {
    EXPECT_EQ(text::tokenize("Good, GOOD-great!! 42x"), (std::vector<std::string>{"good", "good", "great", "42x"}));
    EXPECT_TRUE(text::tokenize("  ,;  ").empty());
}

}  // namespace
}  // namespace loomxai::data
