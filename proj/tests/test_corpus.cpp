// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#include <sstream>

#include "doctest.h"
#include "lcr/corpus.hpp"
#include "lcr/error.hpp"
#include "lcr/synthetic.hpp"
#include "lcr/tokenizer.hpp"
#include "support.hpp"

using namespace lcr;

namespace {

std::string line(const std::string& id, const std::string& extra = "") {
    return R"({"id":")" + id + R"(","language":"python","code":"x = 1")" + extra + "}\n";
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::kIoError;
}

}  // namespace

TEST_CASE("well-formed lines") {
    std::istringstream in(line("a") + line("b", R"(,"query":"q")") + "\n" + line("c", R"(,"token_length":7)"));
    const auto r = read_corpus(in);
    REQUIRE(r.records.size() == 3);
    CHECK(r.skipped.empty());
    CHECK(r.records[1].query == "q");
    CHECK(r.records[2].token_length == 7u);
    CHECK_FALSE(r.records[0].query.has_value());
}

TEST_CASE("malformed lines are skipped with their line numbers") {
    std::string text = "{not json\n";
    for (int i = 0; i < 9; ++i) text += line("r" + std::to_string(i));
    std::istringstream in(text);
    const auto r = read_corpus(in);
    CHECK(r.records.size() == 9);
    REQUIRE(r.skipped.size() == 1);
    CHECK(r.skipped[0].line == 1);

    std::istringstream mixed(line("a") + R"({"id":"b","language":"cobol","code":"x"})" "\n" + line("a") +
                             R"({"id":"c","code":"x"})" "\n" + R"([1,2])" "\n" +
                             R"({"id":"d","language":"go","code":"x","token_length":-3})" "\n");
    const auto m = read_corpus(mixed);
    CHECK(m.records.size() == 1);
    REQUIRE(m.skipped.size() == 5);
    CHECK(m.skipped[0].line == 2);
    CHECK(m.skipped[0].reason.find("cobol") != std::string::npos);
    CHECK(m.skipped[1].reason.find("duplicate") != std::string::npos);
}

TEST_CASE("query filter") {
    std::istringstream in(line("a") + line("b", R"(,"query":"")") + line("c", R"(,"query":"find")"));
    const auto r = read_corpus(in, IngestOptions{true});
    REQUIRE(r.records.size() == 1);
    CHECK(r.records[0].id == "c");
}

TEST_CASE("ingest errors") {
    std::istringstream bad("nope\n[]\n");
    CHECK(code_of([&] { read_corpus(bad); }) == ErrorCode::kAllLinesMalformed);
    std::istringstream empty("\n\n");
    CHECK(code_of([&] { read_corpus(empty); }) == ErrorCode::kAllLinesMalformed);
    CHECK(code_of([] { ingest_corpus("/nonexistent/c.jsonl"); }) == ErrorCode::kFileNotFound);
}

TEST_CASE("sample corpus round trips through ingest") {
    const auto first = ingest_corpus(LCR_TEST_DATA_DIR "/csn_sample.jsonl");
    REQUIRE(first.records.size() == 100);
    CHECK(first.skipped.empty());
    std::stringstream buf;
    write_corpus(first.records, buf);
    const auto second = read_corpus(buf);
    CHECK(second.records == first.records);
    std::stringstream again;
    write_corpus(second.records, again);
    std::stringstream buf2;
    write_corpus(first.records, buf2);
    CHECK(again.str() == buf2.str());
}

TEST_CASE("queries and snippets") {
    std::vector<CorpusRecord> recs{{"a", "python", "def f(): pass", std::string("make f"), std::nullopt},
                                   {"b", "go", "package p", std::nullopt, std::nullopt},
                                   {"c", "ruby", "x", std::string("x"), std::size_t{99}}};
    const auto snippets = to_snippets(recs);
    CHECK(snippets.size() == 3);
    CHECK(snippets[1].language == "go");
    const auto queries = to_queries(recs);
    REQUIRE(queries.size() == 2);
    CHECK(queries[0].id == "a");
    CHECK(queries[0].ground_truth == "a");
    CHECK(queries[0].token_length == count_tokens("def f(): pass"));
    CHECK(queries[1].token_length == 99);
}

TEST_CASE("synthetic corpus plants keywords where promised") {
    SyntheticConfig cfg;
    cfg.n = 60;
    cfg.seed = 7;
    const auto a = generate_corpus(cfg);
    const auto b = generate_corpus(cfg);
    CHECK(a.records == b.records);
    CHECK(a.late_ids.size() == 30);
    const std::set<std::string> late(a.late_ids.begin(), a.late_ids.end());
    for (const auto& r : a.records) {
        CAPTURE(r.id);
        REQUIRE(r.query.has_value());
        CHECK(r.language == "python");
        CHECK(r.token_length == count_tokens(r.code));
        const auto first = first_keyword_token(r);
        CHECK(first < count_tokens(r.code));
        if (late.count(r.id)) {
            CHECK(first >= 256);
        } else {
            CHECK(first < 256);
        }
        const auto tree = parse_source(Language::kPython, r.code);
        CHECK_FALSE(ts_node_has_error(tree.root()));
    }
    cfg.seed = 8;
    CHECK_FALSE(generate_corpus(cfg).records == a.records);
    cfg.late_fraction = 1.5;
    CHECK_THROWS_AS(generate_corpus(cfg), Error);
}
