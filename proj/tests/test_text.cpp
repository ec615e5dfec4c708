// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#include <random>

#include "doctest.h"
#include "lcr/error.hpp"
#include "lcr/split.hpp"
#include "lcr/tokenizer.hpp"
#include "lcr/window.hpp"
#include "support.hpp"

using namespace lcr;

namespace {

std::vector<std::string> texts(const std::vector<CodePiece>& pieces) {
    std::vector<std::string> out;
    for (const auto& p : pieces) out.push_back(p.text);
    return out;
}

std::vector<std::string> token_texts(std::string_view s) {
    std::vector<std::string> out;
    for (auto& t : tokenize(s)) out.push_back(t.text);
    return out;
}

std::vector<CodePiece> fake_pieces(std::size_t n) {
    std::vector<CodePiece> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back({i, i * 3, i * 3 + 2, "p" + std::to_string(i)});
    return out;
}

}  // namespace

TEST_CASE("tokenizer splits identifiers into lowercase subwords") {
    CHECK(token_texts("def read_image_file") == std::vector<std::string>{"def", "read", "image", "file"});
    CHECK(token_texts("HTMLParser.parseURL2Json()") ==
          std::vector<std::string>{"html", "parser", ".", "parse", "url2", "json", "(", ")"});
    CHECK(token_texts("x+=1") == std::vector<std::string>{"x", "+", "=", "1"});
    CHECK(tokenize("  \n\t").empty());
    CHECK(count_tokens("getTensorPatches(image)") == 6);
}

TEST_CASE("token offsets slice the source") {
    const std::string s = "camelCase snake_case\n  ALLCaps9x";
    for (const auto& t : tokenize(s)) {
        std::string piece = s.substr(t.start, t.end - t.start);
        std::transform(piece.begin(), piece.end(), piece.begin(), [](unsigned char c) { return std::tolower(c); });
        CHECK(piece == t.text);
    }
}

TEST_CASE("truncation keeps an exact token prefix") {
    std::mt19937_64 rng(11);
    const char alphabet[] = "aB_c9 (.)\nXyZ";
    for (int trial = 0; trial < 300; ++trial) {
        std::string s;
        const auto len = rng() % 80;
        for (std::size_t i = 0; i < len; ++i) s += alphabet[rng() % (sizeof alphabet - 1)];
        const auto all = tokenize(s);
        const std::size_t k = all.empty() ? 0 : rng() % (all.size() + 1);
        const auto prefix = tokenize(truncate_to_tokens(s, k));
        REQUIRE(prefix.size() == std::min(k, all.size()));
        for (std::size_t i = 0; i < prefix.size(); ++i) {
            CHECK(prefix[i].text == all[i].text);
            CHECK(prefix[i].end == all[i].end);
        }
    }
}

TEST_CASE("space split") {
    CHECK(texts(split({"s", "python", "def read_image_file"}, {SplitKind::kSpace})) ==
          std::vector<std::string>{"def", "read_image_file"});
}

TEST_CASE("line split drops blank lines and reports spans") {
    CHECK(texts(split({"s", "python", "x\n\ny"}, {SplitKind::kLine})) == std::vector<std::string>{"x", "y"});
    const std::string src = "a = 1\nb = 2\nc = 3";
    const auto pieces = split({"s", "python", src}, {SplitKind::kLine});
    REQUIRE(pieces.size() == 3);
    const std::pair<std::size_t, std::size_t> spans[] = {{0, 5}, {6, 11}, {12, 17}};
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(pieces[i].start == spans[i].first);
        CHECK(pieces[i].end == spans[i].second);
        CHECK(pieces[i].text == src.substr(spans[i].first, spans[i].second - spans[i].first));
    }
}

TEST_CASE("token split follows the tokenizer") {
    const auto pieces = split({"s", "python", "fooBar(x)"}, {SplitKind::kToken});
    CHECK(texts(pieces) == std::vector<std::string>{"foo", "Bar", "(", "x", ")"});
    SplitStrategy other{SplitKind::kToken, "bpe"};
    CHECK_THROWS_AS(split({"s", "python", "x"}, other), Error);
}

TEST_CASE("split errors") {
    try {
        split({"s", "python", "  \n "}, {SplitKind::kLine});
        FAIL("expected EmptySource");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kEmptySource);
    }
    try {
        split({"s", "cobol", "MOVE A TO B."}, {SplitKind::kAst});
        FAIL("expected UnsupportedLanguage");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kUnsupportedLanguage);
    }
}

TEST_CASE("pieces are ordered and non-overlapping for every strategy") {
    std::mt19937_64 rng(5);
    const char* words[] = {"if", "x", ":", "\n", "    ", "y = 2", "\n\n", "for", "(", ")", "\t"};
    for (int trial = 0; trial < 200; ++trial) {
        std::string s = "z";
        for (int i = 0; i < 30; ++i) s += words[rng() % std::size(words)];
        for (auto kind : {SplitKind::kSpace, SplitKind::kToken, SplitKind::kLine}) {
            const auto pieces = split({"s", "python", s}, {kind});
            REQUIRE(!pieces.empty());
            for (std::size_t i = 0; i < pieces.size(); ++i) {
                CHECK(pieces[i].index == i);
                CHECK(pieces[i].text == s.substr(pieces[i].start, pieces[i].end - pieces[i].start));
                if (i > 0) CHECK(pieces[i - 1].end <= pieces[i].start);
            }
            if (kind == SplitKind::kLine) {
                const auto check = oracle::check_partition({"s", "python", s}, pieces);
                CHECK(check.lossless);
            }
        }
    }
}

TEST_CASE("ast split marks def and if headers") {
    const SourceSnippet s{"f", "python", "def f():\n    if x:\n        return 1"};
    const auto pieces = ast_partition(s);
    CHECK(texts(pieces) == std::vector<std::string>{"def f():", "if x:", "return 1"});

    // Boundaries agree with the header nodes the parser reports.
    const auto tree = parse_source(Language::kPython, s.text);
    TSNode def = ts_node_named_child(tree.root(), 0);
    REQUIRE(std::string(ts_node_type(def)) == "function_definition");
    TSNode body = ts_node_child_by_field_name(def, "body", 4);
    TSNode iff = ts_node_named_child(body, 0);
    REQUIRE(std::string(ts_node_type(iff)) == "if_statement");
    TSNode cons = ts_node_child_by_field_name(iff, "consequence", 11);
    CHECK(pieces[0].start == ts_node_start_byte(def));
    CHECK(pieces[1].start == ts_node_start_byte(iff));
    CHECK(pieces[2].start == ts_node_start_byte(cons));
}

TEST_CASE("flat snippet stays one piece") {
    const auto pieces = ast_partition({"f", "python", "x = 1\ny = 2"});
    REQUIRE(pieces.size() == 1);
    CHECK(pieces[0].text == "x = 1\ny = 2");
}

TEST_CASE("ast split over braces languages") {
    const auto js = ast_partition({"j", "javascript", "function f(a) {\n  while (a) { a--; }\n  return a;\n}\n"});
    CHECK(texts(js) == std::vector<std::string>{"function f(a) {", "while (a) {", "a--; }\n  return a;\n}"});
    const auto go = ast_partition({"g", "go", "package p\n\nfunc F() {\n\tswitch {\n\tcase true:\n\t}\n}\n"});
    CHECK(go.front().text == "package p");
    CHECK(texts(go)[1] == "func F() {");
    CHECK(texts(go)[2] == "switch {");
}

TEST_CASE("ast partition is deterministic and lossless on the bundled corpus") {
    for (const auto& s : testing::ast_corpus(LCR_TEST_DATA_DIR "/ast_corpus")) {
        CAPTURE(s.id);
        const auto a = ast_partition(s);
        CHECK(a == ast_partition(s));
        const auto check = oracle::check_partition(s, a);
        CHECK(check.lossless);
        CHECK(check.misaligned == 0);
        CHECK_FALSE(check.has_error_nodes);
    }
}

TEST_CASE("unparseable input falls back to lines") {
    // Python gives this an error node as the root.
    const SourceSnippet s{"bad", "python", ";#"};
    CHECK_THROWS_AS(ast_partition(s), Error);
    const auto outcome = split_with_fallback(s, {SplitKind::kAst});
    CHECK(outcome.fell_back);
    CHECK(texts(outcome.pieces) == std::vector<std::string>{";#"});
    CHECK(!outcome.fallback_reason.empty());
    // Other failures are not swallowed.
    CHECK_THROWS_AS(split_with_fallback({"x", "cobol", "A"}, {SplitKind::kAst}), Error);
}

TEST_CASE("block count examples") {
    CHECK(block_count(7, {3, 2}) == 3);
    CHECK(block_count(5, {5, 2}) == 1);
    CHECK(block_count(8, {3, 2, TailPolicy::kIncludeTail}) == 4);
    CHECK(block_count(1, {32, 16}) == 1);
}

TEST_CASE("window examples") {
    const auto pieces = fake_pieces(7);
    const auto blocks = window(pieces, {3, 2});
    REQUIRE(blocks.size() == 3);
    CHECK(blocks[0].piece_begin == 0);
    CHECK(blocks[0].piece_end == 3);
    CHECK(blocks[1].piece_begin == 2);
    CHECK(blocks[2].piece_end == 7);
    CHECK(blocks[1].text == "p2\np3\np4");

    const auto one = window(fake_pieces(1), {32, 16});
    REQUIRE(one.size() == 1);
    CHECK(one[0].text == "p0");

    const auto tail = window(fake_pieces(8), {3, 2, TailPolicy::kIncludeTail});
    REQUIRE(tail.size() == 4);
    CHECK(tail[3].piece_begin == 6);
    CHECK(tail[3].piece_end == 8);
}

TEST_CASE("window config validation") {
    CHECK_THROWS_AS((WindowConfig{0, 1}.validate()), Error);
    CHECK_THROWS_AS((WindowConfig{3, 0}.validate()), Error);
    CHECK_THROWS_AS((WindowConfig{3, 4}.validate()), Error);
    CHECK_NOTHROW((WindowConfig{3, 3}.validate()));
}

TEST_CASE("window properties on random shapes") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng() % 60;
        const std::size_t w = 1 + rng() % 12;
        const std::size_t s = 1 + rng() % w;
        for (auto tail : {TailPolicy::kFloor, TailPolicy::kIncludeTail}) {
            const WindowConfig cfg{w, s, tail};
            const auto pieces = fake_pieces(n);
            const auto blocks = window(pieces, cfg);
            REQUIRE(blocks.size() == block_count(n, cfg));
            CHECK(blocks.size() == oracle::block_count(n, w, s, tail == TailPolicy::kIncludeTail));
            std::vector<int> covered(n, 0);
            for (std::size_t j = 0; j < blocks.size(); ++j) {
                CHECK(blocks[j].index == j);
                CHECK(blocks[j].piece_begin == (n < w ? 0 : j * s));
                for (auto i = blocks[j].piece_begin; i < blocks[j].piece_end; ++i) covered[i] = 1;
                if (tail == TailPolicy::kFloor && n >= w) {
                    CHECK(blocks[j].size() == w);
                    if (j > 0) CHECK(blocks[j - 1].piece_end - blocks[j].piece_begin == w - s);
                }
            }
            if (tail == TailPolicy::kIncludeTail) {
                CHECK(std::count(covered.begin(), covered.end(), 1) == static_cast<long>(n));
            }
        }
    }
}
