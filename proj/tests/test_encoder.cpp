// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "lcr/encoder.hpp"
#include "lcr/error.hpp"
#include "lcr/hash.hpp"
#include "lcr/tokenizer.hpp"
#include "lcr/window.hpp"
#include "support.hpp"

using namespace lcr;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::kIoError;
}

EncoderSpec raw_spec(std::size_t dim) {
    EncoderSpec s;
    s.dim = dim;
    s.normalization = Normalization::kNone;
    return s;
}

}  // namespace

TEST_CASE("hash functions agree with a second implementation") {
    for (const std::string t : {"read", "image", "file", "tensor", "", "x", "patches"}) {
        CHECK(fnv1a64(t) == oracle::fnv(t, 0xcbf29ce484222325ULL));
        CHECK(HashEncoder::bucket(t, 8) == oracle::fnv(t, 0xcbf29ce484222325ULL) % 8);
        CHECK(HashEncoder::sign(t) == ((oracle::fnv(t, 0x84222325cbf29ce4ULL) >> 63) ? -1.0 : 1.0));
    }
    CHECK(hex64(0xabcULL) == "0000000000000abc");
}

TEST_CASE("signed bucket counts for a tiny vocabulary") {
    const HashEncoder enc(raw_spec(8));
    // read -> +1 in bucket 5, image -> -1 in bucket 2, file -> -1 in bucket 3.
    const Embedding expect{0, 0, -1, -1, 0, 1, 0, 0};
    CHECK(enc.raw("read image file") == expect);
    CHECK(enc.encode({"q", "read_image_file"}) == expect);

    const HashEncoder l2(EncoderSpec{});
    const auto e = l2.encode({"", "read image file"});
    CHECK(std::abs(l2_norm(e) - 1.0) < 1e-9);
}

TEST_CASE("hashing is additive") {
    const HashEncoder enc(raw_spec(64));
    const auto once = enc.raw("x = tensor");
    const auto twice = enc.raw("x = tensor tensor");
    const auto single = enc.raw("tensor");
    for (std::size_t i = 0; i < once.size(); ++i) {
        CHECK(twice[i] == once[i] + single[i]);
    }
    const auto t1 = enc.raw("tensor");
    const auto t2 = enc.raw("tensor tensor");
    for (std::size_t i = 0; i < t1.size(); ++i) CHECK(t2[i] == 2 * t1[i]);
}

TEST_CASE("encoding is deterministic and unit norm") {
    const HashEncoder enc(EncoderSpec{});
    for (const std::string s : {"def f(x): return x", "getUserName()", "a", "!!"}) {
        const auto a = enc.encode({"", s});
        const auto b = enc.encode({"", s});
        CHECK(a == b);
        CHECK(std::abs(l2_norm(a) - 1.0) < 1e-9);
    }
}

TEST_CASE("query encoding") {
    const HashEncoder enc(EncoderSpec{});
    const CodeBlock block{0, 0, 1, "read image file"};
    CHECK(std::abs(cosine(encode_query("read image file", enc), encode_block(block, "s", enc)) - 1.0) < 1e-12);

    std::string long_query;
    for (int i = 0; i < 200; ++i) long_query += "w" + std::to_string(i) + " ";
    std::string first;
    for (int i = 0; i < 128; ++i) first += "w" + std::to_string(i) + " ";
    CHECK(encode_query(long_query, enc) == encode_query(first, enc));

    CHECK(code_of([&] { encode_query("   ", enc); }) == ErrorCode::kZeroVector);
}

TEST_CASE("block ids") {
    CHECK(block_id("snip", 3) == "snip#3");
}

TEST_CASE("encoder spec validation") {
    EncoderSpec s;
    s.dim = 1;
    CHECK(code_of([&] { s.validate(); }) == ErrorCode::kInvalidConfig);
    EncoderSpec t;
    t.tokenizer = "bpe";
    CHECK_THROWS_AS(t.validate(), Error);
}

TEST_CASE("embedding table format") {
    std::istringstream in("dim=3 count=2\na#0\t1 2 3\nq1\t0.5 -0.25 1e-3\n");
    const auto table = read_embedding_table(in);
    CHECK(table.dim() == 3);
    CHECK(table.size() == 2);
    REQUIRE(table.find("q1") != nullptr);
    CHECK(*table.find("q1") == Embedding{0.5, -0.25, 1e-3});
    CHECK(table.find("zz") == nullptr);

    std::string big = "dim=768 count=5\n";
    for (int r = 0; r < 5; ++r) {
        big += "row" + std::to_string(r) + "\t";
        for (int d = 0; d < 768; ++d) big += (d ? " " : "") + std::to_string(d * 0.001);
        big += "\n";
    }
    std::istringstream big_in(big);
    const auto t768 = read_embedding_table(big_in);
    CHECK(t768.dim() == 768);
    CHECK(t768.size() == 5);
}

TEST_CASE("embedding table errors") {
    try {
        std::istringstream in("dim=3 count=1\nbad#1\t1 2\n");
        read_embedding_table(in);
        FAIL("expected DimMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kDimMismatch);
        CHECK(std::string(e.what()).find("bad#1") != std::string::npos);
    }
    for (const char* text : {"dims=3\n", "dim=3 count=2\na\t1 2 3\n", "dim=2 count=1\na\t1 x\n",
                             "dim=2 count=2\na\t1 2\na\t3 4\n", ""}) {
        CAPTURE(text);
        std::istringstream in(text);
        CHECK(code_of([&] { read_embedding_table(in); }) == ErrorCode::kMalformedFile);
    }
    CHECK(code_of([] { load_embedding_table("/nonexistent/table.tsv"); }) == ErrorCode::kFileNotFound);
}

TEST_CASE("embedding table round trip is exact") {
    std::mt19937_64 rng(9);
    EmbeddingTable t(5);
    for (int i = 0; i < 20; ++i) {
        Embedding v;
        for (int d = 0; d < 5; ++d) v.push_back(std::ldexp(static_cast<double>(rng() >> 11), -53) * 2 - 1);
        t.add("id" + std::to_string(i), v);
    }
    std::stringstream buf;
    write_embedding_table(t, buf);
    CHECK(read_embedding_table(buf) == t);
}

TEST_CASE("table encoder looks up ids, then content") {
    EmbeddingTable t(2);
    t.add("s#0", {1, 0});
    t.add(content_key("some code"), {0, 3});
    EncoderSpec spec;
    spec.kind = EncoderKind::kExternalTable;
    spec.normalization = Normalization::kNone;
    const TableEncoder enc(spec, t);
    CHECK(enc.dim() == 2);
    CHECK(enc.encode({"s#0", "whatever"}) == Embedding{1, 0});
    CHECK(enc.encode({"other#4", "some code"}) == Embedding{0, 3});
    CHECK(code_of([&] { enc.encode({"nope", "nothing"}); }) == ErrorCode::kMissingEmbedding);

    const std::vector<EncodeInput> batch{{"s#0", "x"}, {"nope", "y"}};
    const auto results = enc.encode_batch(batch);
    REQUIRE(results.size() == 2);
    CHECK(results[0].ok());
    CHECK_FALSE(results[1].ok());
    CHECK(results[1].error == ErrorCode::kMissingEmbedding);
}

TEST_CASE("make_encoder loads tables from disk") {
    testing::TempDir dir;
    testing::spit(dir.path() / "t.tsv", "dim=2 count=1\nq\t0.25 0.5\n");
    EncoderSpec spec;
    spec.kind = EncoderKind::kExternalTable;
    spec.table_path = dir / "t.tsv";
    spec.normalization = Normalization::kNone;
    const auto enc = make_encoder(spec);
    CHECK(enc->dim() == 2);
    CHECK(enc->encode({"q", ""}) == Embedding{0.25, 0.5});
    CHECK(make_encoder(EncoderSpec{})->dim() == 256);
}
