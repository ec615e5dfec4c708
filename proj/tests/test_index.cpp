// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#include <cstring>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "lcr/error.hpp"
#include "lcr/index.hpp"
#include "lcr/tokenizer.hpp"
#include "support.hpp"

using namespace lcr;

namespace {

struct Fixture {
    PipelineConfig config;
    HashEncoder encoder{EncoderSpec{}};
    FusionParams params = FusionParams::zeros(FusionMethod::kAttn1Mean, 256);
    GrammarRegistry grammars;

    Pipeline pipeline() const { return {config, encoder, params, grammars}; }
};

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::kIoError;
}

const std::vector<SourceSnippet> kToy{
    {"a", "python", "def load_image(path):\n    return read(path)\n"},
    {"b", "python", "def save_model(model, path):\n    model.save(path)\n"},
    {"c", "javascript", "function parseQuery(s) {\n  return s.split('&');\n}\n"},
};

std::vector<SourceSnippet> random_corpus(Rng& rng, std::size_t n) {
    const char* words[] = {"alpha", "beta", "gamma", "delta", "eps", "zeta", "eta", "theta", "iota", "kappa"};
    std::vector<SourceSnippet> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::string code;
        const auto len = 3 + uniform_below(rng, 20);
        for (std::size_t t = 0; t < len; ++t) code += std::string(words[uniform_below(rng, 10)]) + " ";
        char id[16];
        std::snprintf(id, sizeof id, "doc%02zu", i);
        out.push_back({id, "python", code});
    }
    return out;
}

}  // namespace

TEST_CASE("build a toy index") {
    Fixture fx;
    const auto built = build_index(kToy, fx.pipeline(), 2);
    CHECK(built.index.size() == 3);
    CHECK(built.skipped.empty());
    CHECK(built.index.dim() == 256);
    const auto& fp = built.index.fingerprint();
    CHECK(fp["mode"] == "multi-block");
    CHECK(fp["split"] == "ast");
    CHECK(fp["window"] == 32);
    CHECK(fp["step"] == 16);
    CHECK(fp["fusion"] == "attn1+mean");
    CHECK(fp["encoder"]["kind"] == "builtin_hash");
    CHECK(fp["params"] == fx.params.digest());
    CHECK(fp == fx.pipeline().fingerprint());

    // Entries equal the per-snippet pipeline, stored as float32.
    for (const auto& s : kToy) {
        const auto sb = prepare_blocks(s, fx.pipeline());
        std::vector<Embedding> embs;
        for (const auto& b : sb.blocks) embs.push_back(encode_block(b, s.id, fx.encoder));
        const auto rep = fuse(embs, fx.params);
        const auto* e = built.index.find(s.id);
        REQUIRE(e != nullptr);
        for (std::size_t d = 0; d < rep.size(); ++d) CHECK(e->vector[d] == static_cast<float>(rep[d]));
    }
}

TEST_CASE("fingerprint tracks the configuration") {
    Fixture fx;
    const auto base = fx.pipeline().fingerprint();
    CHECK_FALSE(base.contains("tokenizer"));
    fx.config.split.kind = SplitKind::kToken;
    CHECK(fx.pipeline().fingerprint()["tokenizer"] == "subword-v1");
    CHECK_FALSE(fx.pipeline().fingerprint().contains("grammar"));
    fx.config.split.kind = SplitKind::kLine;
    CHECK(fx.pipeline().fingerprint() != base);
    fx.config.mode = IndexMode::kTruncate;
    const auto trunc = fx.pipeline().fingerprint();
    CHECK(trunc["limit"] == 256);
    CHECK_FALSE(trunc.contains("split"));
}

TEST_CASE("failed snippets are skipped, all failing is an error") {
    Fixture fx;
    std::vector<SourceSnippet> corpus = kToy;
    corpus.push_back({"empty", "python", "  "});
    const auto built = build_index(corpus, fx.pipeline(), 8);
    CHECK(built.index.size() == 3);
    REQUIRE(built.skipped.size() == 1);
    CHECK(built.skipped[0].id == "empty");
    CHECK(built.skipped[0].error == ErrorCode::kEmptySource);

    const std::vector<SourceSnippet> bad{{"x", "cobol", "A"}, {"y", "python", "\n"}};
    CHECK(code_of([&] { build_index(bad, fx.pipeline(), 8); }) == ErrorCode::kAllSnippetsFailed);
}

TEST_CASE("index file round trip is byte stable") {
    Fixture fx;
    const auto a = build_index(kToy, fx.pipeline(), 1).index;
    const auto b = build_index(kToy, fx.pipeline(), 64).index;
    std::stringstream sa, sb;
    write_index(a, sa);
    write_index(b, sb);
    CHECK(sa.str() == sb.str());
    CHECK(sa.str().substr(0, 8) == "LCRINDEX");
    CHECK(read_index(sa) == a);

    testing::TempDir dir;
    save_index(a, dir / "x.idx");
    CHECK(load_index(dir / "x.idx") == a);
    CHECK(code_of([&] { load_index(dir / "missing.idx"); }) == ErrorCode::kFileNotFound);

    std::string bytes = testing::slurp(dir / "x.idx");
    std::istringstream truncated(bytes.substr(0, bytes.size() - 3));
    CHECK(code_of([&] { read_index(truncated); }) == ErrorCode::kMalformedFile);
    std::istringstream wrong_magic("NOTINDEX" + bytes.substr(8));
    CHECK(code_of([&] { read_index(wrong_magic); }) == ErrorCode::kMalformedFile);
}

TEST_CASE("index invariants") {
    CodeIndex idx(2, {});
    idx.add("a", std::vector<double>{1, 0});
    CHECK(code_of([&] { idx.add("a", std::vector<double>{0, 1}); }) == ErrorCode::kInvalidConfig);
    CHECK(code_of([&] { idx.add("b", std::vector<double>{0, 1, 2}); }) == ErrorCode::kDimMismatch);
}

TEST_CASE("search ranks an exact token match first") {
    Fixture fx;
    std::vector<SourceSnippet> corpus = kToy;
    corpus.push_back({"d", "python", "read image file"});
    const auto idx = build_index(corpus, fx.pipeline(), 4).index;
    const auto r = search(idx, "read image file", fx.pipeline(), 2);
    REQUIRE(r.hits.size() == 2);
    CHECK(r.hits[0].id == "d");
    CHECK(std::abs(r.hits[0].score - 1.0) < 1e-6);  // float32 storage
    CHECK(search(idx, "read image file", fx.pipeline(), 100).hits.size() == 4);
}

TEST_CASE("search rejects a mismatched configuration") {
    Fixture fx;
    const auto idx = build_index(kToy, fx.pipeline(), 4).index;
    fx.config.window.window = 16;
    fx.config.window.step = 8;
    try {
        search(idx, "load image", fx.pipeline(), 3);
        FAIL("expected FingerprintMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kFingerprintMismatch);
        CHECK(std::string(e.what()).find("window") != std::string::npos);
    }
}

TEST_CASE("ranking equals a brute-force cosine sort") {
    Fixture fx;
    Rng rng(1);
    const auto corpus = random_corpus(rng, 20);
    const auto idx = build_index(corpus, fx.pipeline(), 7).index;
    for (const std::string q : {"alpha beta", "gamma gamma kappa", "iota", "theta zeta eta"}) {
        const auto qe = encode_query(q, fx.encoder);
        std::vector<std::pair<double, std::string>> want;
        for (const auto& e : idx.entries()) {
            std::vector<double> v(e.vector.begin(), e.vector.end());
            want.push_back({-oracle::cosine(qe, v), e.id});
        }
        std::sort(want.begin(), want.end());
        const auto got = search(idx, q, fx.pipeline(), 20).hits;
        REQUIRE(got.size() == 20);
        for (std::size_t i = 0; i < 20; ++i) {
            CHECK(got[i].id == want[i].second);
            CHECK(got[i].score == doctest::Approx(-want[i].first).epsilon(1e-9));
        }
    }
}

TEST_CASE("scaling every entry leaves the ranking unchanged") {
    Fixture fx;
    Rng rng(2);
    const auto corpus = random_corpus(rng, 15);
    const auto idx = build_index(corpus, fx.pipeline(), 4).index;
    CodeIndex scaled(idx.dim(), idx.fingerprint());
    for (const auto& e : idx.entries()) {
        std::vector<double> v;
        for (float x : e.vector) v.push_back(3.0 * x);
        scaled.add(e.id, v);
    }
    const auto a = search(idx, "beta delta", fx.pipeline(), 15).hits;
    const auto b = search(scaled, "beta delta", fx.pipeline(), 15).hits;
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].id == b[i].id);
}

TEST_CASE("ties break by ascending id") {
    const std::vector<std::string> ids{"c", "a", "b", "d"};
    const std::vector<double> scores{0.5, 0.5, 0.9, 0.5};
    const auto hits = top_k(ids, scores, 4);
    CHECK(hits[0].id == "b");
    CHECK(hits[1].id == "a");
    CHECK(hits[2].id == "c");
    CHECK(hits[3].id == "d");
    CHECK(rank_of(ids, scores, 0) == 3);
    CHECK(rank_of(ids, scores, 1) == 2);
    CHECK(rank_of(ids, scores, 2) == 1);
}

TEST_CASE("euclidean similarity") {
    CodeIndex idx(2, {});
    idx.add("near", std::vector<double>{1, 0});
    idx.add("far", std::vector<double>{-3, 0});
    const auto s = score_entries(idx, std::vector<double>{1, 0}, Similarity::kEuclidean);
    CHECK(s[0] == 0.0);
    CHECK(s[1] == -4.0);
    CHECK(parse_similarity("euclidean") == Similarity::kEuclidean);
}

TEST_CASE("bm25 examples") {
    const std::vector<SourceSnippet> docs{{"a", "python", "foo bar"}, {"b", "python", "baz qux"}};
    const Bm25Index bm(docs);
    for (double s : bm.scores("absent")) CHECK(s == 0.0);
    const std::vector<SourceSnippet> single{{"only", "python", "load_image"}};
    CHECK(bm25_search(single, "image", 5).hits[0].id == "only");
    CHECK(bm.idf("foo") == doctest::Approx(std::log(1.0 + 1.5 / 1.5)));
}

TEST_CASE("bm25 matches a reference computation") {
    Rng rng(3);
    const auto corpus = random_corpus(rng, 10);
    std::vector<std::vector<std::string>> docs;
    for (const auto& s : corpus) {
        std::vector<std::string> toks;
        for (auto& t : tokenize(s.text)) toks.push_back(t.text);
        docs.push_back(toks);
    }
    const Bm25Index bm(corpus);
    for (const std::string q : {"alpha", "beta beta gamma", "kappa theta iota eps", "nothing here"}) {
        std::vector<std::string> qt;
        for (auto& t : tokenize(q)) qt.push_back(t.text);
        const auto want = oracle::bm25(docs, qt);
        const auto got = bm.scores(q);
        for (std::size_t i = 0; i < want.size(); ++i) CHECK(std::abs(got[i] - want[i]) < 1e-9);
    }
}

TEST_CASE("bm25 sees past any truncation point") {
    std::string code;
    for (int i = 0; i < 600; ++i) code += "filler" + std::to_string(i % 7) + " ";
    code += "needle";
    const std::vector<SourceSnippet> corpus{{"long", "python", code}, {"short", "python", "filler1 filler2"}};
    CHECK(bm25_search(corpus, "needle", 2).hits[0].id == "long");
}
