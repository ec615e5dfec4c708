// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "lcr/cli.hpp"
#include "lcr/hash.hpp"
#include "support.hpp"

using namespace lcr;
using nlohmann::json;

namespace {

struct Run {
    int status = 0;
    std::string out;
    std::string err;

    json last_json() const {
        const auto nl = out.find_last_of('\n', out.size() - 2);
        return json::parse(out.substr(nl == std::string::npos ? 0 : nl + 1));
    }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Run r;
    r.status = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

}  // namespace

TEST_CASE("split prints pieces as json lines") {
    testing::TempDir dir;
    const std::string file = dir / "f.py";
    testing::spit(file, "def f():\n    if x:\n        return 1\n");
    const auto r = run({"split", "--strategy", "ast", file});
    REQUIRE(r.status == 0);
    std::istringstream lines(r.out);
    std::vector<json> pieces;
    for (std::string l; std::getline(lines, l);) pieces.push_back(json::parse(l));
    REQUIRE(pieces.size() == 3);
    CHECK(pieces[1]["text"] == "if x:");
    CHECK(pieces[1]["index"] == 1);
    CHECK(pieces[2]["start"] == 27);

    CHECK(run({"split", "--strategy", "line", file}).out.find("\"text\":\"        return 1\"") != std::string::npos);
    const auto missing = run({"split", dir / "nope.py"});
    CHECK(missing.status == 1);
    CHECK(json::parse(missing.out)["error"] == "FileNotFound");
    const auto unknown = run({"split", dir / "f.py", "--language", "cobol"});
    CHECK(json::parse(unknown.out)["error"] == "UnsupportedLanguage");
}

TEST_CASE("usage errors and help") {
    CHECK(run({}).status == 2);
    CHECK(run({"frobnicate"}).status == 2);
    CHECK(run({"index", "--corpus", "x"}).status == 2);
    CHECK(run({"index", "--corpus", "x", "--out", "y", "--fusion", "attn9"}).status == 2);
    CHECK(run({"index", "--corpus", "x", "--out", "y", "--window", "4", "--step", "8"}).status == 1);
    const auto help = run({"--help"});
    CHECK(help.status == 0);
    CHECK(help.out.find("gen-synthetic") != std::string::npos);
}

TEST_CASE("gen-synthetic is reproducible") {
    testing::TempDir dir;
    REQUIRE(run({"gen-synthetic", "--n", "500", "--seed", "7", "--out", dir / "a.jsonl"}).status == 0);
    const auto second = run({"gen-synthetic", "--n", "500", "--seed", "7", "--out", dir / "b.jsonl"});
    REQUIRE(second.status == 0);
    CHECK(second.last_json()["records"] == 500);
    CHECK(second.last_json()["late"] == 250);
    const auto a = testing::slurp(dir.path() / "a.jsonl");
    CHECK(fnv1a64(a) == fnv1a64(testing::slurp(dir.path() / "b.jsonl")));
    const auto to_stdout = run({"gen-synthetic", "--n", "500", "--seed", "7"});
    CHECK(to_stdout.out == a);
}

TEST_CASE("index, search and eval") {
    testing::TempDir dir;
    const std::string corpus = dir / "c.jsonl";
    REQUIRE(run({"gen-synthetic", "--n", "40", "--seed", "2", "--out", corpus}).status == 0);
    const auto idx = run({"index", "--corpus", corpus, "--out", dir / "c.idx", "--batch-size", "8"});
    REQUIRE(idx.status == 0);
    CHECK(idx.last_json()["indexed"] == 40);
    CHECK(idx.last_json()["fingerprint"]["window"] == 32);
    CHECK(idx.err.find("[index] 40/40") != std::string::npos);

    const auto first = json::parse(testing::slurp(corpus).substr(0, testing::slurp(corpus).find('\n')));
    const std::string query = first["query"];
    const auto hit = run({"search", "--index", dir / "c.idx", "--query", query, "--top-k", "3"});
    REQUIRE(hit.status == 0);
    const auto res = hit.last_json()["results"];
    REQUIRE(res.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(res[i]["rank"] == i + 1);
    CHECK(res[0]["score"].get<double>() >= res[1]["score"].get<double>());
    CHECK(res[1]["score"].get<double>() >= res[2]["score"].get<double>());
    CHECK(hit.last_json()["similarity"] == "cosine");

    const auto bm = run({"search", "--bm25", "--corpus", corpus, "--query", query});
    REQUIRE(bm.status == 0);
    CHECK(bm.last_json()["results"][0]["id"] == first["id"]);

    const auto mismatch =
        run({"search", "--index", dir / "c.idx", "--query", query, "--window", "16", "--step", "8"});
    CHECK(mismatch.status == 1);
    CHECK(mismatch.last_json()["error"] == "FingerprintMismatch");
    const auto other_split = run({"search", "--index", dir / "c.idx", "--query", query, "--split", "line"});
    CHECK(other_split.last_json()["error"] == "FingerprintMismatch");

    const auto ev = run({"eval", "--corpus", corpus, "--index", dir / "c.idx", "--baseline", "truncate,bm25"});
    REQUIRE(ev.status == 0);
    const auto report = ev.last_json();
    CHECK(report["queries"] == 40);
    REQUIRE(report["reports"].size() == 3);
    CHECK(report["reports"][0]["label"] == "multi-block");
    CHECK(report["reports"][1]["label"] == "truncate");
    CHECK(report["reports"][2]["label"] == "bm25");
    for (const auto& r : report["reports"]) {
        const auto& rec = r["recall"];
        CHECK(rec["R@1"].get<double>() <= rec["R@5"].get<double>());
        CHECK(rec["R@10"].get<double>() <= rec["R@100"].get<double>());
    }
    const auto table = run({"eval", "--corpus", corpus, "--format", "table", "--buckets", "2"});
    REQUIRE(table.status == 0);
    CHECK(table.out.find("Overall") != std::string::npos);
}

TEST_CASE("train-fusion writes params and a loss log") {
    testing::TempDir dir;
    const std::string corpus = dir / "c.jsonl";
    REQUIRE(run({"gen-synthetic", "--n", "30", "--seed", "4", "--out", corpus}).status == 0);
    const auto t = run({"train-fusion", "--corpus", corpus, "--out", dir / "f.params", "--epochs", "3",
                        "--batch-size", "8"});
    REQUIRE(t.status == 0);
    CHECK(t.last_json()["examples"] == 30);
    CHECK(t.last_json()["epoch_losses"].size() == 3);
    const auto csv = testing::slurp(dir.path() / "f.params.loss.csv");
    CHECK(csv.rfind("epoch,loss\n1,", 0) == 0);

    // The trained params feed index and search; a different digest is a mismatch.
    REQUIRE(run({"index", "--corpus", corpus, "--out", dir / "t.idx", "--params", dir / "f.params"}).status == 0);
    CHECK(run({"search", "--index", dir / "t.idx", "--query", "x", "--params", dir / "f.params"}).status == 0);
    CHECK(run({"search", "--index", dir / "t.idx", "--query", "x"}).last_json()["error"] == "FingerprintMismatch");
    const auto wrong = run({"index", "--corpus", corpus, "--out", dir / "u.idx", "--params", dir / "f.params",
                            "--fusion", "attn2+mean"});
    CHECK(wrong.last_json()["error"] == "InvalidConfig");
    CHECK(run({"train-fusion", "--corpus", corpus, "--out", dir / "m.params", "--fusion", "mean"}).status == 1);
}

TEST_CASE("external embedding tables drive the pipeline") {
    testing::TempDir dir;
    const std::string corpus = dir / "c.jsonl";
    testing::spit(corpus,
                  R"({"id":"a","language":"python","code":"x = 1","query":"first"})" "\n"
                  R"({"id":"b","language":"python","code":"y = 2","query":"second"})" "\n");
    testing::spit(dir.path() / "t.tsv", "dim=2 count=4\na#0\t1 0\nb#0\t0 1\na\t0.9 0.1\nb\t0 1\n");
    const std::string enc = "table:" + (dir / "t.tsv");
    REQUIRE(run({"index", "--corpus", corpus, "--out", dir / "t.idx", "--encoder", enc}).status == 0);
    const auto ev = run({"eval", "--corpus", corpus, "--index", dir / "t.idx", "--encoder", enc});
    REQUIRE(ev.status == 0);
    CHECK(ev.last_json()["reports"][0]["mrr"] == 1.0);
    testing::spit(dir.path() / "short.tsv", "dim=2 count=1\na#0\t1 0\n");
    const auto miss = run({"index", "--corpus", corpus, "--out", dir / "s.idx", "--encoder",
                           "table:" + (dir / "short.tsv")});
    REQUIRE(miss.status == 0);
    CHECK(miss.last_json()["indexed"] == 1);
    CHECK(miss.last_json()["skipped"][0]["error"] == "MissingEmbedding");
}

TEST_CASE("corpus problems surface as named errors") {
    testing::TempDir dir;
    const auto missing = run({"index", "--corpus", dir / "none.jsonl", "--out", dir / "x.idx"});
    CHECK(missing.last_json()["error"] == "FileNotFound");
    testing::spit(dir.path() / "bad.jsonl", "garbage\n");
    CHECK(run({"index", "--corpus", dir / "bad.jsonl", "--out", dir / "x.idx"}).last_json()["error"] ==
          "AllLinesMalformed");
    testing::spit(dir.path() / "partial.jsonl",
                  "garbage\n" R"({"id":"a","language":"python","code":"x = 1"})" "\n");
    const auto partial = run({"index", "--corpus", dir / "partial.jsonl", "--out", dir / "x.idx"});
    CHECK(partial.status == 0);
    CHECK(partial.err.find("skipped corpus line 1") != std::string::npos);
}
