// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#include "doctest.h"
#include "lcr/error.hpp"
#include "lcr/eval.hpp"
#include "lcr/index.hpp"
#include "support.hpp"

using namespace lcr;

namespace {

std::vector<QueryRecord> with_lengths(const std::vector<std::size_t>& lengths) {
    std::vector<QueryRecord> out;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        out.push_back({"q" + std::to_string(i), "query", "gt" + std::to_string(i), lengths[i]});
    }
    return out;
}

// Scores fixed per query, for evaluate() without an encoder.
class TableRanker final : public Ranker {
public:
    TableRanker(std::vector<std::string> ids, std::map<std::string, std::vector<double>> scores)
        : ids_(std::move(ids)), scores_(std::move(scores)) {}
    const std::vector<std::string>& ids() const noexcept override { return ids_; }
    std::vector<double> scores(std::string_view query, std::string_view) const override {
        return scores_.at(std::string(query));
    }

private:
    std::vector<std::string> ids_;
    std::map<std::string, std::vector<double>> scores_;
};

}  // namespace

TEST_CASE("metric examples") {
    CHECK(mrr(std::vector<std::size_t>{1}) == 1.0);
    CHECK(mrr(std::vector<std::size_t>{1, 2, 4}) == doctest::Approx(0.5833333333333334));
    const std::vector<std::size_t> r{1, 6, 11};
    CHECK(recall_at_k(r, 5) == doctest::Approx(1.0 / 3));
    CHECK(recall_at_k(r, 100) == 1.0);
    CHECK_THROWS_AS(mrr({}), Error);
    CHECK_THROWS_AS(recall_at_k({}, 1), Error);
}

TEST_CASE("metrics agree with naive versions") {
    Rng rng(1);
    for (int t = 0; t < 300; ++t) {
        std::vector<std::size_t> ranks(1 + uniform_below(rng, 50));
        for (auto& x : ranks) x = 1 + uniform_below(rng, 200);
        CHECK(std::abs(mrr(ranks) - oracle::mrr(ranks)) <= 1e-12);
        double prev = 0;
        for (std::size_t k = 1; k <= 201; k += 10) {
            const double r = recall_at_k(ranks, k);
            CHECK(std::abs(r - oracle::recall(ranks, k)) <= 1e-12);
            CHECK(r >= prev);
            prev = r;
        }
        const double r1 = recall_at_k(ranks, 1);
        CHECK(mrr(ranks) >= r1);
        if (std::any_of(ranks.begin(), ranks.end(), [](auto x) { return x > 1; })) CHECK(mrr(ranks) > r1);
    }
}

TEST_CASE("bucket sizes") {
    std::vector<std::size_t> lengths(14918);
    Rng rng(2);
    for (auto& x : lengths) x = 129 + uniform_below(rng, 5000);
    const auto buckets = bucket_by_length(with_lengths(lengths));
    REQUIRE(buckets.size() == 5);
    const std::size_t want[] = {2984, 2984, 2984, 2983, 2983};
    for (int i = 0; i < 5; ++i) CHECK(buckets[i].members.size() == want[i]);

    const auto singles = bucket_by_length(with_lengths({50, 10, 40, 20, 30}));
    REQUIRE(singles.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        REQUIRE(singles[i].members.size() == 1);
        CHECK(singles[i].min_length == 10 * (i + 1));
        CHECK(singles[i].max_length == 10 * (i + 1) + 1);
    }
}

TEST_CASE("buckets are ordered by length") {
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        std::vector<std::size_t> lengths(1 + uniform_below(rng, 300));
        for (auto& x : lengths) x = uniform_below(rng, 100);
        const auto q = with_lengths(lengths);
        const auto buckets = bucket_by_length(q, 1 + uniform_below(rng, 7));
        std::size_t total = 0;
        for (std::size_t b = 0; b < buckets.size(); ++b) {
            total += buckets[b].members.size();
            for (auto m : buckets[b].members) {
                CHECK(q[m].token_length >= buckets[b].min_length);
                CHECK(q[m].token_length < buckets[b].max_length);
            }
            if (b > 0) {
                CHECK(buckets[b - 1].max_length - 1 <= buckets[b].min_length);
                CHECK(buckets[b - 1].members.size() >= buckets[b].members.size());
                CHECK(buckets[b - 1].members.size() - buckets[b].members.size() <= 1);
            }
        }
        CHECK(total == lengths.size());
    }
}

TEST_CASE("evaluate with perfect retrieval") {
    const HashEncoder enc(EncoderSpec{});
    CodeIndex idx(256, {});
    std::vector<QueryRecord> queries;
    const char* words[] = {"alpha", "bravo", "charlie", "delta", "echo"};
    for (std::size_t i = 0; i < 5; ++i) {
        idx.add(std::string("s") + words[i], enc.encode({"", words[i]}));
        queries.push_back({"q" + std::to_string(i), words[i], std::string("s") + words[i], 10 * i});
    }
    const auto report = evaluate(DenseRanker(idx, enc), queries, 5, "dense");
    CHECK(report.mrr == 1.0);
    for (double r : report.recall) CHECK(r == 1.0);
    CHECK(report.queries == 5);
    CHECK(report.label == "dense");
    const auto j = report.to_json();
    CHECK(j["mrr"] == 1.0);
    CHECK(j["buckets"].size() == 5);
}

TEST_CASE("evaluate ranks by score then id") {
    // The ground truth "m" ties with "a" and "z"; only "a" sorts before it.
    const TableRanker ranker({"z", "m", "a", "top"}, {{"q", {0.1, 0.1, 0.1, 0.9}}});
    const std::vector<QueryRecord> queries{{"q", "q", "m", 10}};
    const auto report = evaluate(ranker, queries);
    REQUIRE(report.ranks.size() == 1);
    CHECK(report.ranks[0] == 3);
    CHECK(report.mrr == doctest::Approx(1.0 / 3));
    CHECK(report.recall[0] == 0.0);
    CHECK(report.recall[1] == 1.0);

    const std::vector<QueryRecord> missing{{"q", "q", "nope", 10}};
    try {
        evaluate(ranker, missing);
        FAIL("expected MissingGroundTruth");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kMissingGroundTruth);
        CHECK(std::string(e.what()).find("nope") != std::string::npos);
    }
}

TEST_CASE("evaluate with no shared tokens falls back to the tie order") {
    const HashEncoder enc(EncoderSpec{});
    CodeIndex idx(256, {});
    idx.add("b", enc.encode({"", "one two"}));
    idx.add("a", enc.encode({"", "three four"}));
    idx.add("c", enc.encode({"", "five six"}));
    // Neither word occurs anywhere, so unless buckets collide every score is 0.
    const std::vector<QueryRecord> q{{"x", "seven", "c", 1}, {"y", "seven", "a", 1}};
    const DenseRanker ranker(idx, enc);
    const auto scores = ranker.scores("seven", "x");
    std::vector<std::size_t> want;
    for (const auto& rec : q) {
        const auto target = static_cast<std::size_t>(
            std::find(ranker.ids().begin(), ranker.ids().end(), rec.ground_truth) - ranker.ids().begin());
        std::size_t rank = 1;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            if (scores[i] > scores[target] || (scores[i] == scores[target] && ranker.ids()[i] < rec.ground_truth)) ++rank;
        }
        want.push_back(rank);
    }
    const auto report = evaluate(ranker, q);
    CHECK(report.ranks == want);
    CHECK(report.mrr == doctest::Approx(oracle::mrr(want)));
}

TEST_CASE("rendered table") {
    EvalReport r;
    r.label = "multi-block";
    r.queries = 2;
    r.mrr = 0.75;
    r.recall = {0.5, 1, 1, 1};
    r.buckets = {{10, 20, 1, 1.0}, {20, 31, 1, 0.5}};
    const std::vector<EvalReport> reports{r};
    const auto table = render_table(reports);
    CHECK(table.find("multi-block") != std::string::npos);
    CHECK(table.find("10-19") != std::string::npos);
    CHECK(table.find("Overall") != std::string::npos);
    CHECK(table.find("50.0") != std::string::npos);
}
