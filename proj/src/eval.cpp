// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#include "lcr/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <unordered_map>

#include "lcr/parallel.hpp"

namespace lcr {

namespace {

std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.insert(0, width - s.size(), ' ');
    return s;
}

}  // namespace

double mrr(std::span<const std::size_t> ranks) {
    if (ranks.empty()) {
        throw Error(ErrorCode::kEmptyInput, "mrr of an empty rank list");
    }
    double sum = 0.0;
    for (std::size_t r : ranks) {
        if (r == 0) {
            throw Error(ErrorCode::kInvalidConfig, "ranks are 1-based");
        }
        sum += 1.0 / static_cast<double>(r);
    }
    return sum / static_cast<double>(ranks.size());
}

double recall_at_k(std::span<const std::size_t> ranks, std::size_t k) {
    if (ranks.empty()) {
        throw Error(ErrorCode::kEmptyInput, "recall of an empty rank list");
    }
    const auto hits = std::count_if(ranks.begin(), ranks.end(), [k](std::size_t r) { return r <= k; });
    return static_cast<double>(hits) / static_cast<double>(ranks.size());
}

std::vector<LengthBucket> bucket_by_length(std::span<const QueryRecord> queries, std::size_t n_buckets) {
    if (n_buckets == 0) {
        throw Error(ErrorCode::kInvalidConfig, "need at least one bucket");
    }
    std::vector<std::size_t> order(queries.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return queries[a].token_length < queries[b].token_length;
    });
    const std::size_t base = queries.size() / n_buckets;
    const std::size_t extra = queries.size() % n_buckets;
    std::vector<LengthBucket> buckets;
    std::size_t pos = 0;
    for (std::size_t b = 0; b < n_buckets; ++b) {
        const std::size_t size = base + (b < extra ? 1 : 0);
        if (size == 0) continue;
        LengthBucket bucket;
        bucket.members.assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                              order.begin() + static_cast<std::ptrdiff_t>(pos + size));
        bucket.min_length = queries[bucket.members.front()].token_length;
        bucket.max_length = queries[bucket.members.back()].token_length + 1;
        buckets.push_back(std::move(bucket));
        pos += size;
    }
    return buckets;
}

nlohmann::ordered_json EvalReport::to_json() const {
    nlohmann::ordered_json j;
    if (!label.empty()) j["label"] = label;
    j["queries"] = queries;
    j["mrr"] = mrr;
    nlohmann::ordered_json rec;
    for (std::size_t i = 0; i < kRecallCutoffs.size(); ++i) {
        rec["R@" + std::to_string(kRecallCutoffs[i])] = recall[i];
    }
    j["recall"] = rec;
    nlohmann::ordered_json bs = nlohmann::ordered_json::array();
    for (const auto& b : buckets) {
        bs.push_back({{"min_length", b.min_length},
                      {"max_length", b.max_length},
                      {"queries", b.queries},
                      {"mrr", b.mrr}});
    }
    j["buckets"] = bs;
    return j;
}

EvalReport evaluate(const Ranker& ranker, std::span<const QueryRecord> queries, std::size_t n_buckets,
                    std::string label) {
    if (queries.empty()) {
        throw Error(ErrorCode::kEmptyInput, "no queries to evaluate");
    }
    const auto& ids = ranker.ids();
    std::unordered_map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < ids.size(); ++i) position.emplace(ids[i], i);
    std::vector<std::size_t> targets(queries.size());
    for (std::size_t q = 0; q < queries.size(); ++q) {
        const auto it = position.find(queries[q].ground_truth);
        if (it == position.end()) {
            throw Error(ErrorCode::kMissingGroundTruth,
                        "ground truth '" + queries[q].ground_truth + "' is not in the candidate pool");
        }
        targets[q] = it->second;
    }

    EvalReport report;
    report.label = std::move(label);
    report.queries = queries.size();
    report.ranks.assign(queries.size(), 0);
    parallel_for(queries.size(), [&](std::size_t q) {
        const auto scores = ranker.scores(queries[q].query, queries[q].id);
        report.ranks[q] = rank_of(ids, scores, targets[q]);
    });

    report.mrr = mrr(report.ranks);
    for (std::size_t i = 0; i < kRecallCutoffs.size(); ++i) {
        report.recall[i] = recall_at_k(report.ranks, kRecallCutoffs[i]);
    }
    for (const auto& b : bucket_by_length(queries, n_buckets)) {
        std::vector<std::size_t> r;
        r.reserve(b.members.size());
        for (std::size_t m : b.members) r.push_back(report.ranks[m]);
        report.buckets.push_back({b.min_length, b.max_length, r.size(), mrr(r)});
    }
    return report;
}

std::string render_table(std::span<const EvalReport> reports) {
    if (reports.empty()) return {};
    constexpr std::size_t kRange = 14;
    constexpr std::size_t kCount = 10;
    constexpr std::size_t kCol = 14;
    std::string out = pad("Token length", kRange) + pad("#Queries", kCount);
    for (const auto& r : reports) {
        out += pad(r.label.empty() ? "MRR" : r.label.substr(0, kCol - 1), kCol);
    }
    out += '\n';
    const auto& first = reports.front();
    for (std::size_t b = 0; b < first.buckets.size(); ++b) {
        const auto& bucket = first.buckets[b];
        out += pad(std::to_string(bucket.min_length) + "-" + std::to_string(bucket.max_length - 1), kRange);
        out += pad(std::to_string(bucket.queries), kCount);
        for (const auto& r : reports) {
            out += pad(b < r.buckets.size() ? format_fixed(r.buckets[b].mrr, 3) : "-", kCol);
        }
        out += '\n';
    }
    out += pad("Overall", kRange) + pad(std::to_string(first.queries), kCount);
    for (const auto& r : reports) out += pad(format_fixed(r.mrr, 3), kCol);
    out += '\n';
    for (std::size_t i = 0; i < kRecallCutoffs.size(); ++i) {
        out += pad("R@" + std::to_string(kRecallCutoffs[i]) + " (%)", kRange) + pad("", kCount);
        for (const auto& r : reports) out += pad(format_fixed(100.0 * r.recall[i], 1), kCol);
        out += '\n';
    }
    return out;
}

}  // namespace lcr
