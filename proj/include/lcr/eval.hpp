// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "lcr/index.hpp"

namespace lcr {

struct QueryRecord {
    std::string id;              // embedding-table key of the query
    std::string query;
    std::string ground_truth;    // snippet id
    std::size_t token_length = 0;  // of the ground-truth code
};

/// Mean reciprocal rank. Throws EmptyInput; ranks must be >= 1.
double mrr(std::span<const std::size_t> ranks);
/// Fraction of ranks <= k. Throws EmptyInput.
double recall_at_k(std::span<const std::size_t> ranks, std::size_t k);

struct LengthBucket {
    std::size_t min_length = 0;
    std::size_t max_length = 0;  // exclusive: largest length + 1
    std::vector<std::size_t> members;  // indices into the query list
};

/// Sorts by token length (stable) and cuts n_buckets groups whose sizes
/// differ by at most one, larger groups first. With fewer queries than
/// buckets only non-empty groups are returned.
std::vector<LengthBucket> bucket_by_length(std::span<const QueryRecord> queries, std::size_t n_buckets = 5);

inline constexpr std::array<std::size_t, 4> kRecallCutoffs = {1, 5, 10, 100};

struct BucketReport {
    std::size_t min_length = 0;
    std::size_t max_length = 0;
    std::size_t queries = 0;
    double mrr = 0.0;
};

struct EvalReport {
    std::string label;
    std::size_t queries = 0;
    double mrr = 0.0;
    std::array<double, 4> recall{};  // at kRecallCutoffs
    std::vector<BucketReport> buckets;
    std::vector<std::size_t> ranks;  // per query, input order

    nlohmann::ordered_json to_json() const;
};

/// Ranks every query against the whole candidate pool. Throws
/// MissingGroundTruth when a ground-truth id is not a candidate.
EvalReport evaluate(const Ranker& ranker, std::span<const QueryRecord> queries, std::size_t n_buckets = 5,
                    std::string label = {});

/// One row per length bucket with the MRR of every report, then overall
/// MRR and R@k rows in percent. Reports must share one query list.
std::string render_table(std::span<const EvalReport> reports);

}  // namespace lcr
