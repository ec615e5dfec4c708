// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lcr/batch.hpp"
#include "lcr/encoder.hpp"
#include "lcr/pipeline.hpp"

namespace lcr {

enum class Similarity { kCosine, kEuclidean };

std::string_view similarity_name(Similarity sim) noexcept;
std::optional<Similarity> parse_similarity(std::string_view name) noexcept;

struct IndexEntry {
    std::string id;
    std::vector<float> vector;

    bool operator==(const IndexEntry&) const = default;
};

class CodeIndex {
public:
    CodeIndex() = default;
    CodeIndex(std::size_t dim, nlohmann::ordered_json fingerprint)
        : dim_(dim), fingerprint_(std::move(fingerprint)) {}

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return entries_.size(); }
    const nlohmann::ordered_json& fingerprint() const noexcept { return fingerprint_; }
    const std::vector<IndexEntry>& entries() const noexcept { return entries_; }

    /// Throws DimMismatch or InvalidConfig (duplicate id).
    void add(std::string id, std::span<const double> vec);
    const IndexEntry* find(std::string_view id) const;

    /// Throws FingerprintMismatch listing the differing keys.
    void check_fingerprint(const nlohmann::ordered_json& expected) const;

    bool operator==(const CodeIndex& other) const;

private:
    std::size_t dim_ = 0;
    nlohmann::ordered_json fingerprint_;
    std::vector<IndexEntry> entries_;
    std::unordered_map<std::string, std::size_t> by_id_;
};

/// Layout: "LCRINDEX", u32 version, u32 dim, u64 count, u32 fingerprint
/// length, fingerprint JSON, then per entry u32 id length, id bytes and dim
/// float32 values. All integers and floats little-endian.
void write_index(const CodeIndex& index, std::ostream& out);
CodeIndex read_index(std::istream& in);
void save_index(const CodeIndex& index, const std::filesystem::path& path);
CodeIndex load_index(const std::filesystem::path& path);

struct SkippedSnippet {
    std::string id;
    ErrorCode error;
    std::string message;
};

struct BuildResult {
    CodeIndex index;
    std::vector<SkippedSnippet> skipped;
    std::size_t fell_back = 0;
    std::size_t dropped_blocks = 0;
};

/// One entry per snippet that made it through the pipeline.
/// Throws AllSnippetsFailed when none did.
BuildResult build_index(std::span<const SourceSnippet> corpus, const Pipeline& pipeline,
                        std::size_t batch_size, const ProgressFn& progress = {});

struct Hit {
    std::string id;
    double score = 0.0;
};

struct SearchResult {
    std::vector<Hit> hits;
    std::optional<std::size_t> ground_truth_rank;  // 1-based, over all candidates
};

/// Scores a text query against a fixed candidate list.
class Ranker {
public:
    virtual ~Ranker() = default;
    virtual const std::vector<std::string>& ids() const noexcept = 0;
    /// One score per candidate, aligned with ids(); higher is better.
    virtual std::vector<double> scores(std::string_view query, std::string_view query_id) const = 0;
};

/// Best k candidates by score, ties by ascending id.
std::vector<Hit> top_k(const std::vector<std::string>& ids, std::span<const double> scores, std::size_t k);

/// 1-based rank of candidate `target` under the same total order as top_k.
std::size_t rank_of(const std::vector<std::string>& ids, std::span<const double> scores, std::size_t target);

/// Similarity of a query embedding to every entry: cosine, or negated
/// Euclidean distance.
std::vector<double> score_entries(const CodeIndex& index, std::span<const double> query, Similarity sim);

/// Ranks index entries by similarity to the encoded query.
class DenseRanker final : public Ranker {
public:
    DenseRanker(const CodeIndex& index, const Encoder& encoder, Similarity sim = Similarity::kCosine);

    const std::vector<std::string>& ids() const noexcept override { return ids_; }
    std::vector<double> scores(std::string_view query, std::string_view query_id) const override;

private:
    const CodeIndex& index_;
    const Encoder& encoder_;
    Similarity sim_;
    std::vector<std::string> ids_;
};

/// Okapi BM25 over the full code text, tokenized with the subword tokenizer.
class Bm25Index final : public Ranker {
public:
    static constexpr double kK1 = 1.2;
    static constexpr double kB = 0.75;

    explicit Bm25Index(std::span<const SourceSnippet> corpus);

    const std::vector<std::string>& ids() const noexcept override { return ids_; }
    std::vector<double> scores(std::string_view query, std::string_view query_id = {}) const override;

    double idf(const std::string& term) const;

private:
    std::vector<std::string> ids_;
    std::vector<std::unordered_map<std::string, std::size_t>> tf_;
    std::vector<std::size_t> doc_len_;
    std::unordered_map<std::string, std::size_t> df_;
    double avg_len_ = 0.0;
};

SearchResult search(const Ranker& ranker, std::string_view query, std::size_t k,
                    std::string_view query_id = {});

/// Checks the fingerprint against the pipeline, then ranks by similarity.
SearchResult search(const CodeIndex& index, std::string_view query, const Pipeline& pipeline,
                    std::size_t k, Similarity sim = Similarity::kCosine);

SearchResult bm25_search(std::span<const SourceSnippet> corpus, std::string_view query, std::size_t k);

}  // namespace lcr
