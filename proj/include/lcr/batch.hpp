// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lcr/encoder.hpp"
#include "lcr/error.hpp"
#include "lcr/pipeline.hpp"
#include "lcr/split.hpp"
#include "lcr/window.hpp"

namespace lcr {

/// Code i owns flat blocks [ranges[i].first, ranges[i].second).
struct CodeIndexMap {
    std::vector<std::pair<std::size_t, std::size_t>> ranges;

    std::size_t size() const noexcept { return ranges.size(); }
    std::size_t total() const noexcept { return ranges.empty() ? 0 : ranges.back().second; }
};

struct SnippetBlocks {
    std::string id;
    std::vector<CodeBlock> blocks;
};

struct CombinedBatch {
    std::vector<CodeBlock> blocks;
    CodeIndexMap map;
};

/// Concatenates the block lists in order. Throws EmptyBatch when the batch or
/// any of its block lists is empty.
CombinedBatch combine(std::span<const SnippetBlocks> batch);

/// Regroups a flat list by the map. Throws LengthMismatch.
template <typename T>
std::vector<std::vector<T>> divide(std::vector<T> flat, const CodeIndexMap& map) {
    if (flat.size() != map.total()) {
        throw Error(ErrorCode::kLengthMismatch, "divide got " + std::to_string(flat.size()) +
                                                    " items for a map of " +
                                                    std::to_string(map.total()));
    }
    std::vector<std::vector<T>> groups;
    groups.reserve(map.size());
    for (const auto& [lo, hi] : map.ranges) {
        groups.emplace_back(std::make_move_iterator(flat.begin() + static_cast<std::ptrdiff_t>(lo)),
                            std::make_move_iterator(flat.begin() + static_cast<std::ptrdiff_t>(hi)));
    }
    return groups;
}

/// Per-snippet outcome of encode_corpus.
struct SnippetResult {
    std::string id;
    std::optional<Embedding> representation;
    ErrorCode error = ErrorCode::kEmptySource;
    std::string message;
    std::size_t pieces = 0;
    std::size_t blocks = 0;
    std::size_t dropped_blocks = 0;  // blocks the encoder mapped to zero
    bool fell_back = false;          // AST parse failed, lines were used

    bool ok() const noexcept { return representation.has_value(); }
};

/// Called after each batch with (snippets done, total).
using ProgressFn = std::function<void(std::size_t, std::size_t)>;

/// Runs split, window, encode and fuse over the corpus, batch_size snippets
/// at a time with one encode_batch call per batch. The output follows corpus
/// order and does not depend on batch_size. Failures are reported per snippet.
std::vector<SnippetResult> encode_corpus(std::span<const SourceSnippet> corpus, const Pipeline& pipeline,
                                         std::size_t batch_size, const ProgressFn& progress = {});

/// Blocks for one snippet under the pipeline's split and window settings,
/// or the single truncated block in truncate mode.
SnippetBlocks prepare_blocks(const SourceSnippet& snippet, const Pipeline& pipeline,
                             bool* fell_back = nullptr, std::size_t* piece_count = nullptr);

}  // namespace lcr
