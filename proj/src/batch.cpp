// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#include "lcr/batch.hpp"

#include <algorithm>

#include "lcr/parallel.hpp"
#include "lcr/tokenizer.hpp"

namespace lcr {

CombinedBatch combine(std::span<const SnippetBlocks> batch) {
    if (batch.empty()) {
        throw Error(ErrorCode::kEmptyBatch, "cannot combine an empty batch");
    }
    CombinedBatch out;
    out.map.ranges.reserve(batch.size());
    std::size_t lo = 0;
    for (const auto& code : batch) {
        if (code.blocks.empty()) {
            throw Error(ErrorCode::kEmptyBatch, "snippet '" + code.id + "' has no blocks");
        }
        out.blocks.insert(out.blocks.end(), code.blocks.begin(), code.blocks.end());
        out.map.ranges.emplace_back(lo, lo + code.blocks.size());
        lo += code.blocks.size();
    }
    return out;
}

SnippetBlocks prepare_blocks(const SourceSnippet& snippet, const Pipeline& pipeline, bool* fell_back,
                             std::size_t* piece_count) {
    SnippetBlocks out;
    out.id = snippet.id;
    if (pipeline.config.mode == IndexMode::kTruncate) {
        const std::string_view kept = truncate_to_tokens(snippet.text, kTruncationLimit);
        if (kept.find_first_not_of(" \t\r\n\f\v") == std::string_view::npos) {
            throw Error(ErrorCode::kEmptySource, "snippet '" + snippet.id + "' has no tokens");
        }
        CodeBlock b;
        b.piece_end = 1;
        b.text = std::string(kept);
        out.blocks.push_back(std::move(b));
        if (piece_count) *piece_count = 1;
        return out;
    }
    SplitOutcome split = split_with_fallback(snippet, pipeline.config.split, pipeline.grammars);
    if (fell_back) *fell_back = split.fell_back;
    if (piece_count) *piece_count = split.pieces.size();
    if (split.pieces.empty()) {
        throw Error(ErrorCode::kEmptySource, "snippet '" + snippet.id + "' produced no pieces");
    }
    out.blocks = window(split.pieces, pipeline.config.window);
    return out;
}

std::vector<SnippetResult> encode_corpus(std::span<const SourceSnippet> corpus, const Pipeline& pipeline,
                                         std::size_t batch_size, const ProgressFn& progress) {
    if (corpus.empty()) {
        throw Error(ErrorCode::kEmptyInput, "corpus is empty");
    }
    if (batch_size == 0) {
        throw Error(ErrorCode::kInvalidConfig, "batch size must be positive");
    }
    const bool truncate = pipeline.config.mode == IndexMode::kTruncate;
    std::vector<SnippetResult> results(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        results[i].id = corpus[i].id;
    }

    for (std::size_t start = 0; start < corpus.size(); start += batch_size) {
        const std::size_t n = std::min(batch_size, corpus.size() - start);

        std::vector<SnippetBlocks> prepared(n);
        std::vector<char> prepared_ok(n, 0);
        parallel_for(n, [&](std::size_t i) {
            SnippetResult& r = results[start + i];
            try {
                prepared[i] = prepare_blocks(corpus[start + i], pipeline, &r.fell_back, &r.pieces);
                r.blocks = prepared[i].blocks.size();
                prepared_ok[i] = 1;
            } catch (const Error& e) {
                r.error = e.code();
                r.message = e.what();
            }
        });

        std::vector<std::size_t> members;
        std::vector<SnippetBlocks> good;
        for (std::size_t i = 0; i < n; ++i) {
            if (prepared_ok[i]) {
                members.push_back(start + i);
                good.push_back(std::move(prepared[i]));
            }
        }
        if (!good.empty()) {
            const CombinedBatch combined = combine(good);
            std::vector<std::string> ids(combined.blocks.size());
            std::vector<EncodeInput> inputs(combined.blocks.size());
            for (std::size_t g = 0; g < good.size(); ++g) {
                const auto [lo, hi] = combined.map.ranges[g];
                for (std::size_t f = lo; f < hi; ++f) {
                    ids[f] = truncate ? good[g].id : block_id(good[g].id, combined.blocks[f].index);
                    inputs[f] = EncodeInput{ids[f], combined.blocks[f].text};
                }
            }
            auto groups = divide(pipeline.encoder.encode_batch(inputs), combined.map);

            parallel_for(good.size(), [&](std::size_t g) {
                SnippetResult& r = results[members[g]];
                std::vector<Embedding> embs;
                embs.reserve(groups[g].size());
                for (auto& er : groups[g]) {
                    if (er.ok()) {
                        embs.push_back(std::move(*er.embedding));
                    } else if (er.error == ErrorCode::kZeroVector) {
                        ++r.dropped_blocks;
                    } else {
                        r.error = er.error;
                        r.message = er.message;
                        return;
                    }
                }
                if (embs.empty()) {
                    r.error = ErrorCode::kZeroVector;
                    r.message = "every block of '" + r.id + "' encodes to the zero vector";
                    return;
                }
                try {
                    r.representation = truncate ? std::move(embs.front()) : fuse(embs, pipeline.params);
                } catch (const Error& e) {
                    r.error = e.code();
                    r.message = e.what();
                }
            });
        }
        if (progress) {
            progress(start + n, corpus.size());
        }
    }
    return results;
}

}  // namespace lcr
