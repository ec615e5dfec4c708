// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lcr/eval.hpp"
#include "lcr/split.hpp"

namespace lcr {

/// One JSON line: {"id", "language", "code", "query"?, "token_length"?}.
struct CorpusRecord {
    std::string id;
    std::string language;
    std::string code;
    std::optional<std::string> query;
    std::optional<std::size_t> token_length;

    bool operator==(const CorpusRecord&) const = default;
};

struct SkippedLine {
    std::size_t line = 0;  // 1-based
    std::string reason;
};

struct IngestResult {
    std::vector<CorpusRecord> records;
    std::vector<SkippedLine> skipped;
};

struct IngestOptions {
    bool require_query = false;  // drop records without a non-empty query
};

/// Parses JSON lines; blank lines are ignored, malformed ones are skipped and
/// reported. Throws AllLinesMalformed when no record survives parsing.
IngestResult read_corpus(std::istream& in, const IngestOptions& options = {});
/// Throws FileNotFound.
IngestResult ingest_corpus(const std::filesystem::path& path, const IngestOptions& options = {});

void write_corpus(std::span<const CorpusRecord> records, std::ostream& out);
void save_corpus(std::span<const CorpusRecord> records, const std::filesystem::path& path);

std::vector<SourceSnippet> to_snippets(std::span<const CorpusRecord> records);

/// Records with a non-empty query; the token length falls back to the
/// tokenizer count of the code.
std::vector<QueryRecord> to_queries(std::span<const CorpusRecord> records);

}  // namespace lcr
