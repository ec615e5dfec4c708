// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lcr/grammar.hpp"

namespace lcr {

struct SourceSnippet {
    std::string id;
    std::string language;  // grammar tag, e.g. "python"
    std::string text;
};

/// One contiguous fragment of a snippet: text == source.substr(start, end - start).
struct CodePiece {
    std::size_t index = 0;
    std::size_t start = 0;
    std::size_t end = 0;
    std::string text;

    bool operator==(const CodePiece&) const = default;
};

enum class SplitKind { kSpace, kToken, kLine, kAst };

std::string_view split_kind_name(SplitKind kind) noexcept;
std::optional<SplitKind> parse_split_kind(std::string_view name) noexcept;

struct SplitStrategy {
    SplitKind kind = SplitKind::kAst;
    /// Tokenizer used by the token strategy. Only the built-in one exists.
    std::string tokenizer = "subword-v1";
};

/// P = Split(C). Throws EmptySource for whitespace-only text and
/// UnsupportedLanguage when the AST strategy has no grammar for the snippet.
std::vector<CodePiece> split(const SourceSnippet& snippet, const SplitStrategy& strategy,
                             const GrammarRegistry& grammars = default_registry());

/// AST-based partition. The syntax tree is visited in preorder; every
/// composite node contributes a cut at its start and a cut at the end of
/// its header. Cut segments are trimmed of surrounding whitespace and
/// whitespace-only segments are dropped, so the gaps between pieces hold
/// only whitespace and the spans reproduce the source exactly.
/// Throws ParseFailure when the grammar yields no usable tree.
std::vector<CodePiece> ast_partition(const SourceSnippet& snippet,
                                     const GrammarRegistry& grammars = default_registry());

struct SplitOutcome {
    std::vector<CodePiece> pieces;
    bool fell_back = false;  // AST parse failed and line splitting was used
    std::string fallback_reason;
};

/// split() with the AST-to-line fallback applied on ParseFailure.
SplitOutcome split_with_fallback(const SourceSnippet& snippet, const SplitStrategy& strategy,
                                 const GrammarRegistry& grammars = default_registry());

}  // namespace lcr
