// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#include "lcr/split.hpp"

#include <algorithm>
#include <cstring>

#include "lcr/error.hpp"
#include "lcr/tokenizer.hpp"

namespace lcr {
namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool blank(std::string_view text) {
    return std::all_of(text.begin(), text.end(), is_space);
}

void push_piece(std::vector<CodePiece>& out, std::string_view text, std::size_t start,
                std::size_t end) {
    out.push_back(CodePiece{out.size(), start, end, std::string(text.substr(start, end - start))});
}

std::vector<CodePiece> split_space(std::string_view text) {
    std::vector<CodePiece> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        const std::size_t start = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        if (i > start) push_piece(out, text, start, i);
    }
    return out;
}

std::vector<CodePiece> split_token(std::string_view text) {
    std::vector<CodePiece> out;
    for (const auto& tok : tokenize(text)) {
        push_piece(out, text, tok.start, tok.end);
    }
    return out;
}

std::vector<CodePiece> split_line(std::string_view text) {
    std::vector<CodePiece> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        std::size_t end = nl;
        if (end > start && text[end - 1] == '\r') --end;
        if (!blank(text.substr(start, end - start))) {
            push_piece(out, text, start, end);
        }
        if (nl == text.size()) break;
        start = nl + 1;
    }
    return out;
}

bool contains(const std::vector<std::string>& names, const char* name) {
    return std::find(names.begin(), names.end(), std::string_view(name)) != names.end();
}

// Locates the body child of node under rule; null node when none matches.
TSNode find_body(TSNode node, const CompositeRule& rule) {
    const std::uint32_t count = ts_node_child_count(node);
    if (!rule.body_fields.empty()) {
        for (std::uint32_t i = 0; i < count; ++i) {
            const char* field = ts_node_field_name_for_child(node, i);
            if (field != nullptr && contains(rule.body_fields, field)) {
                return ts_node_child(node, i);
            }
        }
    }
    if (!rule.body_types.empty()) {
        for (std::uint32_t i = 0; i < count; ++i) {
            TSNode child = ts_node_child(node, i);
            if (ts_node_is_named(child) && contains(rule.body_types, ts_node_type(child))) {
                return child;
            }
        }
    }
    return TSNode{};
}

// Appends the split marks contributed by one composite node.
void mark_composite(TSNode node, const CompositeRule& rule, const GrammarRoles& roles,
                    std::vector<std::size_t>& marks) {
    const std::uint32_t start = ts_node_start_byte(node);
    const std::uint32_t end = ts_node_end_byte(node);
    if (end <= start) {
        return;  // zero-width recovery node
    }

    std::optional<std::uint32_t> header_end;
    TSNode body = find_body(node, rule);
    if (!ts_node_is_null(body)) {
        if (!rule.body_must_be.empty() && !contains(rule.body_must_be, ts_node_type(body))) {
            return;
        }
        header_end = ts_node_start_byte(body);
        if (ts_node_child_count(body) > 0) {
            TSNode first = ts_node_child(body, 0);
            if (!ts_node_is_named(first) && roles.is_opener(ts_node_type(first))) {
                header_end = ts_node_end_byte(first);
            }
        }
    } else if (!rule.body_must_be.empty()) {
        return;
    } else if (!rule.header_until.empty()) {
        const std::uint32_t count = ts_node_child_count(node);
        for (std::uint32_t i = 0; i < count; ++i) {
            TSNode child = ts_node_child(node, i);
            if (!ts_node_is_named(child) && rule.header_until == ts_node_type(child)) {
                header_end = ts_node_end_byte(child);
                break;
            }
        }
    }

    marks.push_back(start);
    if (header_end && *header_end > start) {
        marks.push_back(*header_end);
    }
}

std::vector<std::size_t> collect_marks(TSNode root, const GrammarRoles& roles) {
    std::vector<std::size_t> marks;
    TSTreeCursor cursor = ts_tree_cursor_new(root);
    for (;;) {
        TSNode node = ts_tree_cursor_current_node(&cursor);
        if (ts_node_is_named(node)) {
            if (const CompositeRule* rule = roles.find(ts_node_type(node))) {
                mark_composite(node, *rule, roles, marks);
            }
        }
        if (ts_tree_cursor_goto_first_child(&cursor)) {
            continue;
        }
        bool advanced = false;
        while (!advanced) {
            if (ts_tree_cursor_goto_next_sibling(&cursor)) {
                advanced = true;
            } else if (!ts_tree_cursor_goto_parent(&cursor)) {
                break;
            }
        }
        if (!advanced) {
            break;
        }
    }
    ts_tree_cursor_delete(&cursor);
    return marks;
}

void require_text(const SourceSnippet& snippet) {
    if (blank(snippet.text)) {
        throw Error(ErrorCode::kEmptySource, "snippet '" + snippet.id + "' has no code");
    }
}

}  // namespace

std::string_view split_kind_name(SplitKind kind) noexcept {
    switch (kind) {
        case SplitKind::kSpace: return "space";
        case SplitKind::kToken: return "token";
        case SplitKind::kLine: return "line";
        case SplitKind::kAst: return "ast";
    }
    return "unknown";
}

std::optional<SplitKind> parse_split_kind(std::string_view name) noexcept {
    for (SplitKind k : {SplitKind::kSpace, SplitKind::kToken, SplitKind::kLine, SplitKind::kAst}) {
        if (split_kind_name(k) == name) return k;
    }
    return std::nullopt;
}

std::vector<CodePiece> ast_partition(const SourceSnippet& snippet, const GrammarRegistry& grammars) {
    require_text(snippet);
    const auto lang = parse_language(snippet.language);
    if (!lang) {
        throw Error(ErrorCode::kUnsupportedLanguage,
                    "no grammar for language '" + snippet.language + "' (snippet '" + snippet.id + "')");
    }
    SyntaxTree tree = parse_source(*lang, snippet.text);
    if (!tree.valid()) {
        throw Error(ErrorCode::kParseFailure, "parser produced no tree for '" + snippet.id + "'");
    }
    TSNode root = tree.root();
    if (std::strcmp(ts_node_type(root), "ERROR") == 0) {
        throw Error(ErrorCode::kParseFailure,
                    "grammar could not structure '" + snippet.id + "' (root is an error node)");
    }

    std::vector<std::size_t> marks = collect_marks(root, grammars.roles(*lang));
    const std::string_view text = snippet.text;
    marks.push_back(0);
    marks.push_back(text.size());
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

    std::vector<CodePiece> out;
    for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
        std::size_t lo = std::min(marks[i], text.size());
        std::size_t hi = std::min(marks[i + 1], text.size());
        while (lo < hi && is_space(text[lo])) ++lo;
        while (hi > lo && is_space(text[hi - 1])) --hi;
        if (hi > lo) {
            push_piece(out, text, lo, hi);
        }
    }
    return out;
}

std::vector<CodePiece> split(const SourceSnippet& snippet, const SplitStrategy& strategy,
                             const GrammarRegistry& grammars) {
    require_text(snippet);
    switch (strategy.kind) {
        case SplitKind::kSpace: return split_space(snippet.text);
        case SplitKind::kToken:
            if (strategy.tokenizer != kSubwordTokenizerId) {
                throw Error(ErrorCode::kInvalidConfig, "unknown tokenizer '" + strategy.tokenizer + "'");
            }
            return split_token(snippet.text);
        case SplitKind::kLine: return split_line(snippet.text);
        case SplitKind::kAst: return ast_partition(snippet, grammars);
    }
    throw Error(ErrorCode::kInvalidConfig, "unknown split strategy");
}

SplitOutcome split_with_fallback(const SourceSnippet& snippet, const SplitStrategy& strategy,
                                 const GrammarRegistry& grammars) {
    SplitOutcome outcome;
    try {
        outcome.pieces = split(snippet, strategy, grammars);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::kParseFailure) {
            throw;
        }
        outcome.pieces = split_line(snippet.text);
        outcome.fell_back = true;
        outcome.fallback_reason = e.what();
    }
    return outcome;
}

}  // namespace lcr
