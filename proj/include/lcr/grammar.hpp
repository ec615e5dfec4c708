// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include <tree_sitter/api.h>

#include "lcr/language.hpp"

namespace lcr {

/// How to find the header of one composite node type. The header runs from
/// the node start to the start of its body; the body is the first child
/// whose field name is in body_fields, else the first named child whose type
/// is in body_types. When neither exists, header_until names an anonymous
/// token whose end closes the header. body_must_be, when non-empty,
/// restricts the rule to nodes whose body has one of the listed types.
struct CompositeRule {
    std::string node;
    std::vector<std::string> body_fields;
    std::vector<std::string> body_types;
    std::vector<std::string> body_must_be;
    std::string header_until;

    bool operator==(const CompositeRule&) const = default;
};

/// Per-grammar table of composite structures (the head_block/body roles).
struct GrammarRoles {
    Language language = Language::kPython;
    /// Anonymous tokens that open a body ("{", "do") and stay with the header.
    std::vector<std::string> openers;
    std::vector<CompositeRule> composites;

    const CompositeRule* find(std::string_view node_type) const noexcept;
    bool is_opener(std::string_view token) const noexcept;

    nlohmann::json to_json() const;
    static GrammarRoles from_json(const nlohmann::json& j);
    std::uint64_t fingerprint() const;

    bool operator==(const GrammarRoles&) const = default;
};

/// Tables compiled into the library.
GrammarRoles default_roles(Language lang);

/// The tree-sitter language object for a supported grammar.
const TSLanguage* ts_language(Language lang) noexcept;

/// Owns a parsed tree and the source it points into.
class SyntaxTree {
public:
    SyntaxTree() = default;
    SyntaxTree(TSTree* tree, std::string source);

    bool valid() const noexcept { return tree_ != nullptr; }
    TSNode root() const;
    std::string_view source() const noexcept { return source_; }

private:
    struct Deleter {
        void operator()(TSTree* t) const noexcept { ts_tree_delete(t); }
    };
    std::unique_ptr<TSTree, Deleter> tree_;
    std::string source_;
};

/// Parses text with the grammar for lang. Returns an invalid tree only when
/// tree-sitter produces nothing at all.
SyntaxTree parse_source(Language lang, std::string_view text);

/// Immutable set of role tables, one per language, shareable across threads.
class GrammarRegistry {
public:
    /// Built-in tables for all six languages.
    GrammarRegistry();

    /// Built-in tables overridden by any <language>.json found in dir.
    static GrammarRegistry from_directory(const std::filesystem::path& dir);

    /// from_directory($LCR_GRAMMAR_DIR) when the variable is set, else the
    /// built-in tables.
    static GrammarRegistry from_environment();

    const GrammarRoles& roles(Language lang) const;
    std::uint64_t fingerprint() const;

private:
    std::array<GrammarRoles, kAllLanguages.size()> roles_;
};

/// Process-wide registry initialised from the environment on first use.
const GrammarRegistry& default_registry();

}  // namespace lcr
