// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#include "lcr/grammar.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "lcr/error.hpp"
#include "lcr/hash.hpp"

extern "C" {
const TSLanguage* tree_sitter_python(void);
const TSLanguage* tree_sitter_java(void);
const TSLanguage* tree_sitter_javascript(void);
const TSLanguage* tree_sitter_go(void);
const TSLanguage* tree_sitter_ruby(void);
const TSLanguage* tree_sitter_php_only(void);
}

namespace lcr {
namespace {

using Names = std::vector<std::string>;

CompositeRule by_field(std::string node, Names fields) {
    return CompositeRule{std::move(node), std::move(fields), {}, {}, {}};
}

CompositeRule by_type(std::string node, Names types) {
    return CompositeRule{std::move(node), {}, std::move(types), {}, {}};
}

CompositeRule until(std::string node, std::string token) {
    return CompositeRule{std::move(node), {}, {}, {}, std::move(token)};
}

GrammarRoles python_roles() {
    return {Language::kPython,
            {},
            {
                by_field("function_definition", {"body"}),
                by_field("class_definition", {"body"}),
                by_field("if_statement", {"consequence"}),
                by_field("elif_clause", {"consequence"}),
                by_field("else_clause", {"body"}),
                by_field("for_statement", {"body"}),
                by_field("while_statement", {"body"}),
                by_field("try_statement", {"body"}),
                by_type("except_clause", {"block"}),
                by_type("finally_clause", {"block"}),
                by_field("with_statement", {"body"}),
                by_field("match_statement", {"body"}),
                by_field("case_clause", {"consequence"}),
            }};
}

GrammarRoles java_roles() {
    return {Language::kJava,
            {"{"},
            {
                by_field("class_declaration", {"body"}),
                by_field("interface_declaration", {"body"}),
                by_field("enum_declaration", {"body"}),
                by_field("record_declaration", {"body"}),
                by_field("annotation_type_declaration", {"body"}),
                by_field("method_declaration", {"body"}),
                by_field("constructor_declaration", {"body"}),
                by_type("static_initializer", {"block"}),
                by_field("if_statement", {"consequence"}),
                by_field("for_statement", {"body"}),
                by_field("enhanced_for_statement", {"body"}),
                by_field("while_statement", {"body"}),
                by_field("do_statement", {"body"}),
                by_field("try_statement", {"body"}),
                by_field("try_with_resources_statement", {"body"}),
                by_field("catch_clause", {"body"}),
                by_type("finally_clause", {"block"}),
                by_field("synchronized_statement", {"body"}),
                by_field("switch_expression", {"body"}),
                until("switch_block_statement_group", ":"),
                until("switch_rule", "->"),
            }};
}

GrammarRoles javascript_roles() {
    CompositeRule arrow = by_field("arrow_function", {"body"});
    arrow.body_must_be = {"statement_block"};
    CompositeRule else_clause = by_type("else_clause", {"statement_block"});
    else_clause.header_until = "else";
    return {Language::kJavaScript,
            {"{"},
            {
                by_field("class_declaration", {"body"}),
                by_field("class", {"body"}),
                by_field("function_declaration", {"body"}),
                by_field("function_expression", {"body"}),
                by_field("generator_function_declaration", {"body"}),
                by_field("generator_function", {"body"}),
                by_field("method_definition", {"body"}),
                arrow,
                by_field("if_statement", {"consequence"}),
                else_clause,
                by_field("for_statement", {"body"}),
                by_field("for_in_statement", {"body"}),
                by_field("while_statement", {"body"}),
                by_field("do_statement", {"body"}),
                by_field("try_statement", {"body"}),
                by_field("catch_clause", {"body"}),
                by_field("finally_clause", {"body"}),
                by_field("switch_statement", {"body"}),
                until("switch_case", ":"),
                until("switch_default", ":"),
            }};
}

GrammarRoles go_roles() {
    return {Language::kGo,
            {"{"},
            {
                by_field("function_declaration", {"body"}),
                by_field("method_declaration", {"body"}),
                by_field("func_literal", {"body"}),
                by_field("if_statement", {"consequence"}),
                by_field("for_statement", {"body"}),
                until("expression_switch_statement", "{"),
                until("type_switch_statement", "{"),
                until("select_statement", "{"),
                until("expression_case", ":"),
                until("type_case", ":"),
                until("default_case", ":"),
                until("communication_case", ":"),
            }};
}

GrammarRoles ruby_roles() {
    return {Language::kRuby,
            {"then", "do"},
            {
                by_field("module", {"body"}),
                by_field("class", {"body"}),
                by_field("singleton_class", {"body"}),
                by_field("method", {"body"}),
                by_field("singleton_method", {"body"}),
                by_field("if", {"consequence"}),
                by_field("unless", {"consequence"}),
                by_field("elsif", {"consequence"}),
                until("else", "else"),
                by_field("while", {"body"}),
                by_field("until", {"body"}),
                by_field("for", {"body"}),
                by_type("case", {"when", "in_clause"}),
                by_field("when", {"body"}),
                by_field("in_clause", {"body"}),
                until("begin", "begin"),
                by_field("rescue", {"body"}),
                until("ensure", "ensure"),
                by_field("do_block", {"body"}),
            }};
}

GrammarRoles php_roles() {
    return {Language::kPhp,
            {"{"},
            {
                by_field("function_definition", {"body"}),
                by_field("method_declaration", {"body"}),
                by_field("anonymous_function", {"body"}),
                by_field("class_declaration", {"body"}),
                by_field("interface_declaration", {"body"}),
                by_field("trait_declaration", {"body"}),
                by_field("enum_declaration", {"body"}),
                by_field("if_statement", {"body"}),
                by_field("else_if_clause", {"body"}),
                by_field("else_clause", {"body"}),
                by_field("for_statement", {"body"}),
                by_field("foreach_statement", {"body"}),
                by_field("while_statement", {"body"}),
                by_field("do_statement", {"body"}),
                by_field("try_statement", {"body"}),
                by_field("catch_clause", {"body"}),
                by_field("finally_clause", {"body"}),
                by_field("switch_statement", {"body"}),
                until("case_statement", ":"),
                until("default_statement", ":"),
            }};
}

Names string_list(const nlohmann::json& j, const char* key) {
    Names out;
    if (!j.contains(key)) {
        return out;
    }
    const auto& arr = j.at(key);
    if (!arr.is_array()) {
        throw Error(ErrorCode::kMalformedFile, std::string("grammar roles: '") + key + "' must be an array");
    }
    for (const auto& item : arr) {
        out.push_back(item.get<std::string>());
    }
    return out;
}

std::size_t slot(Language lang) {
    const auto it = std::find(kAllLanguages.begin(), kAllLanguages.end(), lang);
    return static_cast<std::size_t>(it - kAllLanguages.begin());
}

}  // namespace

const CompositeRule* GrammarRoles::find(std::string_view node_type) const noexcept {
    for (const auto& rule : composites) {
        if (rule.node == node_type) {
            return &rule;
        }
    }
    return nullptr;
}

bool GrammarRoles::is_opener(std::string_view token) const noexcept {
    return std::find(openers.begin(), openers.end(), token) != openers.end();
}

nlohmann::json GrammarRoles::to_json() const {
    nlohmann::json out;
    out["language"] = language_name(language);
    out["openers"] = openers;
    auto& arr = out["composites"] = nlohmann::json::array();
    for (const auto& rule : composites) {
        nlohmann::json r;
        r["node"] = rule.node;
        if (!rule.body_fields.empty()) r["body_fields"] = rule.body_fields;
        if (!rule.body_types.empty()) r["body_types"] = rule.body_types;
        if (!rule.body_must_be.empty()) r["body_must_be"] = rule.body_must_be;
        if (!rule.header_until.empty()) r["header_until"] = rule.header_until;
        arr.push_back(std::move(r));
    }
    return out;
}

GrammarRoles GrammarRoles::from_json(const nlohmann::json& j) {
    try {
        GrammarRoles roles;
        const auto name = j.at("language").get<std::string>();
        const auto lang = parse_language(name);
        if (!lang) {
            throw Error(ErrorCode::kUnsupportedLanguage, "grammar roles: unknown language '" + name + "'");
        }
        roles.language = *lang;
        roles.openers = string_list(j, "openers");
        for (const auto& r : j.at("composites")) {
            CompositeRule rule;
            rule.node = r.at("node").get<std::string>();
            rule.body_fields = string_list(r, "body_fields");
            rule.body_types = string_list(r, "body_types");
            rule.body_must_be = string_list(r, "body_must_be");
            rule.header_until = r.value("header_until", std::string{});
            roles.composites.push_back(std::move(rule));
        }
        return roles;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kMalformedFile, std::string("grammar roles: ") + e.what());
    }
}

std::uint64_t GrammarRoles::fingerprint() const {
    return fnv1a64(to_json().dump());
}

GrammarRoles default_roles(Language lang) {
    switch (lang) {
        case Language::kPython: return python_roles();
        case Language::kJava: return java_roles();
        case Language::kJavaScript: return javascript_roles();
        case Language::kGo: return go_roles();
        case Language::kRuby: return ruby_roles();
        case Language::kPhp: return php_roles();
    }
    throw Error(ErrorCode::kUnsupportedLanguage, "no grammar for language");
}

const TSLanguage* ts_language(Language lang) noexcept {
    switch (lang) {
        case Language::kPython: return tree_sitter_python();
        case Language::kJava: return tree_sitter_java();
        case Language::kJavaScript: return tree_sitter_javascript();
        case Language::kGo: return tree_sitter_go();
        case Language::kRuby: return tree_sitter_ruby();
        case Language::kPhp: return tree_sitter_php_only();
    }
    return nullptr;
}

SyntaxTree::SyntaxTree(TSTree* tree, std::string source)
    : tree_(tree), source_(std::move(source)) {}

TSNode SyntaxTree::root() const {
    return ts_tree_root_node(tree_.get());
}

SyntaxTree parse_source(Language lang, std::string_view text) {
    struct ParserDeleter {
        void operator()(TSParser* p) const noexcept { ts_parser_delete(p); }
    };
    // Parsers are cheap and not thread-safe; one per call keeps parse_source reentrant.
    std::unique_ptr<TSParser, ParserDeleter> parser(ts_parser_new());
    if (!parser || !ts_parser_set_language(parser.get(), ts_language(lang))) {
        throw Error(ErrorCode::kParseFailure,
                    "cannot load grammar for " + std::string(language_name(lang)));
    }
    std::string source(text);
    TSTree* tree = ts_parser_parse_string(parser.get(), nullptr, source.data(),
                                          static_cast<std::uint32_t>(source.size()));
    return SyntaxTree(tree, std::move(source));
}

GrammarRegistry::GrammarRegistry() {
    for (Language lang : kAllLanguages) {
        roles_[slot(lang)] = default_roles(lang);
    }
}

GrammarRegistry GrammarRegistry::from_directory(const std::filesystem::path& dir) {
    GrammarRegistry registry;
    if (!std::filesystem::is_directory(dir)) {
        throw Error(ErrorCode::kFileNotFound, "grammar directory not found: " + dir.string());
    }
    for (Language lang : kAllLanguages) {
        const auto file = dir / (std::string(language_name(lang)) + ".json");
        if (!std::filesystem::exists(file)) {
            continue;
        }
        std::ifstream in(file);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::kMalformedFile, file.string() + ": " + e.what());
        }
        GrammarRoles roles = GrammarRoles::from_json(j);
        if (roles.language != lang) {
            throw Error(ErrorCode::kMalformedFile,
                        file.string() + ": language field does not match file name");
        }
        registry.roles_[slot(lang)] = std::move(roles);
    }
    return registry;
}

GrammarRegistry GrammarRegistry::from_environment() {
    const char* dir = std::getenv("LCR_GRAMMAR_DIR");
    if (dir == nullptr || *dir == '\0') {
        return GrammarRegistry{};
    }
    return from_directory(dir);
}

const GrammarRoles& GrammarRegistry::roles(Language lang) const {
    return roles_[slot(lang)];
}

std::uint64_t GrammarRegistry::fingerprint() const {
    std::string all;
    for (const auto& r : roles_) {
        all += hex64(r.fingerprint());
    }
    return fnv1a64(all);
}

const GrammarRegistry& default_registry() {
    static const GrammarRegistry registry = GrammarRegistry::from_environment();
    return registry;
}

}  // namespace lcr
