// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#include "lcr/language.hpp"

namespace lcr {

std::string_view language_name(Language lang) noexcept {
    switch (lang) {
        case Language::kPython: return "python";
        case Language::kJava: return "java";
        case Language::kJavaScript: return "javascript";
        case Language::kGo: return "go";
        case Language::kRuby: return "ruby";
        case Language::kPhp: return "php";
    }
    return "unknown";
}

std::optional<Language> parse_language(std::string_view name) noexcept {
    for (Language lang : kAllLanguages) {
        if (language_name(lang) == name) {
            return lang;
        }
    }
    return std::nullopt;
}

std::optional<Language> language_for_extension(std::string_view ext) noexcept {
    if (ext == ".py") return Language::kPython;
    if (ext == ".java") return Language::kJava;
    if (ext == ".js" || ext == ".mjs" || ext == ".cjs") return Language::kJavaScript;
    if (ext == ".go") return Language::kGo;
    if (ext == ".rb") return Language::kRuby;
    if (ext == ".php") return Language::kPhp;
    return std::nullopt;
}

}  // namespace lcr
