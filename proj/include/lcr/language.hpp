// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace lcr {

enum class Language { kPython, kJava, kJavaScript, kGo, kRuby, kPhp };

inline constexpr std::array<Language, 6> kAllLanguages = {
    Language::kPython, Language::kJava, Language::kJavaScript,
    Language::kGo,     Language::kRuby, Language::kPhp,
};

std::string_view language_name(Language lang) noexcept;

/// Accepts the canonical names (python, java, javascript, go, ruby, php).
std::optional<Language> parse_language(std::string_view name) noexcept;

/// Maps a file extension such as ".py" to its language.
std::optional<Language> language_for_extension(std::string_view ext) noexcept;

}  // namespace lcr
