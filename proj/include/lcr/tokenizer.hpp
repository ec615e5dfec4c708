// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lcr {

/// Identifier of the built-in tokenization rules. Bumped whenever the rules
/// change, since it is part of every index fingerprint.
inline constexpr std::string_view kSubwordTokenizerId = "subword-v1";

struct Token {
    std::string text;    // lowercased subword or single punctuation byte
    std::size_t start;   // byte offset into the source, inclusive
    std::size_t end;     // byte offset into the source, exclusive
};

/// Splits text into identifier subwords and punctuation. Identifiers are
/// runs of [A-Za-z0-9_] and non-ASCII bytes; they break at underscores,
/// at lower-to-upper and digit-to-upper transitions, and before the last
/// capital of an acronym followed by a lowercase letter ("HTMLParser" gives
/// "html", "parser"). Every other non-space byte is its own token.
///
/// The tokenization of text[0, tokens[k-1].end) is exactly the first k
/// tokens, which is what makes prefix truncation well defined.
std::vector<Token> tokenize(std::string_view text);

/// Number of tokens tokenize() would return.
std::size_t count_tokens(std::string_view text);

/// Longest prefix of text holding at most max_tokens tokens, cut right
/// after the last kept token.
std::string_view truncate_to_tokens(std::string_view text, std::size_t max_tokens);

}  // namespace lcr
