// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#include "lcr/tokenizer.hpp"

namespace lcr {
namespace {

bool is_space(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
bool is_upper(unsigned char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(unsigned char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }
bool is_word(unsigned char c) {
    return is_upper(c) || is_lower(c) || is_digit(c) || c == '_' || c >= 0x80;
}

char to_lower(unsigned char c) {
    return is_upper(c) ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

// Calls emit(start, end) for each subword of the underscore-free run
// text[lo, hi).
template <typename Emit>
void split_camel(std::string_view text, std::size_t lo, std::size_t hi, Emit&& emit) {
    std::size_t begin = lo;
    for (std::size_t i = lo + 1; i < hi; ++i) {
        const auto prev = static_cast<unsigned char>(text[i - 1]);
        const auto cur = static_cast<unsigned char>(text[i]);
        bool boundary = false;
        if (is_upper(cur) && (is_lower(prev) || is_digit(prev))) {
            boundary = true;
        } else if (is_upper(cur) && is_upper(prev) && i + 1 < hi &&
                   is_lower(static_cast<unsigned char>(text[i + 1]))) {
            boundary = true;
        }
        if (boundary) {
            emit(begin, i);
            begin = i;
        }
    }
    emit(begin, hi);
}

template <typename Emit>
void scan(std::string_view text, Emit&& emit) {
    const std::size_t n = text.size();
    std::size_t i = 0;
    while (i < n) {
        const auto c = static_cast<unsigned char>(text[i]);
        if (is_space(c)) {
            ++i;
            continue;
        }
        if (!is_word(c)) {
            emit(i, i + 1);
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && is_word(static_cast<unsigned char>(text[j]))) {
            ++j;
        }
        std::size_t seg = i;
        for (std::size_t k = i; k <= j; ++k) {
            if (k == j || text[k] == '_') {
                if (k > seg) {
                    split_camel(text, seg, k, emit);
                }
                seg = k + 1;
            }
        }
        i = j;
    }
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    scan(text, [&](std::size_t start, std::size_t end) {
        Token t{std::string(text.substr(start, end - start)), start, end};
        for (auto& ch : t.text) {
            ch = to_lower(static_cast<unsigned char>(ch));
        }
        tokens.push_back(std::move(t));
    });
    return tokens;
}

std::size_t count_tokens(std::string_view text) {
    std::size_t count = 0;
    scan(text, [&](std::size_t, std::size_t) { ++count; });
    return count;
}

std::string_view truncate_to_tokens(std::string_view text, std::size_t max_tokens) {
    if (max_tokens == 0) {
        return text.substr(0, 0);
    }
    std::size_t count = 0;
    std::size_t cut = text.size();
    bool done = false;
    scan(text, [&](std::size_t, std::size_t end) {
        if (done) {
            return;
        }
        if (++count == max_tokens) {
            cut = end;
            done = true;
        }
    });
    return text.substr(0, cut);
}

}  // namespace lcr
