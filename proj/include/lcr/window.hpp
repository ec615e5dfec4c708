// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lcr/split.hpp"

namespace lcr {

enum class TailPolicy {
    kFloor,   // k = floor((n - w) / s) + 1; trailing pieces may be dropped
    kIncludeTail,  // one extra short block when the floor blocks miss the end
};

std::string_view tail_policy_name(TailPolicy policy) noexcept;
std::optional<TailPolicy> parse_tail_policy(std::string_view name) noexcept;

struct WindowConfig {
    std::size_t window = 32;
    std::size_t step = 16;
    TailPolicy tail = TailPolicy::kFloor;

    /// Throws InvalidConfig unless 1 <= step <= window.
    void validate() const;
};

/// A window of consecutive pieces [piece_begin, piece_end).
struct CodeBlock {
    std::size_t index = 0;
    std::size_t piece_begin = 0;
    std::size_t piece_end = 0;
    std::string text;  // member pieces joined by '\n'

    std::size_t size() const noexcept { return piece_end - piece_begin; }
};

/// Number of blocks for n pieces. n < window is clamped to a single block.
std::size_t block_count(std::size_t n, const WindowConfig& cfg);

/// B = SlidingWindow(P). Block j starts at piece j * step.
std::vector<CodeBlock> window(std::span<const CodePiece> pieces, const WindowConfig& cfg);

}  // namespace lcr
