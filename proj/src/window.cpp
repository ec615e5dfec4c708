// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#include "lcr/window.hpp"

#include <algorithm>

#include "lcr/error.hpp"

namespace lcr {

std::string_view tail_policy_name(TailPolicy policy) noexcept {
    return policy == TailPolicy::kFloor ? "floor" : "include";
}

std::optional<TailPolicy> parse_tail_policy(std::string_view name) noexcept {
    if (name == "floor") return TailPolicy::kFloor;
    if (name == "include") return TailPolicy::kIncludeTail;
    return std::nullopt;
}

void WindowConfig::validate() const {
    if (window == 0 || step == 0) {
        throw Error(ErrorCode::kInvalidConfig, "window and step must be positive");
    }
    if (step > window) {
        throw Error(ErrorCode::kInvalidConfig, "step must not exceed window");
    }
}

std::size_t block_count(std::size_t n, const WindowConfig& cfg) {
    cfg.validate();
    if (n < cfg.window) {
        return 1;
    }
    std::size_t k = (n - cfg.window) / cfg.step + 1;
    if (cfg.tail == TailPolicy::kIncludeTail && (k - 1) * cfg.step + cfg.window < n) {
        ++k;
    }
    return k;
}

std::vector<CodeBlock> window(std::span<const CodePiece> pieces, const WindowConfig& cfg) {
    if (pieces.empty()) {
        throw Error(ErrorCode::kEmptyInput, "cannot window an empty piece list");
    }
    const std::size_t n = pieces.size();
    const std::size_t k = block_count(n, cfg);
    std::vector<CodeBlock> blocks;
    blocks.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        CodeBlock b;
        b.index = j;
        b.piece_begin = j * cfg.step;
        b.piece_end = std::min(n, b.piece_begin + cfg.window);
        if (n < cfg.window) {
            b.piece_begin = 0;
            b.piece_end = n;
        }
        for (std::size_t p = b.piece_begin; p < b.piece_end; ++p) {
            if (p > b.piece_begin) b.text += '\n';
            b.text += pieces[p].text;
        }
        blocks.push_back(std::move(b));
    }
    return blocks;
}

}  // namespace lcr
