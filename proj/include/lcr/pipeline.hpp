// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "lcr/encoder.hpp"
#include "lcr/fusion.hpp"
#include "lcr/grammar.hpp"
#include "lcr/split.hpp"
#include "lcr/window.hpp"

namespace lcr {

/// Code tokens kept by the truncation baseline.
inline constexpr std::size_t kTruncationLimit = 256;

enum class IndexMode {
    kMultiBlock,  // split, window, encode blocks, fuse
    kTruncate,    // encode the first kTruncationLimit tokens only
};

std::string_view index_mode_name(IndexMode mode) noexcept;
std::optional<IndexMode> parse_index_mode(std::string_view name) noexcept;

struct PipelineConfig {
    SplitStrategy split;
    WindowConfig window;
    EncoderSpec encoder;
    FusionMethod fusion = FusionMethod::kAttn1Mean;
    std::string params_path;  // empty: zero-initialized params
    std::size_t batch_size = 64;
    std::uint64_t seed = 0;
    IndexMode mode = IndexMode::kMultiBlock;

    /// Throws InvalidConfig.
    void validate() const;
};

/// Non-owning bundle of everything needed to turn code into a representation.
struct Pipeline {
    const PipelineConfig& config;
    const Encoder& encoder;
    const FusionParams& params;
    const GrammarRegistry& grammars;

    /// Settings an index depends on; compared before every search.
    nlohmann::ordered_json fingerprint() const;
};

/// Loads params_path, or builds zero params for the configured method.
FusionParams resolve_params(const PipelineConfig& config, std::size_t dim);

}  // namespace lcr
