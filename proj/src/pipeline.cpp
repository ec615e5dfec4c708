// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#include "lcr/pipeline.hpp"

#include "lcr/error.hpp"
#include "lcr/hash.hpp"

namespace lcr {

std::string_view index_mode_name(IndexMode mode) noexcept {
    return mode == IndexMode::kMultiBlock ? "multi-block" : "truncate";
}

std::optional<IndexMode> parse_index_mode(std::string_view name) noexcept {
    if (name == "multi-block") return IndexMode::kMultiBlock;
    if (name == "truncate") return IndexMode::kTruncate;
    return std::nullopt;
}

void PipelineConfig::validate() const {
    window.validate();
    encoder.validate();
    if (batch_size == 0) {
        throw Error(ErrorCode::kInvalidConfig, "batch size must be positive");
    }
}

nlohmann::ordered_json Pipeline::fingerprint() const {
    nlohmann::ordered_json j;
    j["mode"] = index_mode_name(config.mode);
    j["encoder"] = encoder.spec().fingerprint();
    if (config.mode == IndexMode::kTruncate) {
        j["limit"] = kTruncationLimit;
        return j;
    }
    j["split"] = split_kind_name(config.split.kind);
    if (config.split.kind == SplitKind::kToken) {
        j["tokenizer"] = config.split.tokenizer;
    }
    if (config.split.kind == SplitKind::kAst) {
        j["grammar"] = hex64(grammars.fingerprint());
    }
    j["window"] = config.window.window;
    j["step"] = config.window.step;
    j["tail"] = tail_policy_name(config.window.tail);
    j["fusion"] = fusion_method_name(params.method);
    j["params"] = params.digest();
    return j;
}

FusionParams resolve_params(const PipelineConfig& config, std::size_t dim) {
    if (config.params_path.empty()) {
        return FusionParams::zeros(config.fusion, dim);
    }
    FusionParams p = load_params(config.params_path);
    if (p.method != config.fusion) {
        throw Error(ErrorCode::kInvalidConfig,
                    "params file holds method " + std::string(fusion_method_name(p.method)) +
                        " but " + std::string(fusion_method_name(config.fusion)) + " was requested");
    }
    if (p.dim != dim) {
        throw Error(ErrorCode::kDimMismatch, "params dimension " + std::to_string(p.dim) +
                                                 " does not match encoder dimension " +
                                                 std::to_string(dim));
    }
    return p;
}

}  // namespace lcr
