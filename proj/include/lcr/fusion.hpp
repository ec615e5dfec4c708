// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lcr/rng.hpp"
#include "lcr/vector_math.hpp"

namespace lcr {

enum class FusionMethod {
    kMean,
    kMax,
    kAttn1,
    kAttn2,
    kAttn1Mean,
    kAttn2Mean,
    kAttn1Max,
    kAttn2Max,
};

enum class PoolMode { kMean, kMax };

/// Command-line spelling, e.g. "attn1+mean".
std::string_view fusion_method_name(FusionMethod method) noexcept;
/// Accepts "attn1+mean" and "attn1_mean".
std::optional<FusionMethod> parse_fusion_method(std::string_view name) noexcept;

/// 0 for pooling-only methods, otherwise 1 or 2.
int attention_layers(FusionMethod method) noexcept;
/// Pooling term added to (or replacing) the attention sum, if any.
std::optional<PoolMode> pooling_term(FusionMethod method) noexcept;

inline constexpr std::size_t kDefaultHidden = 128;

/// Weights of the attention scorer.
///   one layer:  a_i = w2 . e_i + b2
///   two layers: a_i = w2 . tanh(W1^T e_i + b1) + b2,  W1 is dim x hidden
struct FusionParams {
    FusionMethod method = FusionMethod::kAttn1Mean;
    std::size_t dim = 0;
    std::size_t hidden = 0;     // 0 unless two-layer
    std::vector<double> w1;     // row-major dim x hidden
    std::vector<double> b1;     // hidden
    std::vector<double> w2;     // hidden (two-layer) or dim (one-layer)
    double b2 = 0.0;

    static FusionParams zeros(FusionMethod method, std::size_t dim, std::size_t hidden = kDefaultHidden);
    /// Every weight uniform in [-1/sqrt(dim), 1/sqrt(dim)]; biases zero.
    static FusionParams uniform(FusionMethod method, std::size_t dim, Rng& rng,
                                std::size_t hidden = kDefaultHidden);

    /// Throws ShapeMismatch on inconsistent sizes, InvalidConfig on non-finite values.
    void validate() const;

    std::size_t parameter_count() const noexcept;
    /// Trainable values in the order w1, b1, w2, b2.
    std::vector<double> flatten() const;
    void assign(std::span<const double> values);

    /// Hex digest of the serialized form.
    std::string digest() const;

    bool operator==(const FusionParams&) const = default;
};

struct AttentionWeights {
    std::vector<double> logits;
    std::vector<double> alphas;
};

/// Throws EmptyInput for no embeddings and ShapeMismatch for ragged ones.
Embedding pool(std::span<const Embedding> embs, PoolMode mode);

AttentionWeights attention_weights(std::span<const Embedding> embs, const FusionParams& params);

/// e_c for the configured method. The output is not re-normalized.
Embedding fuse(std::span<const Embedding> embs, const FusionParams& params);

/// Adds d(g . fuse(embs))/d(params) into grad, where g = dL/de_c.
/// grad must have the shape of params.
void accumulate_fuse_gradient(std::span<const Embedding> embs, const FusionParams& params,
                              std::span<const double> grad_out, FusionParams& grad);

nlohmann::json params_to_json(const FusionParams& params);
FusionParams params_from_json(const nlohmann::json& j);
void save_params(const FusionParams& params, const std::filesystem::path& path);
FusionParams load_params(const std::filesystem::path& path);

}  // namespace lcr
