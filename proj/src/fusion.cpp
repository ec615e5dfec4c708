// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#include "lcr/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "lcr/error.hpp"
#include "lcr/hash.hpp"

namespace lcr {

namespace {

constexpr int kParamsVersion = 1;

struct MethodName {
    FusionMethod method;
    std::string_view plus;
    std::string_view underscore;
};

constexpr MethodName kMethodNames[] = {
    {FusionMethod::kMean, "mean", "mean"},
    {FusionMethod::kMax, "max", "max"},
    {FusionMethod::kAttn1, "attn1", "attn1"},
    {FusionMethod::kAttn2, "attn2", "attn2"},
    {FusionMethod::kAttn1Mean, "attn1+mean", "attn1_mean"},
    {FusionMethod::kAttn2Mean, "attn2+mean", "attn2_mean"},
    {FusionMethod::kAttn1Max, "attn1+max", "attn1_max"},
    {FusionMethod::kAttn2Max, "attn2+max", "attn2_max"},
};

std::size_t check_shapes(std::span<const Embedding> embs) {
    if (embs.empty()) {
        throw Error(ErrorCode::kEmptyInput, "fusion needs at least one block embedding");
    }
    const std::size_t d = embs[0].size();
    for (const auto& e : embs) {
        if (e.size() != d) {
            throw Error(ErrorCode::kShapeMismatch, "block embeddings differ in dimension");
        }
    }
    return d;
}

void softmax_in_place(std::vector<double>& v) {
    const double m = *std::max_element(v.begin(), v.end());
    double z = 0.0;
    for (double& x : v) {
        x = std::exp(x - m);
        z += x;
    }
    for (double& x : v) x /= z;
}

// Hidden activations tanh(W1^T e + b1) for the two-layer scorer.
std::vector<double> hidden_layer(const Embedding& e, const FusionParams& p) {
    std::vector<double> h(p.b1);
    for (std::size_t d = 0; d < p.dim; ++d) {
        const double x = e[d];
        if (x == 0.0) continue;
        const double* row = p.w1.data() + d * p.hidden;
        for (std::size_t k = 0; k < p.hidden; ++k) {
            h[k] += x * row[k];
        }
    }
    for (double& v : h) v = std::tanh(v);
    return h;
}

void read_vector(const nlohmann::json& j, const char* key, std::vector<double>& out) {
    if (!j.contains(key)) return;
    out = j.at(key).get<std::vector<double>>();
}

}  // namespace

std::string_view fusion_method_name(FusionMethod method) noexcept {
    for (const auto& m : kMethodNames) {
        if (m.method == method) return m.plus;
    }
    return "mean";
}

std::optional<FusionMethod> parse_fusion_method(std::string_view name) noexcept {
    for (const auto& m : kMethodNames) {
        if (name == m.plus || name == m.underscore) return m.method;
    }
    return std::nullopt;
}

int attention_layers(FusionMethod method) noexcept {
    switch (method) {
        case FusionMethod::kAttn1:
        case FusionMethod::kAttn1Mean:
        case FusionMethod::kAttn1Max:
            return 1;
        case FusionMethod::kAttn2:
        case FusionMethod::kAttn2Mean:
        case FusionMethod::kAttn2Max:
            return 2;
        default:
            return 0;
    }
}

std::optional<PoolMode> pooling_term(FusionMethod method) noexcept {
    switch (method) {
        case FusionMethod::kMean:
        case FusionMethod::kAttn1Mean:
        case FusionMethod::kAttn2Mean:
            return PoolMode::kMean;
        case FusionMethod::kMax:
        case FusionMethod::kAttn1Max:
        case FusionMethod::kAttn2Max:
            return PoolMode::kMax;
        default:
            return std::nullopt;
    }
}

FusionParams FusionParams::zeros(FusionMethod method, std::size_t dim, std::size_t hidden) {
    FusionParams p;
    p.method = method;
    p.dim = dim;
    switch (attention_layers(method)) {
        case 1:
            p.w2.assign(dim, 0.0);
            break;
        case 2:
            p.hidden = hidden;
            p.w1.assign(dim * hidden, 0.0);
            p.b1.assign(hidden, 0.0);
            p.w2.assign(hidden, 0.0);
            break;
        default:
            break;
    }
    return p;
}

FusionParams FusionParams::uniform(FusionMethod method, std::size_t dim, Rng& rng,
                                   std::size_t hidden) {
    FusionParams p = zeros(method, dim, hidden);
    const double r = 1.0 / std::sqrt(static_cast<double>(dim));
    for (double& x : p.w1) x = uniform_real(rng, -r, r);
    for (double& x : p.w2) x = uniform_real(rng, -r, r);
    return p;
}

namespace {

void check_param_shapes(const FusionParams& p) {
    if (p.dim == 0) {
        throw Error(ErrorCode::kShapeMismatch, "fusion params have zero dimension");
    }
    const int layers = attention_layers(p.method);
    const std::size_t want_w1 = layers == 2 ? p.dim * p.hidden : 0;
    const std::size_t want_b1 = layers == 2 ? p.hidden : 0;
    const std::size_t want_w2 = layers == 2 ? p.hidden : (layers == 1 ? p.dim : 0);
    if ((layers == 2 && p.hidden == 0) || (layers != 2 && p.hidden != 0) || p.w1.size() != want_w1 ||
        p.b1.size() != want_b1 || p.w2.size() != want_w2) {
        throw Error(ErrorCode::kShapeMismatch,
                    "fusion params do not match method " + std::string(fusion_method_name(p.method)));
    }
}

}  // namespace

void FusionParams::validate() const {
    check_param_shapes(*this);
    if (!all_finite(w1) || !all_finite(b1) || !all_finite(w2) || !std::isfinite(b2)) {
        throw Error(ErrorCode::kInvalidConfig, "fusion params contain non-finite values");
    }
}

std::size_t FusionParams::parameter_count() const noexcept {
    if (attention_layers(method) == 0) return 0;
    return w1.size() + b1.size() + w2.size() + 1;
}

std::vector<double> FusionParams::flatten() const {
    std::vector<double> out;
    if (attention_layers(method) == 0) return out;
    out.reserve(parameter_count());
    out.insert(out.end(), w1.begin(), w1.end());
    out.insert(out.end(), b1.begin(), b1.end());
    out.insert(out.end(), w2.begin(), w2.end());
    out.push_back(b2);
    return out;
}

void FusionParams::assign(std::span<const double> values) {
    if (values.size() != parameter_count()) {
        throw Error(ErrorCode::kShapeMismatch, "parameter vector has the wrong length");
    }
    if (values.empty()) return;
    auto it = values.begin();
    std::copy_n(it, w1.size(), w1.begin());
    it += static_cast<std::ptrdiff_t>(w1.size());
    std::copy_n(it, b1.size(), b1.begin());
    it += static_cast<std::ptrdiff_t>(b1.size());
    std::copy_n(it, w2.size(), w2.begin());
    it += static_cast<std::ptrdiff_t>(w2.size());
    b2 = *it;
}

std::string FusionParams::digest() const {
    return hex64(fnv1a64(params_to_json(*this).dump()));
}

Embedding pool(std::span<const Embedding> embs, PoolMode mode) {
    const std::size_t d = check_shapes(embs);
    Embedding out(embs[0]);
    if (mode == PoolMode::kMax) {
        for (std::size_t i = 1; i < embs.size(); ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                out[j] = std::max(out[j], embs[i][j]);
            }
        }
        return out;
    }
    for (std::size_t i = 1; i < embs.size(); ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            out[j] += embs[i][j];
        }
    }
    const double k = static_cast<double>(embs.size());
    for (double& x : out) x /= k;
    return out;
}

AttentionWeights attention_weights(std::span<const Embedding> embs, const FusionParams& params) {
    const std::size_t d = check_shapes(embs);
    const int layers = attention_layers(params.method);
    if (layers == 0) {
        throw Error(ErrorCode::kInvalidConfig, "method " +
                                                   std::string(fusion_method_name(params.method)) +
                                                   " has no attention head");
    }
    if (d != params.dim) {
        throw Error(ErrorCode::kShapeMismatch, "block dimension " + std::to_string(d) +
                                                   " does not match fusion dimension " +
                                                   std::to_string(params.dim));
    }
    check_param_shapes(params);
    AttentionWeights w;
    w.logits.reserve(embs.size());
    for (const auto& e : embs) {
        if (layers == 1) {
            w.logits.push_back(dot(params.w2, e) + params.b2);
        } else {
            w.logits.push_back(dot(params.w2, hidden_layer(e, params)) + params.b2);
        }
    }
    w.alphas = w.logits;
    softmax_in_place(w.alphas);
    return w;
}

Embedding fuse(std::span<const Embedding> embs, const FusionParams& params) {
    const std::size_t d = check_shapes(embs);
    const auto pooling = pooling_term(params.method);
    if (attention_layers(params.method) == 0) {
        return pool(embs, *pooling);
    }
    const AttentionWeights w = attention_weights(embs, params);
    Embedding out(d, 0.0);
    for (std::size_t i = 0; i < embs.size(); ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            out[j] += w.alphas[i] * embs[i][j];
        }
    }
    if (pooling) {
        const Embedding p = pool(embs, *pooling);
        for (std::size_t j = 0; j < d; ++j) out[j] += p[j];
    }
    return out;
}

void accumulate_fuse_gradient(std::span<const Embedding> embs, const FusionParams& params,
                              std::span<const double> grad_out, FusionParams& grad) {
    const int layers = attention_layers(params.method);
    if (layers == 0) return;
    const AttentionWeights w = attention_weights(embs, params);
    const std::size_t k = embs.size();

    // d(g . sum_i alpha_i e_i)/d a_j = alpha_j (g . e_j - sum_i alpha_i g . e_i)
    std::vector<double> ge(k);
    double mean_ge = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        ge[i] = dot(grad_out, embs[i]);
        mean_ge += w.alphas[i] * ge[i];
    }
    for (std::size_t j = 0; j < k; ++j) {
        const double ga = w.alphas[j] * (ge[j] - mean_ge);
        if (ga == 0.0) continue;
        grad.b2 += ga;
        if (layers == 1) {
            for (std::size_t d = 0; d < params.dim; ++d) {
                grad.w2[d] += ga * embs[j][d];
            }
            continue;
        }
        const std::vector<double> h = hidden_layer(embs[j], params);
        std::vector<double> dz(params.hidden);
        for (std::size_t u = 0; u < params.hidden; ++u) {
            grad.w2[u] += ga * h[u];
            dz[u] = ga * params.w2[u] * (1.0 - h[u] * h[u]);
            grad.b1[u] += dz[u];
        }
        for (std::size_t d = 0; d < params.dim; ++d) {
            const double x = embs[j][d];
            if (x == 0.0) continue;
            double* row = grad.w1.data() + d * params.hidden;
            for (std::size_t u = 0; u < params.hidden; ++u) {
                row[u] += x * dz[u];
            }
        }
    }
}

nlohmann::json params_to_json(const FusionParams& params) {
    nlohmann::json j;
    j["format"] = "lcr-fusion-params";
    j["version"] = kParamsVersion;
    j["method"] = fusion_method_name(params.method);
    j["dim"] = params.dim;
    j["hidden"] = params.hidden;
    j["w1"] = params.w1;
    j["b1"] = params.b1;
    j["w2"] = params.w2;
    j["b2"] = params.b2;
    return j;
}

FusionParams params_from_json(const nlohmann::json& j) {
    FusionParams p;
    try {
        if (j.value("format", "") != "lcr-fusion-params") {
            throw Error(ErrorCode::kMalformedFile, "not a fusion params file");
        }
        if (j.at("version").get<int>() != kParamsVersion) {
            throw Error(ErrorCode::kMalformedFile, "unsupported fusion params version");
        }
        const auto method = parse_fusion_method(j.at("method").get<std::string>());
        if (!method) {
            throw Error(ErrorCode::kMalformedFile, "unknown fusion method in params file");
        }
        p.method = *method;
        p.dim = j.at("dim").get<std::size_t>();
        p.hidden = j.value("hidden", std::size_t{0});
        read_vector(j, "w1", p.w1);
        read_vector(j, "b1", p.b1);
        read_vector(j, "w2", p.w2);
        p.b2 = j.value("b2", 0.0);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kMalformedFile, std::string("fusion params: ") + e.what());
    }
    p.validate();
    return p;
}

void save_params(const FusionParams& params, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::kIoError, "cannot write " + path.string());
    }
    out << params_to_json(params).dump() << '\n';
}

FusionParams load_params(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::kFileNotFound, "cannot open fusion params " + path.string());
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kMalformedFile, "fusion params: " + std::string(e.what()));
    }
    return params_from_json(j);
}

}  // namespace lcr
