// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#include "lcr/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lcr/error.hpp"

namespace lcr {

void TrainConfig::validate() const {
    if (batch_size == 0 || max_blocks == 0 || epochs == 0) {
        throw Error(ErrorCode::kInvalidConfig, "batch size, block limit and epochs must be positive");
    }
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw Error(ErrorCode::kInvalidConfig, "temperature must be positive");
    }
    if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
        throw Error(ErrorCode::kInvalidConfig, "learning rate must be non-negative");
    }
}

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t max, Rng& rng) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    if (n <= max) {
        return idx;
    }
    for (std::size_t i = 0; i < max; ++i) {
        const auto j = i + static_cast<std::size_t>(uniform_below(rng, n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(max);
    std::sort(idx.begin(), idx.end());
    return idx;
}

ContrastiveLoss contrastive_loss(std::span<const Embedding> codes, std::span<const Embedding> queries,
                                 double temperature) {
    const std::size_t n = codes.size();
    if (n == 0) {
        throw Error(ErrorCode::kEmptyInput, "contrastive loss needs at least one pair");
    }
    if (queries.size() != n) {
        throw Error(ErrorCode::kLengthMismatch, "codes and queries differ in count");
    }
    const std::size_t d = codes[0].size();

    std::vector<double> cnorm(n);
    std::vector<double> qnorm(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (codes[i].size() != d || queries[i].size() != d) {
            throw Error(ErrorCode::kShapeMismatch, "code and query dimensions differ");
        }
        cnorm[i] = l2_norm(codes[i]);
        qnorm[i] = l2_norm(queries[i]);
        if (cnorm[i] == 0.0 || qnorm[i] == 0.0) {
            throw Error(ErrorCode::kZeroVector, "cosine undefined for pair " + std::to_string(i));
        }
    }

    // cos[i][j] between query i and code j.
    std::vector<double> cos(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cos[i * n + j] = dot(queries[i], codes[j]) / (qnorm[i] * cnorm[j]);
        }
    }

    ContrastiveLoss out;
    out.grad_codes.assign(n, Embedding(d, 0.0));
    // dL/ds_ij = (p_ij - [i == j]) / n
    std::vector<double> gs(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        double m = -INFINITY;
        for (std::size_t j = 0; j < n; ++j) m = std::max(m, cos[i * n + j] / temperature);
        double z = 0.0;
        for (std::size_t j = 0; j < n; ++j) z += std::exp(cos[i * n + j] / temperature - m);
        const double lse = m + std::log(z);
        out.loss += lse - cos[i * n + i] / temperature;
        for (std::size_t j = 0; j < n; ++j) {
            const double p = std::exp(cos[i * n + j] / temperature - lse);
            gs[i * n + j] = (p - (i == j ? 1.0 : 0.0)) / static_cast<double>(n);
        }
    }
    out.loss /= static_cast<double>(n);

    // dcos(q, c)/dc = q / (|q||c|) - cos * c / |c|^2
    for (std::size_t j = 0; j < n; ++j) {
        Embedding& g = out.grad_codes[j];
        for (std::size_t i = 0; i < n; ++i) {
            const double w = gs[i * n + j] / temperature;
            if (w == 0.0) continue;
            const double a = w / (qnorm[i] * cnorm[j]);
            const double b = w * cos[i * n + j] / (cnorm[j] * cnorm[j]);
            for (std::size_t k = 0; k < d; ++k) {
                g[k] += a * queries[i][k] - b * codes[j][k];
            }
        }
    }
    return out;
}

LossAndGradient loss_and_gradient(std::span<const TrainPair> pairs, const FusionParams& params,
                                  double temperature) {
    std::vector<Embedding> codes;
    std::vector<Embedding> queries;
    codes.reserve(pairs.size());
    queries.reserve(pairs.size());
    for (const auto& p : pairs) {
        codes.push_back(fuse(p.blocks, params));
        queries.push_back(p.query);
    }
    const ContrastiveLoss cl = contrastive_loss(codes, queries, temperature);

    LossAndGradient out;
    out.loss = cl.loss;
    out.grad = params;
    out.grad.assign(std::vector<double>(params.parameter_count(), 0.0));
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        accumulate_fuse_gradient(pairs[i].blocks, params, cl.grad_codes[i], out.grad);
    }
    return out;
}

TrainResult train(std::span<const TrainExample> data, const TrainConfig& cfg, FusionParams initial) {
    cfg.validate();
    initial.validate();
    if (data.empty()) {
        throw Error(ErrorCode::kEmptyInput, "training set is empty");
    }
    TrainResult result;
    result.params = std::move(initial);
    Rng rng(cfg.seed);

    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        shuffle(order, rng);
        double loss_sum = 0.0;
        std::size_t batches = 0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const std::size_t end = std::min(order.size(), start + cfg.batch_size);
            std::vector<TrainPair> pairs;
            pairs.reserve(end - start);
            for (std::size_t i = start; i < end; ++i) {
                const TrainExample& ex = data[order[i]];
                pairs.push_back(TrainPair{ex.query, sample_blocks(ex.blocks, cfg.max_blocks, rng)});
            }
            const LossAndGradient lg = loss_and_gradient(pairs, result.params, cfg.temperature);
            std::vector<double> theta = result.params.flatten();
            const std::vector<double> grad = lg.grad.flatten();
            if (!std::isfinite(lg.loss) || !all_finite(grad)) {
                throw Error(ErrorCode::kNonFiniteLoss, "non-finite loss in epoch " + std::to_string(epoch) +
                                                           " batch " + std::to_string(batches));
            }
            for (std::size_t k = 0; k < theta.size(); ++k) {
                theta[k] -= cfg.learning_rate * grad[k];
            }
            result.params.assign(theta);
            loss_sum += lg.loss;
            ++batches;
        }
        result.epoch_losses.push_back(loss_sum / static_cast<double>(batches));
    }
    return result;
}

}  // namespace lcr
