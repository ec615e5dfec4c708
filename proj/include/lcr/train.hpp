// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lcr/fusion.hpp"
#include "lcr/rng.hpp"
#include "lcr/vector_math.hpp"

namespace lcr {

struct TrainConfig {
    std::size_t batch_size = 64;
    std::size_t max_blocks = 6;
    std::size_t epochs = 10;
    double learning_rate = 10.0;
    double temperature = 0.05;
    std::uint64_t seed = 0;

    /// Throws InvalidConfig. A zero learning rate is allowed.
    void validate() const;
};

/// A query with every block embedding of its positive code.
struct TrainExample {
    Embedding query;
    std::vector<Embedding> blocks;
};

/// A query with the sampled blocks actually fed to fusion.
struct TrainPair {
    Embedding query;
    std::vector<Embedding> blocks;
};

/// Sorted indices of a uniform random subset of size min(n, max) of [0, n).
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t max, Rng& rng);

template <typename T>
std::vector<T> sample_blocks(const std::vector<T>& blocks, std::size_t max, Rng& rng) {
    std::vector<T> out;
    for (std::size_t i : sample_indices(blocks.size(), max, rng)) {
        out.push_back(blocks[i]);
    }
    return out;
}

struct ContrastiveLoss {
    double loss = 0.0;
    std::vector<Embedding> grad_codes;  // dL/dc_j
};

/// In-batch softmax cross entropy over s_ij = cos(q_i, c_j) / tau, where c_i
/// is the positive of q_i. Throws ZeroVector, LengthMismatch, EmptyInput.
ContrastiveLoss contrastive_loss(std::span<const Embedding> codes, std::span<const Embedding> queries,
                                 double temperature);

struct LossAndGradient {
    double loss = 0.0;
    FusionParams grad;  // same shape as the params
};

/// Fuses every pair's blocks and returns the loss with its gradient with
/// respect to the fusion params.
LossAndGradient loss_and_gradient(std::span<const TrainPair> pairs, const FusionParams& params,
                                  double temperature);

struct TrainResult {
    FusionParams params;
    std::vector<double> epoch_losses;  // mean batch loss per epoch
};

/// Plain SGD over shuffled batches with fresh block sampling each epoch.
/// Throws NonFiniteLoss naming the epoch and batch.
TrainResult train(std::span<const TrainExample> data, const TrainConfig& cfg, FusionParams initial);

}  // namespace lcr
