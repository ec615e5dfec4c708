// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lcr/corpus.hpp"
#include "lcr/encoder.hpp"
#include "lcr/train.hpp"

namespace lcr {

struct SyntheticConfig {
    std::size_t n = 500;
    double late_fraction = 0.5;  // records whose keywords sit past the truncation limit
    std::size_t keywords = 4;
    std::uint64_t seed = 0;
};

struct SyntheticCorpus {
    std::vector<CorpusRecord> records;
    std::vector<std::string> late_ids;  // keywords appear only after code token 256
};

/// Python functions built from a shared filler vocabulary. Every record gets
/// its own pseudo-word keywords, planted in the code and repeated in the
/// query. Late records plant them after the first 256 code tokens, the rest
/// near the top of the function.
SyntheticCorpus generate_corpus(const SyntheticConfig& cfg);

/// Index of the first code token that is one of the record's query
/// keywords, or the code's token count when none occurs.
std::size_t first_keyword_token(const CorpusRecord& record);

struct PlantedDataset {
    std::vector<TrainExample> examples;
    std::vector<std::size_t> planted;  // index of the matching block per example
};

/// Codes of 3 to 6 filler blocks, one of which also carries the query's
/// keywords (drawn from a shared topic vocabulary). Blocks and queries are
/// embedded with the given encoder.
PlantedDataset planted_block_dataset(std::size_t n, const Encoder& encoder, std::uint64_t seed);

}  // namespace lcr
