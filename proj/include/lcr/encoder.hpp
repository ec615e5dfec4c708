// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lcr/error.hpp"
#include "lcr/vector_math.hpp"
#include "lcr/window.hpp"

namespace lcr {

/// Queries keep at most this many tokens before encoding.
inline constexpr std::size_t kQueryTokenLimit = 128;

enum class EncoderKind { kBuiltinHash, kExternalTable };
enum class Normalization { kL2, kNone };

struct EncoderSpec {
    EncoderKind kind = EncoderKind::kBuiltinHash;
    std::size_t dim = 256;
    std::string tokenizer = "subword-v1";
    Normalization normalization = Normalization::kL2;
    std::string table_path;  // external_table only

    void validate() const;
    /// Fields that change embeddings; the table path is excluded so an index
    /// can move between machines.
    nlohmann::json fingerprint() const;
};

struct EncodeInput {
    std::string_view id;    // block id "<snippet>#<j>" or query id; may be empty
    std::string_view text;
};

/// Outcome of encoding one item inside a batch.
struct EncodeResult {
    std::optional<Embedding> embedding;
    ErrorCode error = ErrorCode::kZeroVector;
    std::string message;

    bool ok() const noexcept { return embedding.has_value(); }
};

/// Maps text to a fixed-dimension embedding. Implementations are immutable
/// after construction and safe to call from many threads.
class Encoder {
public:
    virtual ~Encoder() = default;

    virtual std::size_t dim() const noexcept = 0;
    virtual const EncoderSpec& spec() const noexcept = 0;

    /// Throws ZeroVector or MissingEmbedding.
    virtual Embedding encode(const EncodeInput& input) const = 0;

    /// Encodes every input, reporting failures per item. The default splits
    /// the batch across worker threads at item granularity.
    virtual std::vector<EncodeResult> encode_batch(std::span<const EncodeInput> inputs) const;
};

/// Signed feature hashing over the subword tokenizer: each token adds its
/// sign to bucket fnv1a(token) mod dim; the sign comes from the top bit of
/// an FNV-1a hash with a second offset basis.
class HashEncoder final : public Encoder {
public:
    /// Offset basis of the sign hash.
    static constexpr std::uint64_t kSignBasis = 0x84222325cbf29ce4ULL;

    explicit HashEncoder(EncoderSpec spec);

    std::size_t dim() const noexcept override { return spec_.dim; }
    const EncoderSpec& spec() const noexcept override { return spec_; }
    Embedding encode(const EncodeInput& input) const override;

    /// Bucket counts before normalization.
    Embedding raw(std::string_view text) const;

    static std::size_t bucket(std::string_view token, std::size_t dim) noexcept;
    static double sign(std::string_view token) noexcept;

private:
    EncoderSpec spec_;
};

/// Rows keyed by explicit id or by content key (see content_key()).
class EmbeddingTable {
public:
    EmbeddingTable() = default;
    explicit EmbeddingTable(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return ids_.size(); }
    const std::vector<std::string>& ids() const noexcept { return ids_; }

    /// Throws DimMismatch on a wrong-length row, MalformedFile on a duplicate id.
    void add(std::string id, Embedding values);
    const Embedding* find(std::string_view id) const;

    bool operator==(const EmbeddingTable& other) const;

private:
    std::size_t dim_ = 0;
    std::vector<std::string> ids_;
    std::unordered_map<std::string, Embedding> rows_;
};

/// Key under which a table may store the embedding of an arbitrary text.
std::string content_key(std::string_view text);

/// Header "dim=<D> count=<N>", then N lines "<id>\t<f1> ... <fD>".
EmbeddingTable read_embedding_table(std::istream& in);
EmbeddingTable load_embedding_table(const std::filesystem::path& path);
void write_embedding_table(const EmbeddingTable& table, std::ostream& out);

/// Looks inputs up by id, then by content key. Throws MissingEmbedding.
class TableEncoder final : public Encoder {
public:
    TableEncoder(EncoderSpec spec, EmbeddingTable table);

    std::size_t dim() const noexcept override { return table_.dim(); }
    const EncoderSpec& spec() const noexcept override { return spec_; }
    Embedding encode(const EncodeInput& input) const override;

private:
    EncoderSpec spec_;
    EmbeddingTable table_;
};

/// Builds the encoder a spec describes (loading the table when needed).
std::unique_ptr<Encoder> make_encoder(const EncoderSpec& spec);

/// Block id used for table lookups: "<snippet_id>#<block_index>".
std::string block_id(std::string_view snippet_id, std::size_t block_index);

Embedding encode_block(const CodeBlock& block, std::string_view snippet_id, const Encoder& encoder);

/// Encodes the first kQueryTokenLimit tokens of query.
Embedding encode_query(std::string_view query, const Encoder& encoder, std::string_view query_id = {});

}  // namespace lcr
