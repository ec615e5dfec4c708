// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#include "lcr/encoder.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lcr/hash.hpp"
#include "lcr/parallel.hpp"
#include "lcr/tokenizer.hpp"

namespace lcr {

void EncoderSpec::validate() const {
    if (kind == EncoderKind::kBuiltinHash) {
        if (dim < 2) {
            throw Error(ErrorCode::kInvalidConfig, "encoder dim must be at least 2");
        }
        if (tokenizer != kSubwordTokenizerId) {
            throw Error(ErrorCode::kInvalidConfig, "unknown tokenizer '" + tokenizer + "'");
        }
    } else if (table_path.empty()) {
        throw Error(ErrorCode::kInvalidConfig, "external table encoder needs a table path");
    }
}

nlohmann::json EncoderSpec::fingerprint() const {
    nlohmann::json j;
    j["kind"] = kind == EncoderKind::kBuiltinHash ? "builtin_hash" : "external_table";
    j["dim"] = dim;
    j["normalization"] = normalization == Normalization::kL2 ? "l2" : "none";
    if (kind == EncoderKind::kBuiltinHash) {
        j["tokenizer"] = tokenizer;
    }
    return j;
}

std::vector<EncodeResult> Encoder::encode_batch(std::span<const EncodeInput> inputs) const {
    std::vector<EncodeResult> results(inputs.size());
    parallel_for(inputs.size(), [&](std::size_t i) {
        try {
            results[i].embedding = encode(inputs[i]);
        } catch (const Error& e) {
            results[i].error = e.code();
            results[i].message = e.what();
        }
    });
    return results;
}

HashEncoder::HashEncoder(EncoderSpec spec) : spec_(std::move(spec)) {
    spec_.kind = EncoderKind::kBuiltinHash;
    spec_.validate();
}

std::size_t HashEncoder::bucket(std::string_view token, std::size_t dim) noexcept {
    return static_cast<std::size_t>(fnv1a64(token) % dim);
}

double HashEncoder::sign(std::string_view token) noexcept {
    return (fnv1a64(token, kSignBasis) >> 63) != 0 ? -1.0 : 1.0;
}

Embedding HashEncoder::raw(std::string_view text) const {
    Embedding v(spec_.dim, 0.0);
    for (const auto& tok : tokenize(text)) {
        v[bucket(tok.text, spec_.dim)] += sign(tok.text);
    }
    return v;
}

Embedding HashEncoder::encode(const EncodeInput& input) const {
    Embedding v = raw(input.text);
    const double norm = l2_norm(v);
    if (norm == 0.0) {
        throw Error(ErrorCode::kZeroVector,
                    "text of '" + std::string(input.id) + "' hashes to the zero vector");
    }
    if (spec_.normalization == Normalization::kL2) {
        for (double& x : v) x /= norm;
    }
    return v;
}

void EmbeddingTable::add(std::string id, Embedding values) {
    if (values.size() != dim_) {
        throw Error(ErrorCode::kDimMismatch, "embedding '" + id + "' has " +
                                                 std::to_string(values.size()) + " values, expected " +
                                                 std::to_string(dim_));
    }
    if (rows_.count(id) != 0) {
        throw Error(ErrorCode::kMalformedFile, "duplicate embedding id '" + id + "'");
    }
    ids_.push_back(id);
    rows_.emplace(std::move(id), std::move(values));
}

const Embedding* EmbeddingTable::find(std::string_view id) const {
    const auto it = rows_.find(std::string(id));
    return it == rows_.end() ? nullptr : &it->second;
}

bool EmbeddingTable::operator==(const EmbeddingTable& other) const {
    return dim_ == other.dim_ && ids_ == other.ids_ && rows_ == other.rows_;
}

std::string content_key(std::string_view text) {
    return "content:" + hex64(fnv1a64(text));
}

EmbeddingTable read_embedding_table(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) {
        throw Error(ErrorCode::kMalformedFile, "embedding table is empty");
    }
    std::size_t dim = 0;
    std::size_t count = 0;
    {
        std::istringstream hs(header);
        std::string dim_field;
        std::string count_field;
        hs >> dim_field >> count_field;
        auto parse = [&](const std::string& field, std::string_view key, std::size_t& out) {
            if (field.rfind(key, 0) != 0) return false;
            const char* first = field.data() + key.size();
            const char* last = field.data() + field.size();
            auto [ptr, ec] = std::from_chars(first, last, out);
            return ec == std::errc{} && ptr == last;
        };
        if (!parse(dim_field, "dim=", dim) || !parse(count_field, "count=", count) || dim == 0) {
            throw Error(ErrorCode::kMalformedFile, "bad embedding table header: '" + header + "'");
        }
    }

    EmbeddingTable table(dim);
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0) {
            throw Error(ErrorCode::kMalformedFile,
                        "line " + std::to_string(line_no) + ": expected '<id>\\t<values>'");
        }
        std::string id = line.substr(0, tab);
        Embedding values;
        const char* p = line.c_str() + tab + 1;
        for (;;) {
            while (*p == ' ') ++p;
            if (*p == '\0') break;
            char* end = nullptr;
            const double v = std::strtod(p, &end);
            if (end == p) {
                throw Error(ErrorCode::kMalformedFile,
                            "line " + std::to_string(line_no) + ": bad number for '" + id + "'");
            }
            values.push_back(v);
            p = end;
        }
        table.add(std::move(id), std::move(values));
    }
    if (table.size() != count) {
        throw Error(ErrorCode::kMalformedFile, "header declares " + std::to_string(count) +
                                                   " rows but file has " + std::to_string(table.size()));
    }
    return table;
}

EmbeddingTable load_embedding_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::kFileNotFound, "cannot open embedding table " + path.string());
    }
    return read_embedding_table(in);
}

void write_embedding_table(const EmbeddingTable& table, std::ostream& out) {
    out << "dim=" << table.dim() << " count=" << table.size() << '\n';
    char buf[32];
    for (const auto& id : table.ids()) {
        out << id << '\t';
        const Embedding& row = *table.find(id);
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            if (i > 0) out << ' ';
            out << buf;
        }
        out << '\n';
    }
}

TableEncoder::TableEncoder(EncoderSpec spec, EmbeddingTable table)
    : spec_(std::move(spec)), table_(std::move(table)) {
    spec_.kind = EncoderKind::kExternalTable;
    spec_.dim = table_.dim();
}

Embedding TableEncoder::encode(const EncodeInput& input) const {
    const Embedding* row = input.id.empty() ? nullptr : table_.find(input.id);
    if (row == nullptr) {
        row = table_.find(content_key(input.text));
    }
    if (row == nullptr) {
        throw Error(ErrorCode::kMissingEmbedding,
                    "no embedding for '" + std::string(input.id) + "' in table");
    }
    Embedding v = *row;
    if (spec_.normalization == Normalization::kL2) {
        const double norm = l2_norm(v);
        if (norm == 0.0) {
            throw Error(ErrorCode::kZeroVector, "table row '" + std::string(input.id) + "' is zero");
        }
        for (double& x : v) x /= norm;
    }
    return v;
}

std::unique_ptr<Encoder> make_encoder(const EncoderSpec& spec) {
    spec.validate();
    if (spec.kind == EncoderKind::kBuiltinHash) {
        return std::make_unique<HashEncoder>(spec);
    }
    return std::make_unique<TableEncoder>(spec, load_embedding_table(spec.table_path));
}

std::string block_id(std::string_view snippet_id, std::size_t block_index) {
    std::string id(snippet_id);
    id += '#';
    id += std::to_string(block_index);
    return id;
}

Embedding encode_block(const CodeBlock& block, std::string_view snippet_id, const Encoder& encoder) {
    const std::string id = block_id(snippet_id, block.index);
    return encoder.encode(EncodeInput{id, block.text});
}

Embedding encode_query(std::string_view query, const Encoder& encoder, std::string_view query_id) {
    const std::string_view kept = truncate_to_tokens(query, kQueryTokenLimit);
    return encoder.encode(EncodeInput{query_id, kept});
}

}  // namespace lcr
