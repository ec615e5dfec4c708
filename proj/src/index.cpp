// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#include "lcr/index.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>

#include "lcr/tokenizer.hpp"

namespace lcr {

namespace {

constexpr char kMagic[8] = {'L', 'C', 'R', 'I', 'N', 'D', 'E', 'X'};
constexpr std::uint32_t kIndexVersion = 1;

template <typename T>
void put_le(std::ostream& out, T value) {
    static_assert(std::is_unsigned_v<T>);
    char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        buf[i] = static_cast<char>((value >> (8 * i)) & 0xff);
    }
    out.write(buf, sizeof buf);
}

template <typename T>
T get_le(std::istream& in) {
    unsigned char buf[sizeof(T)];
    if (!in.read(reinterpret_cast<char*>(buf), sizeof buf)) {
        throw Error(ErrorCode::kMalformedFile, "index file is truncated");
    }
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        value |= static_cast<T>(buf[i]) << (8 * i);
    }
    return value;
}

std::string get_bytes(std::istream& in, std::size_t n) {
    std::string s(n, '\0');
    if (n > 0 && !in.read(s.data(), static_cast<std::streamsize>(n))) {
        throw Error(ErrorCode::kMalformedFile, "index file is truncated");
    }
    return s;
}

bool ranks_before(double sa, const std::string& ia, double sb, const std::string& ib) {
    if (sa != sb) return sa > sb;
    return ia < ib;
}

}  // namespace

std::string_view similarity_name(Similarity sim) noexcept {
    return sim == Similarity::kCosine ? "cosine" : "euclidean";
}

std::optional<Similarity> parse_similarity(std::string_view name) noexcept {
    if (name == "cosine") return Similarity::kCosine;
    if (name == "euclidean") return Similarity::kEuclidean;
    return std::nullopt;
}

void CodeIndex::add(std::string id, std::span<const double> vec) {
    if (vec.size() != dim_) {
        throw Error(ErrorCode::kDimMismatch, "entry '" + id + "' has dimension " +
                                                 std::to_string(vec.size()) + ", index has " +
                                                 std::to_string(dim_));
    }
    if (by_id_.count(id) != 0) {
        throw Error(ErrorCode::kInvalidConfig, "duplicate snippet id '" + id + "'");
    }
    IndexEntry e;
    e.id = std::move(id);
    e.vector.assign(vec.begin(), vec.end());
    by_id_.emplace(e.id, entries_.size());
    entries_.push_back(std::move(e));
}

const IndexEntry* CodeIndex::find(std::string_view id) const {
    const auto it = by_id_.find(std::string(id));
    return it == by_id_.end() ? nullptr : &entries_[it->second];
}

void CodeIndex::check_fingerprint(const nlohmann::ordered_json& expected) const {
    if (fingerprint_ == expected) return;
    std::set<std::string> keys;
    for (const auto& [k, v] : fingerprint_.items()) keys.insert(k);
    for (const auto& [k, v] : expected.items()) keys.insert(k);
    std::string diff;
    for (const auto& k : keys) {
        const auto a = fingerprint_.contains(k) ? fingerprint_.at(k).dump() : "<absent>";
        const auto b = expected.contains(k) ? expected.at(k).dump() : "<absent>";
        if (a != b) {
            if (!diff.empty()) diff += ", ";
            diff += k + ": index " + a + " vs query " + b;
        }
    }
    throw Error(ErrorCode::kFingerprintMismatch, "index was built with a different configuration (" +
                                                     diff + ")");
}

bool CodeIndex::operator==(const CodeIndex& other) const {
    return dim_ == other.dim_ && fingerprint_ == other.fingerprint_ && entries_ == other.entries_;
}

void write_index(const CodeIndex& index, std::ostream& out) {
    out.write(kMagic, sizeof kMagic);
    put_le<std::uint32_t>(out, kIndexVersion);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(index.dim()));
    put_le<std::uint64_t>(out, index.size());
    const std::string fp = index.fingerprint().dump();
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(fp.size()));
    out.write(fp.data(), static_cast<std::streamsize>(fp.size()));
    for (const auto& e : index.entries()) {
        put_le<std::uint32_t>(out, static_cast<std::uint32_t>(e.id.size()));
        out.write(e.id.data(), static_cast<std::streamsize>(e.id.size()));
        for (float f : e.vector) {
            put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(f));
        }
    }
    if (!out) {
        throw Error(ErrorCode::kIoError, "failed writing index");
    }
}

CodeIndex read_index(std::istream& in) {
    if (get_bytes(in, sizeof kMagic) != std::string(kMagic, sizeof kMagic)) {
        throw Error(ErrorCode::kMalformedFile, "not an index file");
    }
    const auto version = get_le<std::uint32_t>(in);
    if (version != kIndexVersion) {
        throw Error(ErrorCode::kMalformedFile, "unsupported index version " + std::to_string(version));
    }
    const auto dim = get_le<std::uint32_t>(in);
    const auto count = get_le<std::uint64_t>(in);
    const auto fp_len = get_le<std::uint32_t>(in);
    nlohmann::ordered_json fp;
    try {
        fp = nlohmann::ordered_json::parse(get_bytes(in, fp_len));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kMalformedFile, std::string("index fingerprint: ") + e.what());
    }
    CodeIndex index(dim, std::move(fp));
    std::vector<double> vec(dim);
    for (std::uint64_t i = 0; i < count; ++i) {
        const auto id_len = get_le<std::uint32_t>(in);
        std::string id = get_bytes(in, id_len);
        for (auto& x : vec) {
            x = std::bit_cast<float>(get_le<std::uint32_t>(in));
        }
        index.add(std::move(id), vec);
    }
    return index;
}

void save_index(const CodeIndex& index, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::kIoError, "cannot write " + path.string());
    }
    write_index(index, out);
}

CodeIndex load_index(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::kFileNotFound, "cannot open index " + path.string());
    }
    return read_index(in);
}

BuildResult build_index(std::span<const SourceSnippet> corpus, const Pipeline& pipeline,
                        std::size_t batch_size, const ProgressFn& progress) {
    const auto results = encode_corpus(corpus, pipeline, batch_size, progress);
    BuildResult out;
    out.index = CodeIndex(pipeline.encoder.dim(), pipeline.fingerprint());
    for (const auto& r : results) {
        if (r.fell_back) ++out.fell_back;
        out.dropped_blocks += r.dropped_blocks;
        if (!r.ok()) {
            out.skipped.push_back({r.id, r.error, r.message});
            continue;
        }
        try {
            out.index.add(r.id, *r.representation);
        } catch (const Error& e) {
            out.skipped.push_back({r.id, e.code(), e.what()});
        }
    }
    if (out.index.size() == 0) {
        std::string first = out.skipped.empty() ? "" : ": " + out.skipped.front().message;
        throw Error(ErrorCode::kAllSnippetsFailed, "no snippet could be indexed" + first);
    }
    return out;
}

std::vector<Hit> top_k(const std::vector<std::string>& ids, std::span<const double> scores, std::size_t k) {
    std::vector<std::size_t> order(ids.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto less = [&](std::size_t a, std::size_t b) {
        return ranks_before(scores[a], ids[a], scores[b], ids[b]);
    };
    k = std::min(k, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(), less);
    std::vector<Hit> hits;
    hits.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        hits.push_back({ids[order[i]], scores[order[i]]});
    }
    return hits;
}

std::size_t rank_of(const std::vector<std::string>& ids, std::span<const double> scores, std::size_t target) {
    std::size_t rank = 1;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i != target && ranks_before(scores[i], ids[i], scores[target], ids[target])) {
            ++rank;
        }
    }
    return rank;
}

std::vector<double> score_entries(const CodeIndex& index, std::span<const double> query, Similarity sim) {
    if (query.size() != index.dim()) {
        throw Error(ErrorCode::kDimMismatch, "query dimension " + std::to_string(query.size()) +
                                                 " does not match index dimension " +
                                                 std::to_string(index.dim()));
    }
    const double qn = l2_norm(query);
    if (sim == Similarity::kCosine && qn == 0.0) {
        throw Error(ErrorCode::kZeroVector, "query embedding is zero");
    }
    std::vector<double> out(index.size());
    for (std::size_t i = 0; i < index.size(); ++i) {
        const auto& v = index.entries()[i].vector;
        double dotp = 0.0;
        double cn = 0.0;
        double dist = 0.0;
        for (std::size_t d = 0; d < v.size(); ++d) {
            const double c = v[d];
            dotp += query[d] * c;
            cn += c * c;
            dist += (query[d] - c) * (query[d] - c);
        }
        if (sim == Similarity::kCosine) {
            out[i] = cn == 0.0 ? 0.0 : dotp / (qn * std::sqrt(cn));
        } else {
            out[i] = -std::sqrt(dist);
        }
    }
    return out;
}

DenseRanker::DenseRanker(const CodeIndex& index, const Encoder& encoder, Similarity sim)
    : index_(index), encoder_(encoder), sim_(sim) {
    ids_.reserve(index.size());
    for (const auto& e : index.entries()) ids_.push_back(e.id);
}

std::vector<double> DenseRanker::scores(std::string_view query, std::string_view query_id) const {
    return score_entries(index_, encode_query(query, encoder_, query_id), sim_);
}

Bm25Index::Bm25Index(std::span<const SourceSnippet> corpus) {
    ids_.reserve(corpus.size());
    tf_.reserve(corpus.size());
    std::size_t total = 0;
    for (const auto& s : corpus) {
        ids_.push_back(s.id);
        auto& tf = tf_.emplace_back();
        std::size_t len = 0;
        for (auto& tok : tokenize(s.text)) {
            ++tf[std::move(tok.text)];
            ++len;
        }
        for (const auto& [term, count] : tf) ++df_[term];
        doc_len_.push_back(len);
        total += len;
    }
    avg_len_ = corpus.empty() ? 0.0 : static_cast<double>(total) / static_cast<double>(corpus.size());
}

double Bm25Index::idf(const std::string& term) const {
    const auto it = df_.find(term);
    const double n = it == df_.end() ? 0.0 : static_cast<double>(it->second);
    const double big_n = static_cast<double>(ids_.size());
    return std::log(1.0 + (big_n - n + 0.5) / (n + 0.5));
}

std::vector<double> Bm25Index::scores(std::string_view query, std::string_view) const {
    std::set<std::string> terms;
    for (auto& tok : tokenize(query)) terms.insert(std::move(tok.text));
    std::vector<double> out(ids_.size(), 0.0);
    for (const auto& term : terms) {
        if (df_.count(term) == 0) continue;
        const double w = idf(term);
        for (std::size_t i = 0; i < ids_.size(); ++i) {
            const auto it = tf_[i].find(term);
            if (it == tf_[i].end()) continue;
            const double tf = static_cast<double>(it->second);
            const double norm = avg_len_ == 0.0 ? 1.0 : static_cast<double>(doc_len_[i]) / avg_len_;
            out[i] += w * tf * (kK1 + 1.0) / (tf + kK1 * (1.0 - kB + kB * norm));
        }
    }
    return out;
}

SearchResult search(const Ranker& ranker, std::string_view query, std::size_t k, std::string_view query_id) {
    const auto scores = ranker.scores(query, query_id);
    return SearchResult{top_k(ranker.ids(), scores, k), std::nullopt};
}

SearchResult search(const CodeIndex& index, std::string_view query, const Pipeline& pipeline,
                    std::size_t k, Similarity sim) {
    index.check_fingerprint(pipeline.fingerprint());
    const DenseRanker ranker(index, pipeline.encoder, sim);
    return search(ranker, query, k);
}

SearchResult bm25_search(std::span<const SourceSnippet> corpus, std::string_view query, std::size_t k) {
    const Bm25Index bm25(corpus);
    return search(bm25, query, k);
}

}  // namespace lcr
