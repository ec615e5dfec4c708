// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

// Independent reference implementations shared by the unit and acceptance
// tests. Nothing here calls into the library's numeric code.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <tree_sitter/api.h>

#include "lcr/fusion.hpp"
#include "lcr/grammar.hpp"
#include "lcr/split.hpp"
#include "lcr/train.hpp"

namespace oracle {

inline std::uint64_t fnv(const std::string& s, std::uint64_t h) {
    for (unsigned char c : s) {
        h = (h ^ c) * 1099511628211ULL;
    }
    return h;
}

// Counts window starts by walking the piece list.
inline std::size_t block_count(std::size_t n, std::size_t w, std::size_t s, bool include_tail) {
    if (n < w) return 1;
    std::size_t count = 0;
    std::size_t last_end = 0;
    for (std::size_t start = 0; start + w <= n; start += s) {
        ++count;
        last_end = start + w;
    }
    if (include_tail && last_end != n) ++count;
    return count;
}

inline std::vector<double> softmax(const std::vector<double>& logits) {
    long double mx = logits[0];
    for (double x : logits) mx = std::max<long double>(mx, x);
    long double z = 0;
    std::vector<long double> e;
    for (double x : logits) {
        e.push_back(std::exp(static_cast<long double>(x) - mx));
        z += e.back();
    }
    std::vector<double> out;
    for (auto v : e) out.push_back(static_cast<double>(v / z));
    return out;
}

inline std::vector<double> logits(const std::vector<std::vector<double>>& embs, const lcr::FusionParams& p) {
    const int layers = lcr::attention_layers(p.method);
    std::vector<double> out;
    for (const auto& e : embs) {
        long double a = p.b2;
        if (layers == 1) {
            for (std::size_t d = 0; d < e.size(); ++d) a += static_cast<long double>(p.w2[d]) * e[d];
        } else {
            for (std::size_t h = 0; h < p.hidden; ++h) {
                long double z = p.b1[h];
                for (std::size_t d = 0; d < e.size(); ++d) {
                    z += static_cast<long double>(p.w1[d * p.hidden + h]) * e[d];
                }
                a += p.w2[h] * std::tanh(z);
            }
        }
        out.push_back(static_cast<double>(a));
    }
    return out;
}

inline std::vector<double> fuse(const std::vector<std::vector<double>>& embs, const lcr::FusionParams& p) {
    using M = lcr::FusionMethod;
    const std::size_t k = embs.size();
    const std::size_t dim = embs[0].size();
    std::vector<double> mean(dim, 0.0), mx(dim, -INFINITY), attn(dim, 0.0);
    for (const auto& e : embs) {
        for (std::size_t d = 0; d < dim; ++d) {
            mean[d] += e[d] / static_cast<double>(k);
            mx[d] = std::max(mx[d], e[d]);
        }
    }
    if (p.method == M::kMean) return mean;
    if (p.method == M::kMax) return mx;
    const auto alpha = softmax(logits(embs, p));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t d = 0; d < dim; ++d) attn[d] += alpha[i] * embs[i][d];
    }
    std::vector<double> out = attn;
    if (p.method == M::kAttn1Mean || p.method == M::kAttn2Mean) {
        for (std::size_t d = 0; d < dim; ++d) out[d] += mean[d];
    } else if (p.method == M::kAttn1Max || p.method == M::kAttn2Max) {
        for (std::size_t d = 0; d < dim; ++d) out[d] += mx[d];
    }
    return out;
}

inline double mrr(const std::vector<std::size_t>& ranks) {
    double s = 0;
    for (auto r : ranks) s += 1.0 / static_cast<double>(r);
    return s / static_cast<double>(ranks.size());
}

inline double recall(const std::vector<std::size_t>& ranks, std::size_t k) {
    std::size_t hit = 0;
    for (auto r : ranks) hit += r <= k ? 1 : 0;
    return static_cast<double>(hit) / static_cast<double>(ranks.size());
}

// Okapi BM25 over pre-tokenized documents, summing each distinct query term once.
inline std::vector<double> bm25(const std::vector<std::vector<std::string>>& docs,
                                const std::vector<std::string>& query) {
    const double k1 = 1.2, b = 0.75;
    double avg = 0;
    for (const auto& d : docs) avg += static_cast<double>(d.size());
    avg /= static_cast<double>(docs.size());
    std::set<std::string> terms(query.begin(), query.end());
    std::vector<double> out(docs.size(), 0.0);
    for (const auto& t : terms) {
        double n = 0;
        for (const auto& d : docs) n += std::count(d.begin(), d.end(), t) > 0 ? 1 : 0;
        if (n == 0) continue;
        const double big_n = static_cast<double>(docs.size());
        const double idf = std::log(1.0 + (big_n - n + 0.5) / (n + 0.5));
        for (std::size_t i = 0; i < docs.size(); ++i) {
            const double f = static_cast<double>(std::count(docs[i].begin(), docs[i].end(), t));
            if (f == 0) continue;
            out[i] += idf * f * (k1 + 1) / (f + k1 * (1 - b + b * static_cast<double>(docs[i].size()) / avg));
        }
    }
    return out;
}

inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    long double ab = 0, aa = 0, bb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += static_cast<long double>(a[i]) * b[i];
        aa += static_cast<long double>(a[i]) * a[i];
        bb += static_cast<long double>(b[i]) * b[i];
    }
    return static_cast<double>(ab / std::sqrt(aa * bb));
}

// Byte offsets every piece boundary must respect for one composite node:
// the node start, and the end of its header (start of the body, or just
// past an opening token of the body).
inline void composite_offsets(TSNode node, const lcr::CompositeRule& rule, const lcr::GrammarRoles& roles,
                              std::vector<std::uint32_t>& starts, std::vector<std::uint32_t>& cuts) {
    TSNode body{};
    for (const auto& f : rule.body_fields) {
        body = ts_node_child_by_field_name(node, f.c_str(), static_cast<std::uint32_t>(f.size()));
        if (!ts_node_is_null(body)) break;
    }
    if (ts_node_is_null(body)) {
        for (std::uint32_t i = 0; i < ts_node_named_child_count(node) && ts_node_is_null(body); ++i) {
            TSNode c = ts_node_named_child(node, i);
            if (std::find(rule.body_types.begin(), rule.body_types.end(), ts_node_type(c)) != rule.body_types.end()) {
                body = c;
            }
        }
    }
    if (!rule.body_must_be.empty()) {
        if (ts_node_is_null(body)) return;
        if (std::find(rule.body_must_be.begin(), rule.body_must_be.end(), ts_node_type(body)) ==
            rule.body_must_be.end()) {
            return;
        }
    }
    starts.push_back(ts_node_start_byte(node));
    if (!ts_node_is_null(body)) {
        std::uint32_t cut = ts_node_start_byte(body);
        if (ts_node_child_count(body) > 0) {
            TSNode first = ts_node_child(body, 0);
            if (!ts_node_is_named(first) && roles.is_opener(ts_node_type(first))) cut = ts_node_end_byte(first);
        }
        cuts.push_back(cut);
    } else if (!rule.header_until.empty()) {
        for (std::uint32_t i = 0; i < ts_node_child_count(node); ++i) {
            TSNode c = ts_node_child(node, i);
            if (!ts_node_is_named(c) && rule.header_until == ts_node_type(c)) {
                cuts.push_back(ts_node_end_byte(c));
                break;
            }
        }
    }
}

inline void walk(TSNode node, const lcr::GrammarRoles& roles, std::vector<std::uint32_t>& starts,
                 std::vector<std::uint32_t>& cuts) {
    if (ts_node_is_named(node) && ts_node_end_byte(node) > ts_node_start_byte(node)) {
        if (const auto* rule = roles.find(ts_node_type(node))) composite_offsets(node, *rule, roles, starts, cuts);
    }
    for (std::uint32_t i = 0; i < ts_node_child_count(node); ++i) walk(ts_node_child(node, i), roles, starts, cuts);
}

struct PartitionCheck {
    bool lossless = false;
    std::size_t headers = 0;
    std::size_t misaligned = 0;
    bool has_error_nodes = false;
};

// Reconstructs the text from piece spans and gaps, then checks every
// composite header against the piece boundaries.
inline PartitionCheck check_partition(const lcr::SourceSnippet& s, const std::vector<lcr::CodePiece>& pieces) {
    PartitionCheck r;
    std::string rebuilt;
    std::size_t at = 0;
    bool gaps_blank = true;
    for (const auto& p : pieces) {
        if (p.start < at || p.end < p.start || p.end > s.text.size()) return r;
        const std::string gap = s.text.substr(at, p.start - at);
        gaps_blank = gaps_blank && gap.find_first_not_of(" \t\r\n\f\v") == std::string::npos;
        rebuilt += gap;
        rebuilt += p.text;
        at = p.end;
    }
    const std::string tail = s.text.substr(at);
    gaps_blank = gaps_blank && tail.find_first_not_of(" \t\r\n\f\v") == std::string::npos;
    rebuilt += tail;
    r.lossless = gaps_blank && rebuilt == s.text;

    const auto lang = *lcr::parse_language(s.language);
    const auto tree = lcr::parse_source(lang, s.text);
    r.has_error_nodes = ts_node_has_error(tree.root());
    std::vector<std::uint32_t> starts, cuts;
    walk(tree.root(), lcr::default_roles(lang), starts, cuts);
    r.headers = starts.size();
    std::set<std::size_t> piece_starts;
    for (const auto& p : pieces) piece_starts.insert(p.start);
    for (auto x : starts) r.misaligned += piece_starts.count(x) == 0 ? 1 : 0;
    for (auto x : cuts) {
        for (const auto& p : pieces) {
            if (p.start < x && x < p.end) {
                ++r.misaligned;
                break;
            }
        }
    }
    return r;
}

// Relative error ||g - g_fd|| / max(||g||, ||g_fd||) between the analytic
// gradient and central differences of the loss.
inline double gradient_relative_error(const std::vector<lcr::TrainPair>& pairs, const lcr::FusionParams& params,
                                      double tau, double h = 1e-6) {
    const auto analytic = lcr::loss_and_gradient(pairs, params, tau).grad.flatten();
    auto theta = params.flatten();
    lcr::FusionParams probe = params;
    long double diff = 0, na = 0, nf = 0;
    for (std::size_t k = 0; k < theta.size(); ++k) {
        const double saved = theta[k];
        theta[k] = saved + h;
        probe.assign(theta);
        const double up = lcr::loss_and_gradient(pairs, probe, tau).loss;
        theta[k] = saved - h;
        probe.assign(theta);
        const double down = lcr::loss_and_gradient(pairs, probe, tau).loss;
        theta[k] = saved;
        const double fd = (up - down) / (2 * h);
        diff += (analytic[k] - fd) * (analytic[k] - fd);
        na += analytic[k] * analytic[k];
        nf += fd * fd;
    }
    const long double scale = std::max(std::sqrt(na), std::sqrt(nf));
    return scale == 0 ? 0.0 : static_cast<double>(std::sqrt(diff) / scale);
}

}  // namespace oracle

namespace testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("lcr-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string operator/(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

inline void spit(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

// Every file of the bundled AST corpus, sorted by path.
inline std::vector<lcr::SourceSnippet> ast_corpus(const std::filesystem::path& root) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
        if (e.is_regular_file()) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<lcr::SourceSnippet> out;
    for (const auto& f : files) {
        const auto lang = lcr::language_for_extension(f.extension().string());
        if (!lang) continue;
        out.push_back({f.filename().string(), std::string(lcr::language_name(*lang)), slurp(f)});
    }
    return out;
}

}  // namespace testing
