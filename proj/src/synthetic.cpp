// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#include "lcr/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <unordered_set>

#include "lcr/error.hpp"
#include "lcr/pipeline.hpp"
#include "lcr/rng.hpp"
#include "lcr/tokenizer.hpp"

namespace lcr {

namespace {

constexpr const char* kFiller[] = {
    "data",    "value",   "item",    "result",  "index",   "count",   "total",   "config",
    "buffer",  "node",    "path",    "name",    "size",    "offset",  "cache",   "state",
    "key",     "entry",   "record",  "line",    "token",   "parser",  "handler", "request",
    "reply",   "limit",   "flag",    "mode",    "status",  "queue",   "stack",   "source",
    "target",  "chunk",   "field",   "option",  "error",   "message", "user",    "stream",
    "table",   "width",   "height",  "score",   "weight",  "column",  "row",     "matrix",
    "vector",  "frame",   "image",   "pixel",   "color",   "label",   "group",   "batch",
    "model",   "layer",   "input",   "output",  "param",   "session", "client",  "server",
    "socket",  "packet",  "header",  "body",    "payload", "schema",  "query",   "cursor",
    "page",    "window",  "event",   "signal",  "timer",   "clock",   "delay",   "retry",
    "lock",    "thread",  "task",    "worker",  "job",     "pool",    "graph",   "edge",
    "vertex",  "tree",    "leaf",    "root",    "parent",  "child",   "list",    "array",
    "map",     "set",     "text",    "word",    "char",    "byte",    "bit",     "mask",
    "hash",    "digest",  "cipher",  "secret",  "account", "order",   "price",   "amount",
    "unit",    "scale",   "ratio",   "range",   "bound",   "step",    "phase",   "stage",
};

constexpr const char* kVerbs[] = {
    "get", "load", "build", "parse", "update", "compute", "read", "write", "check", "merge",
};

constexpr const char* kSyllables[] = {
    "ba", "ko", "ri", "zu", "te", "mo", "la", "ne", "vi", "dra", "xo", "quo",
    "pe", "shi", "gu", "fa", "jo", "wy", "ska", "thu", "ev", "ix", "op", "ul",
};

template <std::size_t N>
const char* pick(const char* const (&words)[N], Rng& rng) {
    return words[uniform_below(rng, N)];
}

class WordMint {
public:
    explicit WordMint(Rng& rng) : rng_(rng) {
        for (const char* w : kFiller) used_.insert(w);
        for (const char* w : kVerbs) used_.insert(w);
    }

    std::string fresh() {
        for (;;) {
            std::string w;
            const std::size_t parts = 3 + uniform_below(rng_, 2);
            for (std::size_t i = 0; i < parts; ++i) w += pick(kSyllables, rng_);
            if (used_.insert(w).second) return w;
        }
    }

private:
    Rng& rng_;
    std::unordered_set<std::string> used_;
};

std::string indent(std::size_t level) { return std::string(4 * level, ' '); }

std::string ident(Rng& rng) {
    return std::string(pick(kFiller, rng)) + "_" + pick(kFiller, rng);
}

// Appends one statement (possibly compound) at the given depth.
void filler_statement(std::string& code, std::size_t depth, Rng& rng) {
    const auto kind = depth >= 3 ? uniform_below(rng, 2) : uniform_below(rng, 5);
    const std::string pad = indent(depth);
    switch (kind) {
        case 0:
            code += pad + ident(rng) + " = " + pick(kVerbs, rng) + "_" + pick(kFiller, rng) + "(" +
                    pick(kFiller, rng) + ", " + pick(kFiller, rng) + ")\n";
            break;
        case 1:
            code += pad + pick(kFiller, rng) + "." + pick(kVerbs, rng) + "(" + ident(rng) + ")\n";
            break;
        case 2: {
            code += pad + "if " + pick(kFiller, rng) + "." + pick(kFiller, rng) + " > " +
                    std::to_string(uniform_below(rng, 100)) + ":\n";
            const auto body = 1 + uniform_below(rng, 3);
            for (std::uint64_t i = 0; i < body; ++i) filler_statement(code, depth + 1, rng);
            if (uniform_below(rng, 2) == 0) {
                code += pad + "else:\n";
                filler_statement(code, depth + 1, rng);
            }
            break;
        }
        case 3: {
            code += pad + "for " + pick(kFiller, rng) + " in " + ident(rng) + ":\n";
            const auto body = 1 + uniform_below(rng, 3);
            for (std::uint64_t i = 0; i < body; ++i) filler_statement(code, depth + 1, rng);
            break;
        }
        default:
            code += pad + "while " + pick(kFiller, rng) + " < " + pick(kFiller, rng) + ":\n";
            filler_statement(code, depth + 1, rng);
            code += indent(depth + 1) + "break\n";
            break;
    }
}

void planted_statements(std::string& code, const std::vector<std::string>& kw, Rng& rng) {
    // An if block that mentions every keyword three times.
    std::string lhs = kw[0];
    for (std::size_t i = 1; i < kw.size(); ++i) lhs += "_" + kw[i];
    std::string args;
    for (std::size_t i = kw.size(); i-- > 0;) {
        if (!args.empty()) args += ", ";
        args += kw[i];
    }
    code += indent(1) + "if " + kw[0] + " is not None:\n";
    code += indent(2) + lhs + " = " + pick(kVerbs, rng) + "(" + args + ")\n";
    for (std::size_t i = 1; i < kw.size(); ++i) {
        code += indent(2) + kw[i] + " = " + lhs + "." + kw[i] + "\n";
    }
    code += indent(2) + pick(kFiller, rng) + ".append(" + lhs + ")\n";
}

std::string make_query(const std::vector<std::string>& kw, Rng& rng) {
    std::vector<std::string> words = kw;
    shuffle(words, rng);
    std::string q = pick(kVerbs, rng);
    for (const auto& w : words) q += " " + w;
    return q;
}

}  // namespace

SyntheticCorpus generate_corpus(const SyntheticConfig& cfg) {
    if (cfg.n == 0 || cfg.keywords == 0 || !(cfg.late_fraction >= 0.0 && cfg.late_fraction <= 1.0)) {
        throw Error(ErrorCode::kInvalidConfig, "synthetic corpus needs n > 0, keywords > 0, fraction in [0,1]");
    }
    Rng rng(cfg.seed);
    WordMint mint(rng);
    SyntheticCorpus out;
    const auto late_count = static_cast<std::size_t>(cfg.late_fraction * static_cast<double>(cfg.n) + 0.5);

    std::vector<char> late(cfg.n, 0);
    std::fill(late.begin(), late.begin() + static_cast<std::ptrdiff_t>(late_count), 1);
    shuffle(late, rng);

    for (std::size_t i = 0; i < cfg.n; ++i) {
        char id[32];
        std::snprintf(id, sizeof id, "syn-%05zu", i);
        std::vector<std::string> kw;
        for (std::size_t k = 0; k < cfg.keywords; ++k) kw.push_back(mint.fresh());

        std::string code = "def " + std::string(pick(kVerbs, rng)) + "_" + pick(kFiller, rng) + "_" +
                           std::to_string(i) + "(" + pick(kFiller, rng) + ", " + pick(kFiller, rng) + "):\n";
        if (late[i]) {
            const std::size_t plant_at = kTruncationLimit + 40 + uniform_below(rng, 200);
            while (count_tokens(code) < plant_at) filler_statement(code, 1, rng);
            planted_statements(code, kw, rng);
            // Keep the keywords mid-function, clear of the trailing pieces
            // the floor window policy drops.
            const std::size_t end_at = count_tokens(code) + 250 + uniform_below(rng, 250);
            while (count_tokens(code) < end_at) filler_statement(code, 1, rng);
        } else {
            filler_statement(code, 1, rng);
            planted_statements(code, kw, rng);
            const std::size_t target = 60 + uniform_below(rng, 140);
            while (count_tokens(code) < target) filler_statement(code, 1, rng);
        }
        code += indent(1) + "return " + pick(kFiller, rng) + "\n";

        CorpusRecord r;
        r.id = id;
        r.language = "python";
        r.code = std::move(code);
        r.query = make_query(kw, rng);
        r.token_length = count_tokens(r.code);
        if (late[i]) out.late_ids.push_back(r.id);
        out.records.push_back(std::move(r));
    }
    return out;
}

std::size_t first_keyword_token(const CorpusRecord& record) {
    std::set<std::string> keywords;
    if (record.query) {
        const auto q = tokenize(*record.query);
        for (std::size_t i = 1; i < q.size(); ++i) keywords.insert(q[i].text);  // skip the verb
    }
    const auto toks = tokenize(record.code);
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (keywords.count(toks[i].text) != 0) return i;
    }
    return toks.size();
}

PlantedDataset planted_block_dataset(std::size_t n, const Encoder& encoder, std::uint64_t seed) {
    constexpr std::size_t kTopicWords = 64;
    constexpr std::size_t kKeywords = 4;
    constexpr std::size_t kBlockTokens = 16;

    Rng rng(seed);
    WordMint mint(rng);
    std::vector<std::string> topic;
    for (std::size_t i = 0; i < kTopicWords; ++i) topic.push_back(mint.fresh());

    PlantedDataset out;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::string> kw;
        for (std::size_t k : sample_indices(kTopicWords, kKeywords, rng)) kw.push_back(topic[k]);
        shuffle(kw, rng);

        const std::size_t blocks = 3 + uniform_below(rng, 4);
        const std::size_t planted = uniform_below(rng, blocks);
        TrainExample ex;
        const std::string sid = "planted-" + std::to_string(i);
        for (std::size_t b = 0; b < blocks; ++b) {
            std::string text;
            for (std::size_t t = 0; t < kBlockTokens; ++t) {
                if (!text.empty()) text += ' ';
                text += pick(kFiller, rng);
            }
            if (b == planted) {
                for (const auto& w : kw) text += " " + w;
            }
            const std::string bid = block_id(sid, b);
            ex.blocks.push_back(encoder.encode({bid, text}));
        }
        std::string query;
        for (const auto& w : kw) query += (query.empty() ? "" : " ") + w;
        ex.query = encode_query(query, encoder, sid);
        out.examples.push_back(std::move(ex));
        out.planted.push_back(planted);
    }
    return out;
}

}  // namespace lcr
