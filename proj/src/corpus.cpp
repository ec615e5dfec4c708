// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#include "lcr/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "json.hpp"
#include "lcr/error.hpp"
#include "lcr/language.hpp"
#include "lcr/tokenizer.hpp"

namespace lcr {

namespace {

CorpusRecord parse_record(const std::string& line) {
    const auto j = nlohmann::json::parse(line);
    if (!j.is_object()) {
        throw std::invalid_argument("line is not a JSON object");
    }
    CorpusRecord r;
    for (const char* key : {"id", "language", "code"}) {
        if (!j.contains(key) || !j.at(key).is_string()) {
            throw std::invalid_argument(std::string("missing string field '") + key + "'");
        }
    }
    r.id = j.at("id").get<std::string>();
    r.language = j.at("language").get<std::string>();
    r.code = j.at("code").get<std::string>();
    if (r.id.empty()) {
        throw std::invalid_argument("empty id");
    }
    if (!parse_language(r.language)) {
        throw std::invalid_argument("unsupported language '" + r.language + "'");
    }
    if (j.contains("query") && !j.at("query").is_null()) {
        if (!j.at("query").is_string()) throw std::invalid_argument("query is not a string");
        r.query = j.at("query").get<std::string>();
    }
    if (j.contains("token_length") && !j.at("token_length").is_null()) {
        if (!j.at("token_length").is_number_unsigned()) {
            throw std::invalid_argument("token_length is not a non-negative integer");
        }
        r.token_length = j.at("token_length").get<std::size_t>();
    }
    return r;
}

}  // namespace

IngestResult read_corpus(std::istream& in, const IngestOptions& options) {
    IngestResult out;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    std::size_t non_blank = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ++non_blank;
        CorpusRecord r;
        try {
            r = parse_record(line);
        } catch (const std::exception& e) {
            out.skipped.push_back({line_no, e.what()});
            continue;
        }
        if (!seen.insert(r.id).second) {
            out.skipped.push_back({line_no, "duplicate id '" + r.id + "'"});
            continue;
        }
        if (options.require_query && (!r.query || r.query->empty())) {
            continue;
        }
        out.records.push_back(std::move(r));
    }
    if (non_blank == 0 || out.skipped.size() == non_blank) {
        throw Error(ErrorCode::kAllLinesMalformed,
                    non_blank == 0 ? "corpus has no records" : "every corpus line is malformed");
    }
    return out;
}

IngestResult ingest_corpus(const std::filesystem::path& path, const IngestOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::kFileNotFound, "cannot open corpus " + path.string());
    }
    return read_corpus(in, options);
}

void write_corpus(std::span<const CorpusRecord> records, std::ostream& out) {
    for (const auto& r : records) {
        nlohmann::ordered_json j;
        j["id"] = r.id;
        j["language"] = r.language;
        j["code"] = r.code;
        if (r.query) j["query"] = *r.query;
        if (r.token_length) j["token_length"] = *r.token_length;
        out << j.dump() << '\n';
    }
}

void save_corpus(std::span<const CorpusRecord> records, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::kIoError, "cannot write " + path.string());
    }
    write_corpus(records, out);
}

std::vector<SourceSnippet> to_snippets(std::span<const CorpusRecord> records) {
    std::vector<SourceSnippet> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        out.push_back({r.id, r.language, r.code});
    }
    return out;
}

std::vector<QueryRecord> to_queries(std::span<const CorpusRecord> records) {
    std::vector<QueryRecord> out;
    for (const auto& r : records) {
        if (!r.query || r.query->empty()) continue;
        out.push_back({r.id, *r.query, r.id, r.token_length ? *r.token_length : count_tokens(r.code)});
    }
    return out;
}

}  // namespace lcr
