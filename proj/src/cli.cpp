// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#include "lcr/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lcr/batch.hpp"
#include "lcr/corpus.hpp"
#include "lcr/error.hpp"
#include "lcr/eval.hpp"
#include "lcr/fusion.hpp"
#include "lcr/index.hpp"
#include "lcr/language.hpp"
#include "lcr/pipeline.hpp"
#include "lcr/split.hpp"
#include "lcr/synthetic.hpp"
#include "lcr/train.hpp"

namespace lcr {

namespace {

using ojson = nlohmann::ordered_json;

struct PipelineFlags {
    std::string split = "ast";
    std::size_t window = 32;
    std::size_t step = 16;
    std::string tail = "floor";
    std::string fusion = "attn1+mean";
    std::string encoder = "builtin";
    std::size_t dim = 256;
    std::string params;
    std::size_t batch_size = 64;
    std::uint64_t seed = 0;
    std::string mode = "multi-block";
};

const std::vector<std::string> kFusionNames = {"mean",       "max",        "attn1",     "attn2",
                                               "attn1+mean", "attn2+mean", "attn1+max", "attn2+max"};

void add_pipeline_flags(CLI::App* cmd, PipelineFlags& f) {
    cmd->add_option("--split", f.split, "Splitting strategy")
        ->check(CLI::IsMember({"space", "token", "line", "ast"}))
        ->capture_default_str();
    cmd->add_option("--window", f.window, "Pieces per block")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--step", f.step, "Pieces between block starts")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--tail", f.tail, "Trailing pieces policy")
        ->check(CLI::IsMember({"floor", "include"}))
        ->capture_default_str();
    cmd->add_option("--fusion", f.fusion, "Fusion method")->check(CLI::IsMember(kFusionNames))->capture_default_str();
    cmd->add_option("--encoder", f.encoder, "builtin or table:PATH")->capture_default_str();
    cmd->add_option("--dim", f.dim, "Builtin encoder dimension")->check(CLI::Range(2, 1 << 20))->capture_default_str();
    cmd->add_option("--params", f.params, "fusion.params file (default: zero-initialized)");
    cmd->add_option("--batch-size", f.batch_size, "Snippets per encoder batch")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--seed", f.seed, "Random seed")->capture_default_str();
    cmd->add_option("--mode", f.mode, "multi-block or truncate (first 256 tokens)")
        ->check(CLI::IsMember({"multi-block", "truncate"}))
        ->capture_default_str();
}

PipelineConfig to_config(const PipelineFlags& f) {
    PipelineConfig c;
    c.split.kind = *parse_split_kind(f.split);
    c.window.window = f.window;
    c.window.step = f.step;
    c.window.tail = *parse_tail_policy(f.tail);
    c.fusion = *parse_fusion_method(f.fusion);
    if (f.encoder == "builtin") {
        c.encoder.kind = EncoderKind::kBuiltinHash;
        c.encoder.dim = f.dim;
    } else if (f.encoder.rfind("table:", 0) == 0 && f.encoder.size() > 6) {
        c.encoder.kind = EncoderKind::kExternalTable;
        c.encoder.table_path = f.encoder.substr(6);
        c.encoder.normalization = Normalization::kNone;
    } else {
        throw Error(ErrorCode::kInvalidConfig, "--encoder must be 'builtin' or 'table:PATH'");
    }
    c.params_path = f.params;
    c.batch_size = f.batch_size;
    c.seed = f.seed;
    c.mode = *parse_index_mode(f.mode);
    c.validate();
    return c;
}

// Owns the objects a Pipeline view refers to.
class Runtime {
public:
    explicit Runtime(const PipelineFlags& flags)
        : config_(to_config(flags)),
          grammars_(GrammarRegistry::from_environment()),
          encoder_(make_encoder(config_.encoder)),
          params_(resolve_params(config_, encoder_->dim())) {}

    Runtime(PipelineConfig config, const Runtime& base)
        : config_(std::move(config)),
          grammars_(base.grammars_),
          encoder_(make_encoder(config_.encoder)),
          params_(resolve_params(config_, encoder_->dim())) {}

    Pipeline pipeline() const { return Pipeline{config_, *encoder_, params_, grammars_}; }
    const PipelineConfig& config() const { return config_; }
    const Encoder& encoder() const { return *encoder_; }

private:
    PipelineConfig config_;
    GrammarRegistry grammars_;
    std::unique_ptr<Encoder> encoder_;
    FusionParams params_;
};

ProgressFn progress_to(std::ostream& err, std::string label) {
    return [&err, label = std::move(label)](std::size_t done, std::size_t total) {
        err << "[" << label << "] " << done << "/" << total << " snippets\n";
    };
}

IngestResult load_corpus(const std::string& path, std::ostream& err, bool require_query = false) {
    IngestResult r = ingest_corpus(path, IngestOptions{require_query});
    for (const auto& s : r.skipped) {
        err << "skipped corpus line " << s.line << ": " << s.reason << '\n';
    }
    return r;
}

ojson skipped_json(const std::vector<SkippedSnippet>& skipped) {
    ojson arr = ojson::array();
    for (const auto& s : skipped) {
        arr.push_back({{"id", s.id}, {"error", error_name(s.error)}, {"message", s.message}});
    }
    return arr;
}

ojson hits_json(const SearchResult& r) {
    ojson arr = ojson::array();
    for (std::size_t i = 0; i < r.hits.size(); ++i) {
        arr.push_back({{"rank", i + 1}, {"id", r.hits[i].id}, {"score", r.hits[i].score}});
    }
    return arr;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::kFileNotFound, "cannot open " + path);
    }
    return std::string(std::istreambuf_iterator<char>(in), {});
}

// ---- split ----

struct SplitArgs {
    std::string strategy = "ast";
    std::string language;
    std::string file;
};

int cmd_split(const SplitArgs& a, std::ostream& out) {
    SourceSnippet s;
    s.id = a.file;
    s.text = read_file(a.file);
    if (!a.language.empty()) {
        s.language = a.language;
    } else {
        const auto ext = std::filesystem::path(a.file).extension().string();
        if (const auto lang = language_for_extension(ext)) s.language = language_name(*lang);
    }
    SplitStrategy strategy;
    strategy.kind = *parse_split_kind(a.strategy);
    const GrammarRegistry grammars = GrammarRegistry::from_environment();
    for (const auto& p : split(s, strategy, grammars)) {
        ojson j;
        j["index"] = p.index;
        j["start"] = p.start;
        j["end"] = p.end;
        j["text"] = p.text;
        out << j.dump() << '\n';
    }
    return 0;
}

// ---- index ----

struct IndexArgs {
    PipelineFlags flags;
    std::string corpus;
    std::string out;
};

int cmd_index(const IndexArgs& a, std::ostream& out, std::ostream& err) {
    const Runtime rt(a.flags);
    const auto ingest = load_corpus(a.corpus, err);
    const auto snippets = to_snippets(ingest.records);
    const BuildResult built = build_index(snippets, rt.pipeline(), rt.config().batch_size, progress_to(err, "index"));
    save_index(built.index, a.out);
    ojson j;
    j["index"] = a.out;
    j["indexed"] = built.index.size();
    j["skipped"] = skipped_json(built.skipped);
    j["fell_back"] = built.fell_back;
    j["dropped_blocks"] = built.dropped_blocks;
    j["fingerprint"] = built.index.fingerprint();
    out << j.dump() << '\n';
    return 0;
}

// ---- search ----

struct SearchArgs {
    PipelineFlags flags;
    std::string index;
    std::string corpus;
    std::string query;
    std::size_t top_k = 10;
    std::string sim = "cosine";
    bool bm25 = false;
};

int cmd_search(const SearchArgs& a, std::ostream& out, std::ostream& err) {
    SearchResult result;
    ojson j;
    j["query"] = a.query;
    if (a.bm25) {
        if (a.corpus.empty()) {
            throw Error(ErrorCode::kInvalidConfig, "--bm25 needs --corpus");
        }
        const auto snippets = to_snippets(load_corpus(a.corpus, err).records);
        result = bm25_search(snippets, a.query, a.top_k);
        j["ranker"] = "bm25";
    } else {
        if (a.index.empty()) {
            throw Error(ErrorCode::kInvalidConfig, "search needs --index (or --bm25 --corpus)");
        }
        const Runtime rt(a.flags);
        const CodeIndex index = load_index(a.index);
        result = search(index, a.query, rt.pipeline(), a.top_k, *parse_similarity(a.sim));
        j["ranker"] = "dense";
        j["similarity"] = a.sim;
    }
    j["results"] = hits_json(result);
    out << j.dump() << '\n';
    return 0;
}

// ---- eval ----

struct EvalArgs {
    PipelineFlags flags;
    std::string corpus;
    std::string index;
    std::vector<std::string> baselines;
    std::size_t buckets = 5;
    std::string sim = "cosine";
    std::string format = "json";
};

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
    const Runtime rt(a.flags);
    const auto ingest = load_corpus(a.corpus, err);
    const auto snippets = to_snippets(ingest.records);
    const auto queries = to_queries(ingest.records);
    if (queries.empty()) {
        throw Error(ErrorCode::kEmptyInput, "corpus has no records with a query");
    }
    const Similarity sim = *parse_similarity(a.sim);

    CodeIndex index;
    if (!a.index.empty()) {
        index = load_index(a.index);
        index.check_fingerprint(rt.pipeline().fingerprint());
    } else {
        index = build_index(snippets, rt.pipeline(), rt.config().batch_size, progress_to(err, "index")).index;
    }

    std::vector<EvalReport> reports;
    reports.push_back(evaluate(DenseRanker(index, rt.encoder(), sim), queries, a.buckets,
                               std::string(index_mode_name(rt.config().mode))));
    for (const auto& b : a.baselines) {
        if (b == "bm25") {
            reports.push_back(evaluate(Bm25Index(snippets), queries, a.buckets, "bm25"));
        } else {
            PipelineConfig cfg = rt.config();
            cfg.mode = IndexMode::kTruncate;
            const Runtime trt(cfg, rt);
            const CodeIndex tindex =
                build_index(snippets, trt.pipeline(), cfg.batch_size, progress_to(err, "truncate")).index;
            reports.push_back(evaluate(DenseRanker(tindex, trt.encoder(), sim), queries, a.buckets, "truncate"));
        }
    }

    const std::string table = render_table(reports);
    if (a.format == "table") {
        out << table;
        return 0;
    }
    ojson j;
    j["queries"] = queries.size();
    j["candidates"] = index.size();
    ojson arr = ojson::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    j["reports"] = arr;
    j["table"] = table;
    out << j.dump() << '\n';
    return 0;
}

// ---- train-fusion ----

struct TrainArgs {
    PipelineFlags flags;
    std::string corpus;
    std::string out;
    std::string loss_csv;
    std::size_t epochs = 10;
    double learning_rate = 10.0;
    double temperature = 0.05;
    std::size_t max_blocks = 6;
    std::string init = "zero";
};

int cmd_train(const TrainArgs& a, std::ostream& out, std::ostream& err) {
    PipelineFlags flags = a.flags;
    flags.params.clear();
    const Runtime rt(flags);
    if (attention_layers(rt.config().fusion) == 0) {
        throw Error(ErrorCode::kInvalidConfig, "fusion method " + flags.fusion + " has nothing to train");
    }
    const Pipeline pipeline = rt.pipeline();
    const auto ingest = load_corpus(a.corpus, err, true);

    std::vector<TrainExample> data;
    std::vector<SkippedSnippet> skipped;
    for (const auto& rec : ingest.records) {
        const SourceSnippet s{rec.id, rec.language, rec.code};
        try {
            const SnippetBlocks sb = prepare_blocks(s, pipeline);
            std::vector<std::string> ids;
            std::vector<EncodeInput> inputs;
            ids.reserve(sb.blocks.size());
            for (const auto& b : sb.blocks) ids.push_back(block_id(rec.id, b.index));
            for (std::size_t i = 0; i < sb.blocks.size(); ++i) inputs.push_back({ids[i], sb.blocks[i].text});
            TrainExample ex;
            for (auto& r : rt.encoder().encode_batch(inputs)) {
                if (r.ok()) {
                    ex.blocks.push_back(std::move(*r.embedding));
                } else if (r.error != ErrorCode::kZeroVector) {
                    throw Error(r.error, r.message);
                }
            }
            if (ex.blocks.empty()) {
                throw Error(ErrorCode::kZeroVector, "every block of '" + rec.id + "' is zero");
            }
            ex.query = encode_query(*rec.query, rt.encoder(), rec.id);
            data.push_back(std::move(ex));
        } catch (const Error& e) {
            skipped.push_back({rec.id, e.code(), e.what()});
        }
    }
    if (data.empty()) {
        throw Error(ErrorCode::kAllSnippetsFailed, "no usable training pairs");
    }

    TrainConfig tc;
    tc.batch_size = rt.config().batch_size;
    tc.max_blocks = a.max_blocks;
    tc.epochs = a.epochs;
    tc.learning_rate = a.learning_rate;
    tc.temperature = a.temperature;
    tc.seed = rt.config().seed;

    FusionParams init = FusionParams::zeros(rt.config().fusion, rt.encoder().dim());
    if (a.init == "uniform") {
        Rng rng(tc.seed);
        init = FusionParams::uniform(rt.config().fusion, rt.encoder().dim(), rng);
    }
    const TrainResult result = train(data, tc, std::move(init));
    save_params(result.params, a.out);

    const std::string csv_path = a.loss_csv.empty() ? a.out + ".loss.csv" : a.loss_csv;
    {
        std::ofstream csv(csv_path, std::ios::binary);
        if (!csv) throw Error(ErrorCode::kIoError, "cannot write " + csv_path);
        csv << "epoch,loss\n";
        char buf[64];
        for (std::size_t e = 0; e < result.epoch_losses.size(); ++e) {
            std::snprintf(buf, sizeof buf, "%zu,%.17g\n", e + 1, result.epoch_losses[e]);
            csv << buf;
        }
    }
    for (std::size_t e = 0; e < result.epoch_losses.size(); ++e) {
        err << "[train] epoch " << e + 1 << " loss " << result.epoch_losses[e] << '\n';
    }

    ojson j;
    j["params"] = a.out;
    j["loss_csv"] = csv_path;
    j["examples"] = data.size();
    j["skipped"] = skipped_json(skipped);
    j["epoch_losses"] = result.epoch_losses;
    out << j.dump() << '\n';
    return 0;
}

// ---- gen-synthetic ----

struct SynthArgs {
    SyntheticConfig cfg;
    std::string out;
};

int cmd_synthetic(const SynthArgs& a, std::ostream& out) {
    const SyntheticCorpus corpus = generate_corpus(a.cfg);
    if (a.out.empty()) {
        write_corpus(corpus.records, out);
        return 0;
    }
    save_corpus(corpus.records, a.out);
    ojson j;
    j["out"] = a.out;
    j["records"] = corpus.records.size();
    j["late"] = corpus.late_ids.size();
    out << j.dump() << '\n';
    return 0;
}

void print_error(std::ostream& out, std::string_view name, std::string_view message) {
    ojson j;
    j["error"] = name;
    j["message"] = message;
    out << j.dump() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-block code retrieval toolkit", "lcr"};
    app.require_subcommand(1);

    SplitArgs split_args;
    auto* split_cmd = app.add_subcommand("split", "Split one source file into pieces (JSON lines)");
    split_cmd->add_option("--strategy", split_args.strategy, "Splitting strategy")
        ->check(CLI::IsMember({"space", "token", "line", "ast"}))
        ->capture_default_str();
    split_cmd->add_option("--language", split_args.language, "Override the language from the extension");
    split_cmd->add_option("file", split_args.file, "Source file")->required();

    IndexArgs index_args;
    auto* index_cmd = app.add_subcommand("index", "Build an index from a JSONL corpus");
    add_pipeline_flags(index_cmd, index_args.flags);
    index_cmd->add_option("--corpus", index_args.corpus, "JSONL corpus")->required();
    index_cmd->add_option("--out", index_args.out, "Index file to write")->required();

    SearchArgs search_args;
    auto* search_cmd = app.add_subcommand("search", "Rank indexed snippets for a query");
    add_pipeline_flags(search_cmd, search_args.flags);
    search_cmd->add_option("--index", search_args.index, "Index file");
    search_cmd->add_option("--corpus", search_args.corpus, "JSONL corpus (with --bm25)");
    search_cmd->add_option("--query", search_args.query, "Query text")->required();
    search_cmd->add_option("--top-k", search_args.top_k, "Results to return")->capture_default_str();
    search_cmd->add_option("--sim", search_args.sim, "Similarity")
        ->check(CLI::IsMember({"cosine", "euclidean"}))
        ->capture_default_str();
    search_cmd->add_flag("--bm25", search_args.bm25, "Rank the corpus with BM25 instead of an index");

    EvalArgs eval_args;
    auto* eval_cmd = app.add_subcommand("eval", "MRR and R@k over the corpus queries");
    add_pipeline_flags(eval_cmd, eval_args.flags);
    eval_cmd->add_option("--corpus", eval_args.corpus, "JSONL corpus with queries")->required();
    eval_cmd->add_option("--index", eval_args.index, "Prebuilt index (default: build in memory)");
    eval_cmd->add_option("--baseline", eval_args.baselines, "Extra rankers to report")
        ->check(CLI::IsMember({"truncate", "bm25"}))
        ->delimiter(',');
    eval_cmd->add_option("--buckets", eval_args.buckets, "Length buckets")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    eval_cmd->add_option("--sim", eval_args.sim, "Similarity")
        ->check(CLI::IsMember({"cosine", "euclidean"}))
        ->capture_default_str();
    eval_cmd->add_option("--format", eval_args.format, "json or table")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();

    TrainArgs train_args;
    auto* train_cmd = app.add_subcommand("train-fusion", "Train the attention head on query/code pairs");
    add_pipeline_flags(train_cmd, train_args.flags);
    train_cmd->add_option("--corpus", train_args.corpus, "JSONL corpus with queries")->required();
    train_cmd->add_option("--out", train_args.out, "fusion.params to write")->required();
    train_cmd->add_option("--loss-csv", train_args.loss_csv, "Per-epoch loss log (default: <out>.loss.csv)");
    train_cmd->add_option("--epochs", train_args.epochs)->check(CLI::PositiveNumber)->capture_default_str();
    train_cmd->add_option("--lr", train_args.learning_rate, "Learning rate")->capture_default_str();
    train_cmd->add_option("--temperature", train_args.temperature)->capture_default_str();
    train_cmd->add_option("--max-blocks", train_args.max_blocks, "Blocks sampled per code")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    train_cmd->add_option("--init", train_args.init, "zero or uniform")
        ->check(CLI::IsMember({"zero", "uniform"}))
        ->capture_default_str();

    SynthArgs synth_args;
    auto* synth_cmd = app.add_subcommand("gen-synthetic", "Write a synthetic long-code corpus");
    synth_cmd->add_option("--n", synth_args.cfg.n, "Records")->check(CLI::PositiveNumber)->capture_default_str();
    synth_cmd->add_option("--seed", synth_args.cfg.seed)->capture_default_str();
    synth_cmd->add_option("--late-fraction", synth_args.cfg.late_fraction,
                          "Share of records with keywords past token 256")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    synth_cmd->add_option("--keywords", synth_args.cfg.keywords)->check(CLI::PositiveNumber)->capture_default_str();
    synth_cmd->add_option("--out", synth_args.out, "Output file (default: stdout)");

    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.push_back("lcr");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (split_cmd->parsed()) return cmd_split(split_args, out);
        if (index_cmd->parsed()) return cmd_index(index_args, out, err);
        if (search_cmd->parsed()) return cmd_search(search_args, out, err);
        if (eval_cmd->parsed()) return cmd_eval(eval_args, out, err);
        if (train_cmd->parsed()) return cmd_train(train_args, out, err);
        if (synth_cmd->parsed()) return cmd_synthetic(synth_args, out);
    } catch (const Error& e) {
        print_error(out, e.name(), e.what());
        return 1;
    } catch (const std::exception& e) {
        print_error(out, "IoError", e.what());
        return 1;
    }
    return 2;
}

}  // namespace lcr
