// elex: emotion lexicon expansion and stance-corpus tooling.
//
// Exit codes: 0 success, 1 usage, 2 input format / I/O, 3 numerical failure.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "elex/elex.hpp"
#include "manifest.hpp"

namespace {

using namespace elex;
using elex::cli::RunManifest;

enum ExitCode { kOk = 0, kUsage = 1, kFormat = 2, kNumeric = 3 };

struct Common {
    unsigned threads = 1;
};

struct LexiconArgs {
    std::string path;
    bool keep_zero = false;
    std::vector<std::string> extra;

    void add_to(CLI::App* app) {
        app->add_option("--lexicon", path, "Seed lexicon (NRC TSV, or JSONL by extension)")->required()->check(CLI::ExistingFile);
        app->add_flag("--keep-zero-entries", keep_zero, "Keep words without any emotion flag");
        app->add_option("--extra-category", extra, "Append an extra category dimension (e.g. positive)");
    }

    Lexicon load() const {
        LexiconLoadOptions opts;
        opts.keep_zero_entries = keep_zero;
        opts.extra_categories = extra;
        return load_lexicon(path, opts);
    }

    void record(RunManifest& m) const {
        m.config()["keep_zero_entries"] = keep_zero;
        m.config()["extra_categories"] = extra;
        m.add_input("lexicon", path);
    }
};

std::vector<std::string> read_wordlist(const std::string& path) {
    std::vector<std::string> words;
    for_each_line(path, [&](std::size_t, const std::string& line) {
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) return;
        const auto last = line.find_last_not_of(" \t");
        words.push_back(line.substr(first, last - first + 1));
    });
    return words;
}

struct ClusterArgs {
    LexiconArgs lex;
    std::string embeddings, out;
    std::uint64_t seed = 0;
    double tol = 1e-6;
    std::size_t max_iter = 500;
    double reg = 1e-6;
    std::size_t k = 3;
    std::size_t pca_dim = 3;
    std::size_t restarts = 1;
};

int run_cluster(const ClusterArgs& a, const Common& c) {
    RunManifest manifest("cluster");
    a.lex.record(manifest);
    manifest.add_input("embeddings", a.embeddings);
    auto& cfg = manifest.config();
    cfg["seed"] = a.seed;
    cfg["tol"] = a.tol;
    cfg["max_iter"] = a.max_iter;
    cfg["reg"] = a.reg;
    cfg["k"] = a.k;
    cfg["pca_dim"] = a.pca_dim;
    cfg["restarts"] = a.restarts;

    const Lexicon lex = a.lex.load();
    const EmbeddingTable table = load_embeddings(a.embeddings);
    ClusterOptions opt;
    opt.pca_dim = a.pca_dim;
    opt.gmm = {a.k, a.seed, a.tol, a.max_iter, a.reg, a.restarts, c.threads};
    const ClusterModel model = fit_cluster_model(table, lex, opt);

    save_cluster_model(model, a.out);
    manifest.write_for(a.out);
    return kOk;
}

struct HistogramArgs {
    LexiconArgs lex;
    std::string embeddings, out, coverage;
    std::size_t bins = 40;
    bool include_self = true;
};

int run_histogram(const HistogramArgs& a, const Common& c) {
    RunManifest manifest("histogram");
    a.lex.record(manifest);
    manifest.add_input("embeddings", a.embeddings);
    manifest.config()["bins"] = a.bins;
    manifest.config()["include_self"] = a.include_self;

    const Lexicon lex = a.lex.load();
    const EmbeddingTable table = load_embeddings(a.embeddings);
    const auto h = similarity_histogram(table, lex, a.bins, a.include_self, c.threads);
    if (!h.coverage.missing.empty())
        warn(std::to_string(h.coverage.missing.size()) + " lexicon word(s) missing from the embedding table");

    write_text_file(a.out, histogram_csv(h, lex.schema()));
    if (!a.coverage.empty()) write_text_file(a.coverage, dump_json(h.coverage.to_json(), RealFormat::shortest, 2) + "\n");
    manifest.write_for(a.out);
    return kOk;
}

struct ExpandArgs {
    LexiconArgs lex;
    std::string embeddings, model, candidates, out, report, merged;
    double theta = kDefaultTheta;
    double theta_min = 0.05, theta_max = 0.95, step = 0.05;
};

void record_expand_inputs(const ExpandArgs& a, RunManifest& m) {
    a.lex.record(m);
    m.add_input("embeddings", a.embeddings);
    m.add_input("model", a.model);
    m.add_input("candidates", a.candidates);
}

NearestTable nearest_for(const ExpandArgs& a, const Lexicon& lex, const Common& c) {
    const EmbeddingTable table = load_embeddings(a.embeddings);
    const ClusterModel model = load_cluster_model(a.model);
    return nearest_by_emotion(read_wordlist(a.candidates), lex, table, model, c.threads);
}

int run_expand(const ExpandArgs& a, const Common& c) {
    RunManifest manifest("expand");
    record_expand_inputs(a, manifest);
    manifest.config()["theta"] = a.theta;

    const Lexicon lex = a.lex.load();
    const ExpansionResult result = expand_at(nearest_for(a, lex, c), a.theta);
    const Lexicon merged = a.merged.empty() ? Lexicon{} : merge(lex, result.expanded_lexicon);

    write_text_file(a.out, format_lexicon(result.expanded_lexicon, LexiconFormat::jsonl));
    if (!a.report.empty()) write_text_file(a.report, dump_json(to_json(result), RealFormat::shortest, 2) + "\n");
    if (!a.merged.empty()) write_text_file(a.merged, format_lexicon(merged, LexiconFormat::jsonl));
    manifest.write_for(a.out);
    std::cerr << "expanded " << result.diagnostics.unique_words_expanded << " word(s) with "
              << result.diagnostics.total_new_assignments << " assignment(s) at theta " << a.theta << '\n';
    return kOk;
}

int run_sweep(const ExpandArgs& a, const Common& c) {
    RunManifest manifest("sweep");
    record_expand_inputs(a, manifest);
    manifest.config()["theta_min"] = a.theta_min;
    manifest.config()["theta_max"] = a.theta_max;
    manifest.config()["step"] = a.step;

    const auto grid = theta_grid(a.theta_min, a.theta_max, a.step);
    const Lexicon lex = a.lex.load();
    const SweepReport report = sweep(nearest_for(a, lex, c), grid);

    write_text_file(a.out, sweep_csv(report));
    manifest.write_for(a.out);
    return kOk;
}

struct FeaturesArgs {
    LexiconArgs lex;
    std::string corpus, out, mode = "fraction";
};

int run_features(const FeaturesArgs& a, const Common& c) {
    RunManifest manifest("features");
    a.lex.record(manifest);
    manifest.add_input("corpus", a.corpus);
    manifest.config()["mode"] = a.mode;

    const FeatureMode mode = parse_feature_mode(a.mode);
    const Lexicon lex = a.lex.load();
    const auto records = read_unified(a.corpus);
    std::vector<std::string> lines(records.size());
    parallel_for(records.size(), c.threads, [&](std::size_t i) {
        const auto f = emotion_features(records[i].text, lex, mode);
        Json j;
        j["id"] = records[i].id;
        j["f_emo"] = f.values;
        j["token_count"] = f.token_count;
        j["matched_count"] = f.matched_count;
        lines[i] = dump_json(j) + "\n";
    });
    std::string out;
    for (const auto& l : lines) out += l;
    write_text_file(a.out, out);
    manifest.write_for(a.out);
    return kOk;
}

struct ConvertArgs {
    std::string source, out, labels = "native";
    std::vector<std::string> inputs;
    FieldMapping map;
};

int run_convert(const ConvertArgs& a) {
    RunManifest manifest("corpus convert");
    for (const auto& in : a.inputs) manifest.add_input("input", in);
    auto& cfg = manifest.config();
    cfg["source"] = a.source;
    cfg["id_field"] = a.map.id_field;
    cfg["topic_field"] = a.map.topic_field;
    cfg["text_field"] = a.map.text_field;
    cfg["label_field"] = a.map.label_field;
    cfg["labels"] = a.labels;

    FieldMapping map = a.map;
    if (a.labels == "unified")
        map.labels = LabelSet::unified;
    else if (a.labels != "native")
        throw std::invalid_argument("--labels must be native or unified");
    const CorpusSource source = parse_source(a.source);

    ConvertResult result;
    for (std::size_t i = 0; i < a.inputs.size(); ++i) {
        std::ifstream in(a.inputs[i], std::ios::binary);
        if (!in) throw IoError("cannot open: " + a.inputs[i]);
        convert_into(in, i, source, map, result);
    }
    for (const auto& e : result.errors)
        std::cerr << a.inputs[e.input] << ": row " << e.row << ": " << e.message << '\n';
    if (result.all_failed()) {
        std::cerr << "corpus convert: every row failed\n";
        return kFormat;
    }
    write_text_file(a.out, unified_jsonl(result.records));
    manifest.write_for(a.out);
    std::cerr << "converted " << result.records.size() << " of " << result.rows << " row(s); skipped "
              << result.skipped << ", errors " << result.errors.size() << '\n';
    return kOk;
}

struct StatsArgs {
    std::vector<std::string> inputs;
    std::string out;
};

int run_stats(const StatsArgs& a) {
    RunManifest manifest("corpus stats");
    std::vector<StanceRecord> records;
    for (const auto& in : a.inputs) {
        manifest.add_input("input", in);
        auto part = read_unified(in);
        records.insert(records.end(), part.begin(), part.end());
    }
    const CorpusStats stats = corpus_stats(records);
    write_text_file(a.out, dump_json(to_json(stats), RealFormat::shortest, 2) + "\n");
    manifest.write_for(a.out);
    return kOk;
}

CLI::Validator open_unit_interval() {
    return CLI::Validator(
        [](std::string& s) -> std::string {
            double v = 0;
            try {
                v = std::stod(s);
            } catch (...) {
                return "not a number: " + s;
            }
            if (!(v > 0.0 && v < 1.0)) return "value must lie in (0, 1), got " + s;
            return {};
        },
        "(0,1)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"elex: emotion lexicon expansion and stance-corpus tooling"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    Common common;
    app.add_option("--threads", common.threads, "Worker threads (never changes output bytes)")
        ->envname("ELEX_THREADS")
        ->check(CLI::Range(1u, 1024u));

    auto embeddings_opt = [](CLI::App* sub, std::string& target) {
        sub->add_option("--embeddings", target, "Word vectors (word2vec text format)")->required()->check(CLI::ExistingFile);
    };

    ClusterArgs cluster;
    auto* cmd_cluster = app.add_subcommand("cluster", "Fit PCA + Gaussian mixture + cluster similarity stats");
    cluster.lex.add_to(cmd_cluster);
    embeddings_opt(cmd_cluster, cluster.embeddings);
    cmd_cluster->add_option("--out", cluster.out, "Cluster model JSON")->required();
    cmd_cluster->add_option("--seed", cluster.seed, "EM initialization seed");
    cmd_cluster->add_option("--tol", cluster.tol, "EM tolerance on mean log-likelihood")->check(CLI::PositiveNumber);
    cmd_cluster->add_option("--max-iter", cluster.max_iter, "EM iteration cap")->check(CLI::Range(1ul, 1000000ul));
    cmd_cluster->add_option("--reg", cluster.reg, "Covariance regularization")->check(CLI::NonNegativeNumber);
    cmd_cluster->add_option("--k", cluster.k, "Mixture components")->check(CLI::Range(1ul, 64ul));
    cmd_cluster->add_option("--pca-dim", cluster.pca_dim, "PCA output dimension")->check(CLI::Range(1ul, 64ul));
    cmd_cluster->add_option("--restarts", cluster.restarts, "EM restarts, best log-likelihood kept")
        ->check(CLI::Range(1ul, 1000ul));

    HistogramArgs hist;
    auto* cmd_hist = app.add_subcommand("histogram", "Per-emotion raw similarity histogram (CSV)");
    hist.lex.add_to(cmd_hist);
    embeddings_opt(cmd_hist, hist.embeddings);
    cmd_hist->add_option("--out", hist.out, "Histogram CSV")->required();
    cmd_hist->add_option("--bins", hist.bins, "Bins over [-1, 1]")->check(CLI::Range(1ul, 100000ul));
    cmd_hist->add_flag("--include-self,!--exclude-self", hist.include_self, "Count self-pairs (default on)");
    cmd_hist->add_option("--coverage", hist.coverage, "Coverage report JSON");

    ExpandArgs expand;
    auto* cmd_expand = app.add_subcommand("expand", "Expand the lexicon at one threshold");
    expand.lex.add_to(cmd_expand);
    embeddings_opt(cmd_expand, expand.embeddings);
    cmd_expand->add_option("--model", expand.model, "Cluster model JSON")->required()->check(CLI::ExistingFile);
    cmd_expand->add_option("--candidates", expand.candidates, "Candidate words, one per line")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_expand->add_option("--theta", expand.theta, "Calibrated similarity threshold")->check(open_unit_interval());
    cmd_expand->add_option("--out", expand.out, "Expanded entries (JSONL)")->required();
    cmd_expand->add_option("--report", expand.report, "Expansion report JSON");
    cmd_expand->add_option("--merged", expand.merged, "Seed + expansion lexicon (JSONL)");

    ExpandArgs sweep_args;
    auto* cmd_sweep = app.add_subcommand("sweep", "Expansion diagnostics over a threshold grid (CSV)");
    sweep_args.lex.add_to(cmd_sweep);
    embeddings_opt(cmd_sweep, sweep_args.embeddings);
    cmd_sweep->add_option("--model", sweep_args.model, "Cluster model JSON")->required()->check(CLI::ExistingFile);
    cmd_sweep->add_option("--candidates", sweep_args.candidates, "Candidate words, one per line")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_sweep->add_option("--theta-min", sweep_args.theta_min)->check(open_unit_interval());
    cmd_sweep->add_option("--theta-max", sweep_args.theta_max)->check(open_unit_interval());
    cmd_sweep->add_option("--step", sweep_args.step)->check(CLI::PositiveNumber);
    cmd_sweep->add_option("--out", sweep_args.out, "Sweep CSV")->required();

    FeaturesArgs feats;
    auto* cmd_feats = app.add_subcommand("features", "Emotion feature vectors for a unified corpus (JSONL)");
    feats.lex.add_to(cmd_feats);
    cmd_feats->add_option("--corpus", feats.corpus, "Unified corpus JSONL")->required()->check(CLI::ExistingFile);
    cmd_feats->add_option("--mode", feats.mode, "fraction | count | binary")
        ->check(CLI::IsMember({"fraction", "count", "binary"}));
    cmd_feats->add_option("--out", feats.out, "Features JSONL")->required();

    auto* cmd_corpus = app.add_subcommand("corpus", "Stance corpus normalization");
    cmd_corpus->require_subcommand(1);

    ConvertArgs conv;
    auto* cmd_convert = cmd_corpus->add_subcommand("convert", "Flattened JSONL -> unified JSONL");
    cmd_convert->add_option("--source", conv.source, "amt | ukp | pe | ibm")
        ->required()
        ->check(CLI::IsMember({"amt", "ukp", "pe", "ibm"}));
    cmd_convert->add_option("--input", conv.inputs, "Input JSONL (repeat to concatenate)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_convert->add_option("--out", conv.out, "Unified JSONL")->required();
    cmd_convert->add_option("--id-field", conv.map.id_field);
    cmd_convert->add_option("--topic-field", conv.map.topic_field);
    cmd_convert->add_option("--text-field", conv.map.text_field);
    cmd_convert->add_option("--label-field", conv.map.label_field);
    cmd_convert->add_option("--labels", conv.labels, "native | unified")->check(CLI::IsMember({"native", "unified"}));

    StatsArgs stats;
    auto* cmd_stats = cmd_corpus->add_subcommand("stats", "Corpus statistics JSON");
    cmd_stats->add_option("--input", stats.inputs, "Unified JSONL")->required()->check(CLI::ExistingFile);
    cmd_stats->add_option("--out", stats.out, "Stats JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*cmd_cluster) return run_cluster(cluster, common);
        if (*cmd_hist) return run_histogram(hist, common);
        if (*cmd_expand) return run_expand(expand, common);
        if (*cmd_sweep) return run_sweep(sweep_args, common);
        if (*cmd_feats) return run_features(feats, common);
        if (*cmd_convert) return run_convert(conv);
        if (*cmd_stats) return run_stats(stats);
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFormat;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFormat;
    } catch (const MergeConflict& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFormat;
    } catch (const NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
