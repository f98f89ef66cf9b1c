#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "privnet/errors.hpp"
#include "privnet/pipeline.hpp"

namespace {

using privnet::InputFormat;
using privnet::RunOptions;
using privnet::Stage;

void add_corpus_options(CLI::App* sub, RunOptions& options, bool input_required) {
    auto* input = sub->add_option("input,--input", options.input, "corpus file (or EML directory)");
    if (input_required) input->required();
    std::map<std::string, InputFormat> formats{{"eml", InputFormat::EmlDir},
                                               {"mbox", InputFormat::Mbox},
                                               {"csv", InputFormat::Csv}};
    sub->add_option("--format", options.format, "input format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
        ->default_str("csv");
    sub->add_option("--counsel-list", options.counsel_list, "known-lawyer list, one per line");
    sub->add_flag("--include-bcc,!--no-include-bcc", options.include_bcc,
                  "treat BCC recipients like To/CC (default on)");
    sub->add_flag("--detect-counsel", options.detect_counsel,
                  "augment the counsel list via the signature keyword heuristic (EML/mbox)");
}

void add_rank_options(CLI::App* sub, RunOptions& options) {
    sub->add_option("--max-iterations", options.rank.max_iterations, "propagation rounds")
        ->capture_default_str();
    sub->add_option("--self-weight", options.rank.self_weight, "weight of a node's own score")
        ->capture_default_str();
    sub->add_option("--neighbor-weight", options.rank.neighbor_weight,
                    "weight of the averaged neighbor score")
        ->capture_default_str();
    sub->add_option("--degree-floor", options.rank.degree_floor,
                    "minimum divisor for the neighbor average")
        ->capture_default_str();
    sub->add_flag("--pin-counsel", options.rank.pin_counsel,
                  "reset counsel scores to 1 after every iteration");
    sub->add_option("--tier-threshold", options.rank.tier_threshold,
                    "qualifying score for the LikelyPriv tiers")
        ->capture_default_str();
}

void add_eval_options(CLI::App* sub, RunOptions& options) {
    sub->add_option("--bucket-size", options.bucket_size, "entities/links per curve bucket")
        ->capture_default_str();
    sub->add_flag("--pooled-precision", options.pooled_precision,
                  "pool bucket counts instead of averaging per-member precisions");
}

void add_synth_options(CLI::App* sub, RunOptions& options) {
    sub->add_option("--seed", options.synth.seed, "generator seed")->capture_default_str();
    sub->add_option("--n-entities", options.synth.n_entities, "entity count")
        ->capture_default_str();
    sub->add_option("--counsel-fraction", options.synth.counsel_fraction,
                    "fraction of entities on the counsel list")
        ->capture_default_str();
    sub->add_option("--n-docs", options.synth.n_docs, "document count")->capture_default_str();
    sub->add_option("--legal-affinity", options.synth.legal_affinity,
                    "communication mass directed toward the legal cluster")
        ->capture_default_str();
    sub->add_option("--base-priv-rate", options.synth.base_priv_rate,
                    "privilege probability floor")
        ->capture_default_str();
    sub->add_option("--adjacency-priv-boost", options.synth.adjacency_priv_boost,
                    "privilege multiplier on endpoint involvement")
        ->capture_default_str();
}

void add_common_options(CLI::App* sub, RunOptions& options) {
    sub->add_option("--out", options.out_dir, "output directory")->required();
    sub->add_option("--threads", options.threads, "worker cap (results do not depend on it)")
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"privnet: rank email-network entities by counsel proximity and "
                 "flag likely-privileged documents"};
    app.require_subcommand(1);

    RunOptions options;

    auto* ingest = app.add_subcommand("ingest", "parse metadata and export the entity network");
    add_corpus_options(ingest, options, true);
    add_common_options(ingest, options);

    auto* rank = app.add_subcommand("rank", "score entities per iteration");
    add_corpus_options(rank, options, true);
    add_rank_options(rank, options);
    add_common_options(rank, options);

    auto* tier = app.add_subcommand("tier", "assign LikelyPriv/LikelyNonPriv tiers");
    add_corpus_options(tier, options, true);
    add_rank_options(tier, options);
    add_common_options(tier, options);

    auto* classify = app.add_subcommand("classify", "predict privilege per document");
    add_corpus_options(classify, options, true);
    add_rank_options(classify, options);
    add_common_options(classify, options);

    auto* evaluate =
        app.add_subcommand("evaluate", "bucket curves and link-category recall/precision");
    add_corpus_options(evaluate, options, true);
    add_rank_options(evaluate, options);
    add_eval_options(evaluate, options);
    add_common_options(evaluate, options);

    auto* synth = app.add_subcommand("synth", "generate a seeded synthetic corpus");
    add_synth_options(synth, options);
    add_common_options(synth, options);

    auto* pipeline = app.add_subcommand("pipeline", "run every stage");
    add_corpus_options(pipeline, options, false);
    add_rank_options(pipeline, options);
    add_eval_options(pipeline, options);
    pipeline->add_flag("--synth", options.use_synth, "generate the corpus instead of reading one");
    add_synth_options(pipeline, options);
    add_common_options(pipeline, options);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return static_cast<int>(privnet::ErrorCode::Usage);
    }

    if (ingest->parsed()) options.stage = Stage::Ingest;
    else if (rank->parsed()) options.stage = Stage::Rank;
    else if (tier->parsed()) options.stage = Stage::Tier;
    else if (classify->parsed()) options.stage = Stage::Classify;
    else if (evaluate->parsed()) options.stage = Stage::Evaluate;
    else if (synth->parsed()) options.stage = Stage::Synth;
    else options.stage = Stage::Pipeline;

    if (pipeline->parsed() && !options.use_synth && options.input.empty()) {
        std::cerr << "error: usage: pipeline needs an input corpus or --synth\n";
        return static_cast<int>(privnet::ErrorCode::Usage);
    }

    try {
        auto summary = privnet::run_stage(options);
        std::cout << "ok: " << stage_name(options.stage) << " wrote " << summary.outputs.size()
                  << " file(s) to " << options.out_dir.string() << "\n";
        return 0;
    } catch (const privnet::Error& e) {
        std::cerr << "error: " << privnet::error_code_name(e.code()) << ": " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 10;
    }
}
