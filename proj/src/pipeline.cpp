#include "privnet/pipeline.hpp"

#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "privnet/classify.hpp"
#include "privnet/csv.hpp"
#include "privnet/errors.hpp"

namespace privnet {

const char* stage_name(Stage stage) {
    switch (stage) {
    case Stage::Ingest: return "ingest";
    case Stage::Rank: return "rank";
    case Stage::Tier: return "tier";
    case Stage::Classify: return "classify";
    case Stage::Evaluate: return "evaluate";
    case Stage::Synth: return "synth";
    case Stage::Pipeline: return "pipeline";
    }
    return "?";
}

namespace {

const char* format_name(InputFormat format) {
    switch (format) {
    case InputFormat::EmlDir: return "eml";
    case InputFormat::Mbox: return "mbox";
    case InputFormat::Csv: return "csv";
    }
    return "?";
}

std::ofstream open_output(const std::filesystem::path& path, RunSummary& summary) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    summary.outputs.push_back(path);
    return out;
}

void write_scores_csv(std::ostream& out, const EntityNetwork& network,
                      const std::vector<ScoreSnapshot>& snapshots) {
    out << "entity,is_counsel,iteration,score\n";
    for (const auto& snap : snapshots) {
        for (std::size_t i = 0; i < network.entities.size(); ++i) {
            csv::write_record(out, {network.entities[i].key.value,
                                    network.entities[i].is_counsel ? "1" : "0",
                                    std::to_string(snap.iteration),
                                    csv::format_double(snap.scores[i])});
        }
    }
}

void write_tiers_csv(std::ostream& out, const EntityNetwork& network,
                     const ScoreSnapshot& snapshot, const TierAssignment& tiers) {
    out << "entity,score,tier\n";
    for (std::size_t i = 0; i < network.entities.size(); ++i) {
        csv::write_record(out, {network.entities[i].key.value,
                                csv::format_double(snapshot.scores[i]),
                                tier_name(tiers.tiers[i])});
    }
}

void write_score_predictions_csv(std::ostream& out, const std::vector<DocumentRecord>& docs,
                                 const EntityNetwork& network, const ScoreSnapshot& snapshot,
                                 double threshold, const BuildOptions& build) {
    out << "doc_id,category_or_score,predicted\n";
    for (const auto& doc : docs) {
        auto links = document_links(doc, network, build);
        if (links.empty()) {
            csv::write_record(out, {doc.doc_id, std::string{}, "0"});
            continue;
        }
        double best = 0.0;
        bool first = true;
        for (LinkIndex link_idx : links) {
            double s = link_score(network.links[link_idx], snapshot);
            if (first || s > best) best = s;
            first = false;
        }
        csv::write_record(out,
                          {doc.doc_id, csv::format_double(best), best >= threshold ? "1" : "0"});
    }
}

void write_category_predictions_csv(std::ostream& out, const std::vector<DocumentRecord>& docs,
                                    const EntityNetwork& network, const TierAssignment& tiers,
                                    const BuildOptions& build) {
    out << "doc_id,category_or_score,predicted\n";
    for (const auto& doc : docs) {
        bool seen[25] = {};
        for (LinkIndex link_idx : document_links(doc, network, build)) {
            auto category = categorize_link(network.links[link_idx], tiers);
            if (!category) continue;
            std::size_t slot = static_cast<std::size_t>(category->sender_tier) * 5 +
                               static_cast<std::size_t>(category->receiver_tier);
            if (seen[slot]) continue;
            seen[slot] = true;
            csv::write_record(out, {doc.doc_id, category_name(*category), "1"});
        }
    }
}

nlohmann::json manifest_json(const RunOptions& options, const RunSummary& summary) {
    nlohmann::json m;
    m["subcommand"] = stage_name(options.stage);
    m["input"] = options.input.string();
    m["format"] = format_name(options.format);
    m["counsel_list"] = options.counsel_list.string();
    m["include_bcc"] = options.include_bcc;
    m["detect_counsel"] = options.detect_counsel;
    m["rank"] = {{"max_iterations", options.rank.max_iterations},
                 {"self_weight", options.rank.self_weight},
                 {"neighbor_weight", options.rank.neighbor_weight},
                 {"degree_floor", options.rank.degree_floor},
                 {"pin_counsel", options.rank.pin_counsel},
                 {"tier_threshold", options.rank.tier_threshold}};
    m["bucket_size"] = options.bucket_size;
    m["pooled_precision"] = options.pooled_precision;
    m["out_dir"] = options.out_dir.string();
    m["threads"] = options.threads;
    if (options.use_synth || options.stage == Stage::Synth) {
        m["synth"] = {{"seed", options.synth.seed},
                      {"n_entities", options.synth.n_entities},
                      {"counsel_fraction", options.synth.counsel_fraction},
                      {"n_docs", options.synth.n_docs},
                      {"legal_affinity", options.synth.legal_affinity},
                      {"base_priv_rate", options.synth.base_priv_rate},
                      {"adjacency_priv_boost", options.synth.adjacency_priv_boost}};
    }
    m["summary"] = {{"n_records", summary.n_records},   {"n_skipped", summary.n_skipped},
                    {"n_entities", summary.n_entities}, {"n_links", summary.n_links},
                    {"labeled", summary.labeled},       {"evaluated", summary.evaluated}};
    return m;
}

void warn(const std::string& message) {
    std::cerr << "warning: " << message << "\n";
}

} // namespace

RunSummary run_stage(const RunOptions& options) {
    RunSummary summary;
    options.rank.validate();
    if (options.bucket_size < 1) {
        throw Error(ErrorCode::Config, "bucket_size must be at least 1");
    }

    const bool synth_mode = options.use_synth || options.stage == Stage::Synth;
    std::filesystem::path input = options.input;
    std::filesystem::path counsel_path = options.counsel_list;
    InputFormat format = options.format;

    // Validate every referenced path before doing any work.
    if (synth_mode) {
        options.synth.validate();
    } else {
        if (input.empty() || !std::filesystem::exists(input)) {
            throw Error(ErrorCode::Input, "input not found: " + input.string());
        }
        if (!counsel_path.empty() && !std::filesystem::exists(counsel_path)) {
            throw Error(ErrorCode::Input, "counsel list not found: " + counsel_path.string());
        }
    }
    std::error_code ec;
    std::filesystem::create_directories(options.out_dir, ec);
    if (!std::filesystem::is_directory(options.out_dir)) {
        throw Error(ErrorCode::Io, "cannot create output directory " + options.out_dir.string());
    }

    if (synth_mode) {
        auto corpus = generate_corpus(options.synth);
        auto corpus_dir = options.out_dir / "corpus";
        write_corpus(corpus, corpus_dir);
        summary.outputs.push_back(corpus_dir / "metadata.csv");
        summary.outputs.push_back(corpus_dir / "counsel.txt");
        summary.outputs.push_back(corpus_dir / "ground_truth.json");
        input = corpus_dir / "metadata.csv";
        counsel_path = corpus_dir / "counsel.txt";
        format = InputFormat::Csv;
    }

    if (options.stage == Stage::Synth) {
        auto manifest = open_output(options.out_dir / "manifest.json", summary);
        manifest << manifest_json(options, summary).dump(2) << "\n";
        return summary;
    }

    // Ingest.
    ParseOptions parse_options;
    parse_options.scan_bodies = options.detect_counsel;
    ParseResult parsed = parse_metadata(input, format, parse_options);
    summary.n_records = parsed.records.size();
    summary.n_skipped = parsed.skipped;
    summary.labeled = corpus_labeled(parsed.records);
    if (parsed.skipped > 0) {
        warn(std::to_string(parsed.skipped) + " message(s)/row(s) skipped during ingest");
    }
    if (options.stage == Stage::Evaluate && !summary.labeled) {
        throw Error(ErrorCode::LabelsRequired,
                    "evaluate requires a fully labeled corpus (Privileged column)");
    }

    CounselSet counsel;
    if (!counsel_path.empty()) counsel = load_counsel_list(counsel_path);
    if (options.detect_counsel) {
        for (const auto& key : parsed.detected_counsel) counsel.members.insert(key);
    }
    if (counsel.empty()) warn("counsel set is empty; all scores will be zero");

    BuildOptions build{options.include_bcc};
    EntityNetwork network = build_network(parsed.records, counsel, build);
    summary.n_entities = network.entity_count();
    summary.n_links = network.link_count();
    std::size_t counsel_in_corpus = 0;
    for (const auto& e : network.entities) {
        if (e.is_counsel) ++counsel_in_corpus;
    }
    if (!counsel.empty() && counsel_in_corpus == 0) {
        warn("counsel set is disjoint from the corpus");
    }

    // network.json carries final scores for ranked runs; a bare ingest
    // exports the unscored network.
    std::vector<ScoreSnapshot> snapshots;
    TierAssignment tiers;
    if (options.stage != Stage::Ingest) {
        snapshots = rank_entities(network, options.rank, options.threads);
        tiers = assign_tiers(network, snapshots.back(), options.rank);
    }

    {
        auto out = open_output(options.out_dir / "network.json", summary);
        export_network_json(network, out);
    }

    auto finish = [&]() -> RunSummary {
        auto manifest = open_output(options.out_dir / "manifest.json", summary);
        manifest << manifest_json(options, summary).dump(2) << "\n";
        return summary;
    };

    if (options.stage == Stage::Ingest) return finish();

    {
        auto out = open_output(options.out_dir / "scores.csv", summary);
        write_scores_csv(out, network, snapshots);
    }
    if (options.stage == Stage::Rank) return finish();

    {
        std::size_t qualifying = 0;
        for (Tier t : tiers.tiers) {
            if (t == Tier::LikelyPriv1 || t == Tier::LikelyPriv2 || t == Tier::LikelyPriv3) {
                ++qualifying;
            }
        }
        if (qualifying == 0) warn("no entities meet the tier threshold; LikelyPriv tiers empty");
        auto out = open_output(options.out_dir / "tiers.csv", summary);
        write_tiers_csv(out, network, snapshots.back(), tiers);
    }
    if (options.stage == Stage::Tier) return finish();

    {
        auto out = open_output(options.out_dir / "predictions_by_score.csv", summary);
        write_score_predictions_csv(out, parsed.records, network, snapshots.back(),
                                    options.rank.tier_threshold, build);
    }
    {
        auto out = open_output(options.out_dir / "predictions_by_category.csv", summary);
        write_category_predictions_csv(out, parsed.records, network, tiers, build);
    }
    if (options.stage == Stage::Classify) return finish();

    // Evaluate. The dedicated subcommand insists on labels; the full
    // pipeline degrades to a warning so unlabeled corpora still get the
    // upstream artifacts.
    if (!summary.labeled) {
        if (options.stage == Stage::Evaluate) {
            throw Error(ErrorCode::LabelsRequired,
                        "evaluate requires a fully labeled corpus (Privileged column)");
        }
        warn("corpus is unlabeled; evaluation stage skipped");
        return finish();
    }

    auto ent_metrics = entity_metrics(parsed.records, network, build);
    auto lnk_metrics = link_metrics(parsed.records, network);
    BucketOptions bucket_options{options.bucket_size, options.pooled_precision};
    for (std::size_t k = 1; k < snapshots.size(); ++k) {
        const auto& snap = snapshots[k];
        {
            auto out = open_output(options.out_dir / ("entity_buckets_iter" +
                                                      std::to_string(snap.iteration) + ".csv"),
                                   summary);
            write_bucket_csv(out, bucket_curve(entity_scored_items(network, snap, ent_metrics),
                                               bucket_options));
        }
        {
            auto out = open_output(options.out_dir / ("link_buckets_iter" +
                                                      std::to_string(snap.iteration) + ".csv"),
                                   summary);
            write_bucket_csv(out,
                             bucket_curve(link_scored_items(network, snap, lnk_metrics),
                                          bucket_options));
        }
    }
    auto rows = category_table(parsed.records, network, tiers, build);
    {
        auto out = open_output(options.out_dir / "category_table.csv", summary);
        write_category_csv(out, rows);
    }
    {
        auto out = open_output(options.out_dir / "category_table.json", summary);
        write_category_json(out, rows);
    }
    summary.evaluated = true;
    return finish();
}

} // namespace privnet
