#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "privnet/eval.hpp"
#include "privnet/ingest.hpp"
#include "privnet/network.hpp"
#include "privnet/ranking.hpp"
#include "privnet/synth.hpp"

namespace privnet {

enum class Stage { Ingest, Rank, Tier, Classify, Evaluate, Synth, Pipeline };

const char* stage_name(Stage stage);

// Resolved run configuration; echoed verbatim into manifest.json.
struct RunOptions {
    Stage stage = Stage::Pipeline;

    // Corpus input (ignored in synth mode).
    std::filesystem::path input;
    InputFormat format = InputFormat::Csv;
    std::filesystem::path counsel_list;
    bool include_bcc = true;
    bool detect_counsel = false; // augment counsel set via the body heuristic

    RankConfig rank;
    std::size_t bucket_size = 1000;
    bool pooled_precision = false;

    // Synth mode: generate the corpus under out_dir/corpus first.
    bool use_synth = false;
    SynthConfig synth;

    std::filesystem::path out_dir;
    unsigned threads = 1;
};

struct RunSummary {
    std::size_t n_records = 0;
    std::size_t n_skipped = 0;
    std::size_t n_entities = 0;
    std::size_t n_links = 0;
    bool labeled = false;
    bool evaluated = false;
    std::vector<std::filesystem::path> outputs;
};

// Execute one subcommand end to end: validate paths, parse, run the stages
// the subcommand needs, write outputs plus manifest.json under out_dir.
// Throws privnet::Error on failure; never mutates its inputs.
RunSummary run_stage(const RunOptions& options);

} // namespace privnet
