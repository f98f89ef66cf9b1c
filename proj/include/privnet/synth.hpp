#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "privnet/records.hpp"

namespace privnet {

// Seeded generator for desk-scale corpora with planted privileged structure.
// Stands in for the proprietary matters the published results came from.
struct SynthConfig {
    std::uint64_t seed = 1;
    std::uint32_t n_entities = 5000;
    double counsel_fraction = 0.05;
    std::uint32_t n_docs = 50000;
    // Probability mass of communication directed toward the legal cluster,
    // scaled per sender by ground-truth involvement.
    double legal_affinity = 0.9;
    double base_priv_rate = 0.2;
    // Privilege probability multiplier on the endpoints' mean involvement.
    double adjacency_priv_boost = 3.0;

    void validate() const; // throws Error{Config}

    // Counsel head count: floor(counsel_fraction * n_entities), min 1.
    // A zero fraction is refused (ranking would be degenerate).
    std::uint32_t counsel_count() const;
};

// Generator shape constants. Fixed rather than configurable: they define
// the planted structure the acceptance checks rely on.
namespace synth_shape {
// Share of non-counsel entities drawn as legal-adjacent staff.
inline constexpr double kAdjacentShare = 0.08;
// Involvement ranges: counsel pinned at 1.
inline constexpr double kAdjacentInvolvementMin = 0.4;
inline constexpr double kAdjacentInvolvementMax = 0.9;
inline constexpr double kGeneralInvolvementMax = 0.2;
// When a recipient draw lands in the legal cluster, this is the chance it
// is a counsel member rather than adjacent staff.
inline constexpr double kCounselPull = 0.6;
// High-activity entities: one per 200, capped, sampling weight 25.
inline constexpr std::uint32_t kHubDivisor = 200;
inline constexpr std::uint32_t kHubCap = 50;
inline constexpr std::uint32_t kHubWeight = 25;
// Recipients per document: uniform on [1, 5].
inline constexpr std::uint32_t kMaxRecipients = 5;
// Chance a recipient beyond the first lands on CC instead of To.
inline constexpr double kCcChance = 0.3;
} // namespace synth_shape

enum class SynthRole : std::uint8_t { Counsel, Adjacent, General };

struct SynthEntity {
    EntityKey key;
    SynthRole role = SynthRole::General;
    double involvement = 0.0; // ground-truth legal involvement in [0, 1]
    bool hub = false;
};

// What the generator knows and the pipeline must rediscover.
struct GroundTruth {
    SynthConfig config;
    std::vector<SynthEntity> entities;
    double realized_priv_rate = 0.0;
};

struct SynthCorpus {
    GroundTruth truth;
    std::vector<DocumentRecord> docs;
    CounselSet counsel;
};

// Deterministic in the seed: the same config yields byte-identical corpora.
// Privilege is planted from latent involvement, never from computed scores.
SynthCorpus generate_corpus(const SynthConfig& config);

// Emits metadata.csv (ingest CSV format), counsel.txt, ground_truth.json.
void write_corpus(const SynthCorpus& corpus, const std::filesystem::path& dir);

GroundTruth read_ground_truth(const std::filesystem::path& json_path);

} // namespace privnet
