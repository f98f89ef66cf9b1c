#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "privnet/network.hpp"

namespace privnet {

// Propagation constants. Defaults are the published ones: a node's next
// score is 30% of its previous score plus 70% of the sum of its neighbors'
// previous scores divided by max(10, degree).
struct RankConfig {
    std::uint32_t max_iterations = 3;
    double self_weight = 0.3;
    double neighbor_weight = 0.7;
    std::uint32_t degree_floor = 10;
    bool pin_counsel = false;    // re-pin counsel scores to 1 after each iteration
    double tier_threshold = 0.1; // qualifying-score cutoff for tiering

    // Throws Error{Config} when weights are negative, do not sum to 1,
    // or degree_floor < 1.
    void validate() const;
};

// Per-entity scores after a given iteration, aligned to network entity
// indices. Iteration 0 is the initial assignment: counsel 1, everyone else 0.
struct ScoreSnapshot {
    std::uint32_t iteration = 0;
    std::vector<double> scores;
};

enum class Tier : std::uint8_t {
    LikelyPriv1 = 0,
    LikelyPriv2 = 1,
    LikelyPriv3 = 2,
    LikelyNonPriv = 3,
    Counsel = 4, // pseudo-tier; excluded from the 16 link categories
};

const char* tier_name(Tier tier);

struct TierAssignment {
    std::vector<Tier> tiers; // aligned to network entity indices
};

// Run the propagation for config.max_iterations rounds and return every
// snapshot, iteration 0 included. Updates are synchronous: all new scores
// are computed from the previous iteration before any score changes.
// Per-entity accumulation follows ascending link index, so results are
// bit-identical for any thread count. Final scores are written back into
// network.entities[].score.
std::vector<ScoreSnapshot> rank_entities(EntityNetwork& network, const RankConfig& config,
                                         unsigned threads = 1);

// Mean of the two endpoint scores.
double link_score(const Link& link, const ScoreSnapshot& snapshot);

// Non-counsel entities scoring >= tier_threshold, ordered by (score desc,
// key asc), split into three near-even contiguous groups (remainder to the
// higher tiers). Everything else non-counsel is LikelyNonPriv; counsel get
// the Counsel pseudo-tier.
TierAssignment assign_tiers(const EntityNetwork& network, const ScoreSnapshot& snapshot,
                            const RankConfig& config);

// Sizes of the three qualifying groups for n qualifying entities.
std::array<std::size_t, 3> tier_split_sizes(std::size_t n_qualifying);

} // namespace privnet
