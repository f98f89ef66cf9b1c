#include "privnet/reference_rank.hpp"

#include <algorithm>

namespace privnet {

// Naive sweep: for every iteration, walk the whole link list once and add
// each endpoint's previous-iteration score to the other endpoint's
// accumulator, then apply the weighted update per node. No adjacency
// structures, no shortcuts; this is the behavior rank_entities must match.
std::vector<ScoreSnapshot> reference_rank(const EntityNetwork& network,
                                          const RankConfig& config) {
    config.validate();
    const std::size_t n = network.entities.size();

    std::vector<double> score(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (network.entities[i].is_counsel) score[i] = 1.0;
    }

    std::vector<ScoreSnapshot> snapshots;
    snapshots.push_back(ScoreSnapshot{0, score});

    for (std::uint32_t iteration = 1; iteration <= config.max_iterations; ++iteration) {
        std::vector<double> accumulated(n, 0.0);
        std::vector<std::uint32_t> connected(n, 0);
        for (const Link& link : network.links) {
            accumulated[link.from] += score[link.to];
            accumulated[link.to] += score[link.from];
            connected[link.from] += 1;
            connected[link.to] += 1;
        }
        std::vector<double> updated(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double divisor = std::max<double>(config.degree_floor, connected[i]);
            updated[i] =
                config.self_weight * score[i] + config.neighbor_weight * accumulated[i] / divisor;
            if (config.pin_counsel && network.entities[i].is_counsel) updated[i] = 1.0;
        }
        score = std::move(updated);
        snapshots.push_back(ScoreSnapshot{iteration, score});
    }
    return snapshots;
}

} // namespace privnet
