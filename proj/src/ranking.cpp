#include "privnet/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "privnet/errors.hpp"

namespace privnet {

void RankConfig::validate() const {
    if (self_weight < 0.0 || neighbor_weight < 0.0) {
        throw Error(ErrorCode::Config, "weights must be non-negative");
    }
    if (std::abs(self_weight + neighbor_weight - 1.0) > 1e-9) {
        throw Error(ErrorCode::Config, "self_weight + neighbor_weight must equal 1");
    }
    if (degree_floor < 1) {
        throw Error(ErrorCode::Config, "degree_floor must be at least 1");
    }
    if (tier_threshold < 0.0 || tier_threshold > 1.0) {
        throw Error(ErrorCode::Config, "tier_threshold must be in [0, 1]");
    }
}

const char* tier_name(Tier tier) {
    switch (tier) {
    case Tier::LikelyPriv1: return "LikelyPriv1";
    case Tier::LikelyPriv2: return "LikelyPriv2";
    case Tier::LikelyPriv3: return "LikelyPriv3";
    case Tier::LikelyNonPriv: return "LikelyNonPriv";
    case Tier::Counsel: return "Counsel";
    }
    return "?";
}

namespace {

ScoreSnapshot initial_snapshot(const EntityNetwork& network) {
    ScoreSnapshot snap;
    snap.iteration = 0;
    snap.scores.resize(network.entities.size());
    for (std::size_t i = 0; i < network.entities.size(); ++i) {
        snap.scores[i] = network.entities[i].is_counsel ? 1.0 : 0.0;
    }
    return snap;
}

// Run fn(first, last) over [0, n) in contiguous chunks. Chunk boundaries do
// not affect results: each entity's work is self-contained.
void parallel_ranges(std::size_t n, unsigned threads,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
    if (threads <= 1 || n < 2048) {
        fn(0, n);
        return;
    }
    unsigned workers = std::min<unsigned>(threads, std::thread::hardware_concurrency() * 4 + 1);
    std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < workers; ++t) {
        std::size_t first = t * chunk;
        if (first >= n) break;
        pool.emplace_back(fn, first, std::min(n, first + chunk));
    }
    fn(0, std::min(n, chunk));
}

} // namespace

std::vector<ScoreSnapshot> rank_entities(EntityNetwork& network, const RankConfig& config,
                                         unsigned threads) {
    config.validate();
    const std::size_t n = network.entities.size();

    std::vector<ScoreSnapshot> snapshots;
    snapshots.reserve(config.max_iterations + 1);
    snapshots.push_back(initial_snapshot(network));

    for (std::size_t i = 0; i < n; ++i) {
        network.entities[i].score = snapshots[0].scores[i];
    }
    if (n == 0) {
        for (std::uint32_t it = 1; it <= config.max_iterations; ++it) {
            snapshots.push_back(ScoreSnapshot{it, {}});
        }
        return snapshots;
    }

    // Flatten adjacency into CSR form once: per entity, the opposite
    // endpoint of each incident link, ascending link index. The fixed
    // per-entity summation order makes results thread-count-invariant.
    std::vector<std::size_t> offsets(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        offsets[i + 1] = offsets[i] + network.adjacency[i].size();
    }
    std::vector<EntityIndex> neighbor;
    neighbor.resize(offsets[n]);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t at = offsets[i];
        for (LinkIndex link_idx : network.adjacency[i]) {
            const Link& link = network.links[link_idx];
            neighbor[at++] = (link.from == static_cast<EntityIndex>(i)) ? link.to : link.from;
        }
    }

    std::vector<double> prev = snapshots[0].scores;
    std::vector<double> next(n);

    for (std::uint32_t iteration = 1; iteration <= config.max_iterations; ++iteration) {
        // Phase 1: accumulate neighbor sums from previous-iteration scores.
        parallel_ranges(n, threads, [&](std::size_t first, std::size_t last) {
            for (std::size_t i = first; i < last; ++i) {
                double sum = 0.0;
                for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k) {
                    sum += prev[neighbor[k]];
                }
                network.entities[i].new_score = sum;
            }
        });
        // Phase 2: synchronous update.
        parallel_ranges(n, threads, [&](std::size_t first, std::size_t last) {
            for (std::size_t i = first; i < last; ++i) {
                Entity& entity = network.entities[i];
                double divisor = std::max<double>(config.degree_floor, entity.n_connected);
                double updated = config.self_weight * prev[i] +
                                 config.neighbor_weight * entity.new_score / divisor;
                if (config.pin_counsel && entity.is_counsel) updated = 1.0;
                next[i] = updated;
            }
        });

        std::swap(prev, next);
        ScoreSnapshot snap;
        snap.iteration = iteration;
        snap.scores = prev;
        snapshots.push_back(std::move(snap));
    }

    for (std::size_t i = 0; i < n; ++i) {
        network.entities[i].score = prev[i];
    }
    return snapshots;
}

double link_score(const Link& link, const ScoreSnapshot& snapshot) {
    return (snapshot.scores.at(link.from) + snapshot.scores.at(link.to)) / 2.0;
}

std::array<std::size_t, 3> tier_split_sizes(std::size_t n_qualifying) {
    std::array<std::size_t, 3> sizes{};
    std::size_t base = n_qualifying / 3;
    std::size_t remainder = n_qualifying % 3;
    for (std::size_t i = 0; i < 3; ++i) {
        sizes[i] = base + (i < remainder ? 1 : 0);
    }
    return sizes;
}

TierAssignment assign_tiers(const EntityNetwork& network, const ScoreSnapshot& snapshot,
                            const RankConfig& config) {
    const std::size_t n = network.entities.size();
    TierAssignment assignment;
    assignment.tiers.assign(n, Tier::LikelyNonPriv);

    std::vector<EntityIndex> qualifying;
    for (EntityIndex i = 0; i < n; ++i) {
        if (network.entities[i].is_counsel) {
            assignment.tiers[i] = Tier::Counsel;
        } else if (snapshot.scores.at(i) >= config.tier_threshold) {
            qualifying.push_back(i);
        }
    }

    std::sort(qualifying.begin(), qualifying.end(), [&](EntityIndex a, EntityIndex b) {
        double sa = snapshot.scores[a];
        double sb = snapshot.scores[b];
        if (sa != sb) return sa > sb;
        return network.entities[a].key < network.entities[b].key;
    });

    auto sizes = tier_split_sizes(qualifying.size());
    std::size_t at = 0;
    const Tier tiers[3] = {Tier::LikelyPriv1, Tier::LikelyPriv2, Tier::LikelyPriv3};
    for (std::size_t group = 0; group < 3; ++group) {
        for (std::size_t j = 0; j < sizes[group]; ++j) {
            assignment.tiers[qualifying[at++]] = tiers[group];
        }
    }
    return assignment;
}

} // namespace privnet
