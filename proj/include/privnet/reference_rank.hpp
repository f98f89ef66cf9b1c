#pragma once

#include "privnet/ranking.hpp"

namespace privnet {

// Independent oracle for rank_entities: a direct, unoptimized sweep of the
// global link list once per iteration, pushing previous-iteration scores
// across both endpoints of every link. Shares no accumulation code with
// rank_entities; kept deliberately naive. Does not mutate the network.
std::vector<ScoreSnapshot> reference_rank(const EntityNetwork& network, const RankConfig& config);

} // namespace privnet
