#pragma once

#include <optional>
#include <string>
#include <vector>

#include "privnet/network.hpp"
#include "privnet/ranking.hpp"

namespace privnet {

// Ordered (sender tier, receiver tier) pair over the four non-counsel tiers;
// 16 valid combinations.
struct LinkCategory {
    Tier sender_tier = Tier::LikelyNonPriv;
    Tier receiver_tier = Tier::LikelyNonPriv;

    bool operator==(const LinkCategory&) const = default;
};

// "LikelyPriv1.LikelyNonPriv" and friends.
std::string category_name(const LinkCategory& category);

// All 16 categories in sender-major order (Priv1, Priv2, Priv3, NonPriv).
std::vector<LinkCategory> all_categories();

// The document's network links: one per distinct (sender, recipient) pair,
// recipients over To + CC (+ BCC when included at build time), self-pairs
// excluded, first-occurrence order.
std::vector<LinkIndex> document_links(const DocumentRecord& doc, const EntityNetwork& network,
                                      const BuildOptions& options = {});

// nullopt when either endpoint is counsel (excluded from category tables).
std::optional<LinkCategory> categorize_link(const Link& link, const TierAssignment& tiers);

// Indices of documents containing at least one link of the given category.
// Documents may be claimed by several categories.
std::vector<DocIndex> classify_documents_by_category(const std::vector<DocumentRecord>& docs,
                                                     const EntityNetwork& network,
                                                     const TierAssignment& tiers,
                                                     const LinkCategory& category,
                                                     const BuildOptions& options = {});

// Documents whose maximum link score meets the threshold. Anti-monotone in
// threshold; documents without links are never predicted.
std::vector<DocIndex> predict_by_link_score(const std::vector<DocumentRecord>& docs,
                                            const EntityNetwork& network,
                                            const ScoreSnapshot& snapshot, double threshold,
                                            const BuildOptions& options = {});

} // namespace privnet
