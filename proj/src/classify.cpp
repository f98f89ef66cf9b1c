#include "privnet/classify.hpp"

#include <algorithm>

namespace privnet {

std::string category_name(const LinkCategory& category) {
    return std::string(tier_name(category.sender_tier)) + "." +
           tier_name(category.receiver_tier);
}

std::vector<LinkCategory> all_categories() {
    const Tier order[4] = {Tier::LikelyPriv1, Tier::LikelyPriv2, Tier::LikelyPriv3,
                           Tier::LikelyNonPriv};
    std::vector<LinkCategory> categories;
    categories.reserve(16);
    for (Tier sender : order) {
        for (Tier receiver : order) {
            categories.push_back(LinkCategory{sender, receiver});
        }
    }
    return categories;
}

std::vector<LinkIndex> document_links(const DocumentRecord& doc, const EntityNetwork& network,
                                      const BuildOptions& options) {
    std::vector<LinkIndex> out;
    if (!network.has(doc.sender)) return out;
    EntityIndex sender = network.find(doc.sender);

    auto visit = [&](const std::vector<EntityKey>& list) {
        for (const auto& key : list) {
            if (!network.has(key)) continue;
            EntityIndex recipient = network.find(key);
            if (recipient == sender) continue;
            // The network holds at most one link per ordered pair; scan the
            // smaller adjacency side to find it.
            const auto& adj = network.adjacency[sender].size() <= network.adjacency[recipient].size()
                                  ? network.adjacency[sender]
                                  : network.adjacency[recipient];
            for (LinkIndex link_idx : adj) {
                const Link& link = network.links[link_idx];
                if (link.from == sender && link.to == recipient) {
                    if (std::find(out.begin(), out.end(), link_idx) == out.end()) {
                        out.push_back(link_idx);
                    }
                    break;
                }
            }
        }
    };
    visit(doc.recipients_to);
    visit(doc.recipients_cc);
    if (options.include_bcc) visit(doc.recipients_bcc);
    return out;
}

std::optional<LinkCategory> categorize_link(const Link& link, const TierAssignment& tiers) {
    Tier sender = tiers.tiers.at(link.from);
    Tier receiver = tiers.tiers.at(link.to);
    if (sender == Tier::Counsel || receiver == Tier::Counsel) return std::nullopt;
    return LinkCategory{sender, receiver};
}

std::vector<DocIndex> classify_documents_by_category(const std::vector<DocumentRecord>& docs,
                                                     const EntityNetwork& network,
                                                     const TierAssignment& tiers,
                                                     const LinkCategory& category,
                                                     const BuildOptions& options) {
    std::vector<DocIndex> claimed;
    for (DocIndex doc_idx = 0; doc_idx < docs.size(); ++doc_idx) {
        for (LinkIndex link_idx : document_links(docs[doc_idx], network, options)) {
            auto got = categorize_link(network.links[link_idx], tiers);
            if (got && *got == category) {
                claimed.push_back(doc_idx);
                break;
            }
        }
    }
    return claimed;
}

std::vector<DocIndex> predict_by_link_score(const std::vector<DocumentRecord>& docs,
                                            const EntityNetwork& network,
                                            const ScoreSnapshot& snapshot, double threshold,
                                            const BuildOptions& options) {
    std::vector<DocIndex> predicted;
    for (DocIndex doc_idx = 0; doc_idx < docs.size(); ++doc_idx) {
        bool hit = false;
        for (LinkIndex link_idx : document_links(docs[doc_idx], network, options)) {
            if (link_score(network.links[link_idx], snapshot) >= threshold) {
                hit = true;
                break;
            }
        }
        if (hit) predicted.push_back(doc_idx);
    }
    return predicted;
}

} // namespace privnet
