#pragma once

#include <compare>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace privnet {

// Canonical identity of a person node: lowercase, trimmed, angle brackets
// stripped. Equal values denote the same node. Produced by normalize_address;
// never construct one from raw header text directly.
struct EntityKey {
    std::string value;

    auto operator<=>(const EntityKey&) const = default;
};

struct EntityKeyHash {
    std::size_t operator()(const EntityKey& k) const noexcept {
        return std::hash<std::string>{}(k.value);
    }
};

// One email's parsed header metadata plus optional privilege label.
// Recipient lists are deduplicated after normalization; a record may have
// zero recipients (it then contributes documents but no links).
struct DocumentRecord {
    std::string doc_id;
    EntityKey sender;
    std::vector<EntityKey> recipients_to;
    std::vector<EntityKey> recipients_cc;
    std::vector<EntityKey> recipients_bcc;
    std::optional<bool> privileged;
};

// The known-lawyer list. Membership is exact match on normalized keys.
struct CounselSet {
    std::unordered_set<EntityKey, EntityKeyHash> members;

    bool contains(const EntityKey& key) const { return members.count(key) != 0; }
    std::size_t size() const { return members.size(); }
    bool empty() const { return members.empty(); }
};

// True iff every document carries a privilege label. Evaluation operations
// refuse partially or fully unlabeled corpora.
inline bool corpus_labeled(const std::vector<DocumentRecord>& docs) {
    for (const auto& d : docs) {
        if (!d.privileged.has_value()) return false;
    }
    return !docs.empty();
}

} // namespace privnet
