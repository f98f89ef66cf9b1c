#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "privnet/classify.hpp"
#include "privnet/network.hpp"
#include "privnet/ranking.hpp"

namespace privnet {

// Per-entity document tallies: a document belongs to an entity when the
// entity is its sender or appears in any included recipient list.
struct EntityDocMetrics {
    std::uint32_t priv_docs = 0;
    std::uint32_t total_docs = 0;
    double precision = 0.0; // priv_docs / total_docs
};

// Throws Error{LabelsRequired} unless every document is labeled.
std::vector<EntityDocMetrics> entity_metrics(const std::vector<DocumentRecord>& docs,
                                             const EntityNetwork& network,
                                             const BuildOptions& options = {});

// Same tallies per link, over the documents containing the pair.
std::vector<EntityDocMetrics> link_metrics(const std::vector<DocumentRecord>& docs,
                                           const EntityNetwork& network);

// One scored, labeled item to be bucketed (an entity or a link).
struct ScoredItem {
    std::string key; // tie-break key: entity key, or "from\tto" for links
    double score = 0.0;
    std::uint32_t priv_docs = 0;
    std::uint32_t total_docs = 0;
    double precision = 0.0;
};

struct BucketRow {
    std::uint32_t bucket_index = 0;
    std::size_t n_members = 0;
    double mean_score = 0.0;
    double mean_priv_docs = 0.0;
    double mean_precision = 0.0;

    bool operator==(const BucketRow&) const = default;
};

struct BucketOptions {
    std::size_t bucket_size = 1000;
    // Default is the mean of per-member precisions; pooled divides summed
    // privileged counts by summed totals instead.
    bool pooled_precision = false;
};

// Sort by (score desc, key asc), chunk into bucket_size groups, emit per-
// bucket means. The last bucket may be short.
std::vector<BucketRow> bucket_curve(std::vector<ScoredItem> items, const BucketOptions& options);

std::vector<ScoredItem> entity_scored_items(const EntityNetwork& network,
                                            const ScoreSnapshot& snapshot,
                                            const std::vector<EntityDocMetrics>& metrics);
std::vector<ScoredItem> link_scored_items(const EntityNetwork& network,
                                          const ScoreSnapshot& snapshot,
                                          const std::vector<EntityDocMetrics>& metrics);

struct CategoryRow {
    LinkCategory category;
    double recall = 0.0;
    std::optional<double> precision; // null when no documents claimed
    std::uint32_t n_docs = 0;

    bool operator==(const CategoryRow&) const = default;
};

// Recall and precision for each of the 16 link categories, in sender-major
// order. Throws Error{LabelsRequired} on unlabeled corpora and
// Error{Config} when the corpus has no privileged documents (recall
// undefined).
std::vector<CategoryRow> category_table(const std::vector<DocumentRecord>& docs,
                                        const EntityNetwork& network, const TierAssignment& tiers,
                                        const BuildOptions& options = {});

// Serialization. CSV columns: `bucket,mean_score,mean_priv_docs,
// mean_precision` and `sender_tier,receiver_tier,recall,precision,n_docs`;
// JSON mirrors field names. Null precision is an empty CSV field.
void write_bucket_csv(std::ostream& out, const std::vector<BucketRow>& rows);
std::vector<BucketRow> read_bucket_csv(std::istream& in);
void write_bucket_json(std::ostream& out, const std::vector<BucketRow>& rows);
std::vector<BucketRow> read_bucket_json(std::istream& in);

void write_category_csv(std::ostream& out, const std::vector<CategoryRow>& rows);
std::vector<CategoryRow> read_category_csv(std::istream& in);
void write_category_json(std::ostream& out, const std::vector<CategoryRow>& rows);
std::vector<CategoryRow> read_category_json(std::istream& in);

} // namespace privnet
