#include "privnet/eval.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "privnet/csv.hpp"
#include "privnet/errors.hpp"

namespace privnet {

namespace {

void require_labels(const std::vector<DocumentRecord>& docs) {
    if (!corpus_labeled(docs)) {
        throw Error(ErrorCode::LabelsRequired,
                    "evaluation requires a fully labeled corpus (Privileged column)");
    }
}

Tier tier_from_name(const std::string& name) {
    for (Tier t : {Tier::LikelyPriv1, Tier::LikelyPriv2, Tier::LikelyPriv3, Tier::LikelyNonPriv,
                   Tier::Counsel}) {
        if (name == tier_name(t)) return t;
    }
    throw Error(ErrorCode::Corpus, "unknown tier name '" + name + "'");
}

} // namespace

std::vector<EntityDocMetrics> entity_metrics(const std::vector<DocumentRecord>& docs,
                                             const EntityNetwork& network,
                                             const BuildOptions& options) {
    require_labels(docs);
    std::vector<EntityDocMetrics> metrics(network.entities.size());

    std::vector<EntityIndex> participants;
    for (const auto& doc : docs) {
        participants.clear();
        auto add = [&](const EntityKey& key) {
            if (!network.has(key)) return;
            EntityIndex idx = network.find(key);
            if (std::find(participants.begin(), participants.end(), idx) == participants.end()) {
                participants.push_back(idx);
            }
        };
        add(doc.sender);
        for (const auto& k : doc.recipients_to) add(k);
        for (const auto& k : doc.recipients_cc) add(k);
        if (options.include_bcc) {
            for (const auto& k : doc.recipients_bcc) add(k);
        }
        bool priv = doc.privileged.value();
        for (EntityIndex idx : participants) {
            ++metrics[idx].total_docs;
            if (priv) ++metrics[idx].priv_docs;
        }
    }
    for (auto& m : metrics) {
        m.precision = m.total_docs ? static_cast<double>(m.priv_docs) / m.total_docs : 0.0;
    }
    return metrics;
}

std::vector<EntityDocMetrics> link_metrics(const std::vector<DocumentRecord>& docs,
                                           const EntityNetwork& network) {
    require_labels(docs);
    std::vector<EntityDocMetrics> metrics(network.links.size());
    for (std::size_t link_idx = 0; link_idx < network.links.size(); ++link_idx) {
        auto& m = metrics[link_idx];
        for (DocIndex doc_idx : network.link_docs[link_idx]) {
            ++m.total_docs;
            if (docs[doc_idx].privileged.value()) ++m.priv_docs;
        }
        m.precision = m.total_docs ? static_cast<double>(m.priv_docs) / m.total_docs : 0.0;
    }
    return metrics;
}

std::vector<BucketRow> bucket_curve(std::vector<ScoredItem> items, const BucketOptions& options) {
    if (options.bucket_size < 1) {
        throw Error(ErrorCode::Config, "bucket_size must be at least 1");
    }
    std::sort(items.begin(), items.end(), [](const ScoredItem& a, const ScoredItem& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.key < b.key;
    });

    std::vector<BucketRow> rows;
    for (std::size_t start = 0; start < items.size(); start += options.bucket_size) {
        std::size_t end = std::min(items.size(), start + options.bucket_size);
        BucketRow row;
        row.bucket_index = static_cast<std::uint32_t>(rows.size());
        row.n_members = end - start;
        double score_sum = 0.0;
        double priv_sum = 0.0;
        double precision_sum = 0.0;
        std::uint64_t pooled_priv = 0;
        std::uint64_t pooled_total = 0;
        for (std::size_t i = start; i < end; ++i) {
            score_sum += items[i].score;
            priv_sum += items[i].priv_docs;
            precision_sum += items[i].precision;
            pooled_priv += items[i].priv_docs;
            pooled_total += items[i].total_docs;
        }
        auto members = static_cast<double>(row.n_members);
        row.mean_score = score_sum / members;
        row.mean_priv_docs = priv_sum / members;
        row.mean_precision = options.pooled_precision
                                 ? (pooled_total ? static_cast<double>(pooled_priv) / pooled_total : 0.0)
                                 : precision_sum / members;
        rows.push_back(row);
    }
    return rows;
}

std::vector<ScoredItem> entity_scored_items(const EntityNetwork& network,
                                            const ScoreSnapshot& snapshot,
                                            const std::vector<EntityDocMetrics>& metrics) {
    std::vector<ScoredItem> items(network.entities.size());
    for (std::size_t i = 0; i < network.entities.size(); ++i) {
        items[i].key = network.entities[i].key.value;
        items[i].score = snapshot.scores.at(i);
        items[i].priv_docs = metrics.at(i).priv_docs;
        items[i].total_docs = metrics.at(i).total_docs;
        items[i].precision = metrics.at(i).precision;
    }
    return items;
}

std::vector<ScoredItem> link_scored_items(const EntityNetwork& network,
                                          const ScoreSnapshot& snapshot,
                                          const std::vector<EntityDocMetrics>& metrics) {
    std::vector<ScoredItem> items(network.links.size());
    for (std::size_t i = 0; i < network.links.size(); ++i) {
        const Link& link = network.links[i];
        items[i].key =
            network.entities[link.from].key.value + "\t" + network.entities[link.to].key.value;
        items[i].score = link_score(link, snapshot);
        items[i].priv_docs = metrics.at(i).priv_docs;
        items[i].total_docs = metrics.at(i).total_docs;
        items[i].precision = metrics.at(i).precision;
    }
    return items;
}

std::vector<CategoryRow> category_table(const std::vector<DocumentRecord>& docs,
                                        const EntityNetwork& network, const TierAssignment& tiers,
                                        const BuildOptions& options) {
    require_labels(docs);
    std::size_t total_privileged = 0;
    for (const auto& doc : docs) {
        if (doc.privileged.value()) ++total_privileged;
    }
    if (total_privileged == 0) {
        throw Error(ErrorCode::Config, "corpus has no privileged documents; recall undefined");
    }

    // One pass over documents: collect each document's category set, then
    // tally. Equivalent to running classify_documents_by_category per
    // category, which the tests cross-check.
    auto categories = all_categories();
    auto cat_slot = [](const LinkCategory& c) {
        return static_cast<std::size_t>(c.sender_tier) * 4 +
               static_cast<std::size_t>(c.receiver_tier);
    };
    std::vector<std::uint32_t> claimed(16, 0);
    std::vector<std::uint32_t> claimed_priv(16, 0);

    for (const auto& doc : docs) {
        bool doc_priv = doc.privileged.value();
        bool seen[16] = {};
        for (LinkIndex link_idx : document_links(doc, network, options)) {
            auto got = categorize_link(network.links[link_idx], tiers);
            if (!got) continue;
            std::size_t slot = cat_slot(*got);
            if (!seen[slot]) {
                seen[slot] = true;
                ++claimed[slot];
                if (doc_priv) ++claimed_priv[slot];
            }
        }
    }

    std::vector<CategoryRow> rows;
    rows.reserve(16);
    for (const auto& category : categories) {
        std::size_t slot = cat_slot(category);
        CategoryRow row;
        row.category = category;
        row.n_docs = claimed[slot];
        row.recall = static_cast<double>(claimed_priv[slot]) / static_cast<double>(total_privileged);
        if (claimed[slot] > 0) {
            row.precision = static_cast<double>(claimed_priv[slot]) / claimed[slot];
        }
        rows.push_back(row);
    }
    return rows;
}

void write_bucket_csv(std::ostream& out, const std::vector<BucketRow>& rows) {
    out << "bucket,mean_score,mean_priv_docs,mean_precision\n";
    for (const auto& row : rows) {
        csv::write_record(out, {std::to_string(row.bucket_index), csv::format_double(row.mean_score),
                                csv::format_double(row.mean_priv_docs),
                                csv::format_double(row.mean_precision)});
    }
}

std::vector<BucketRow> read_bucket_csv(std::istream& in) {
    std::vector<BucketRow> rows;
    auto header = csv::read_record(in);
    if (!header) throw Error(ErrorCode::Corpus, "empty bucket CSV");
    while (auto record = csv::read_record(in)) {
        if (record->size() == 1 && (*record)[0].empty()) continue;
        if (record->size() != 4) throw Error(ErrorCode::Corpus, "bucket CSV row needs 4 fields");
        BucketRow row;
        row.bucket_index = static_cast<std::uint32_t>(std::stoul((*record)[0]));
        row.mean_score = csv::parse_double((*record)[1]);
        row.mean_priv_docs = csv::parse_double((*record)[2]);
        row.mean_precision = csv::parse_double((*record)[3]);
        rows.push_back(row);
    }
    return rows;
}

void write_bucket_json(std::ostream& out, const std::vector<BucketRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
        arr.push_back({{"bucket", row.bucket_index},
                       {"mean_score", row.mean_score},
                       {"mean_priv_docs", row.mean_priv_docs},
                       {"mean_precision", row.mean_precision}});
    }
    out << arr.dump(2) << "\n";
}

std::vector<BucketRow> read_bucket_json(std::istream& in) {
    auto arr = nlohmann::json::parse(in);
    std::vector<BucketRow> rows;
    for (const auto& item : arr) {
        BucketRow row;
        row.bucket_index = item.at("bucket").get<std::uint32_t>();
        row.mean_score = item.at("mean_score").get<double>();
        row.mean_priv_docs = item.at("mean_priv_docs").get<double>();
        row.mean_precision = item.at("mean_precision").get<double>();
        rows.push_back(row);
    }
    return rows;
}

void write_category_csv(std::ostream& out, const std::vector<CategoryRow>& rows) {
    out << "sender_tier,receiver_tier,recall,precision,n_docs\n";
    for (const auto& row : rows) {
        csv::write_record(out,
                          {tier_name(row.category.sender_tier), tier_name(row.category.receiver_tier),
                           csv::format_double(row.recall),
                           row.precision ? csv::format_double(*row.precision) : std::string{},
                           std::to_string(row.n_docs)});
    }
}

std::vector<CategoryRow> read_category_csv(std::istream& in) {
    std::vector<CategoryRow> rows;
    auto header = csv::read_record(in);
    if (!header) throw Error(ErrorCode::Corpus, "empty category CSV");
    while (auto record = csv::read_record(in)) {
        if (record->size() == 1 && (*record)[0].empty()) continue;
        if (record->size() != 5) throw Error(ErrorCode::Corpus, "category CSV row needs 5 fields");
        CategoryRow row;
        row.category.sender_tier = tier_from_name((*record)[0]);
        row.category.receiver_tier = tier_from_name((*record)[1]);
        row.recall = csv::parse_double((*record)[2]);
        if (!(*record)[3].empty()) row.precision = csv::parse_double((*record)[3]);
        row.n_docs = static_cast<std::uint32_t>(std::stoul((*record)[4]));
        rows.push_back(row);
    }
    return rows;
}

void write_category_json(std::ostream& out, const std::vector<CategoryRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json item = {{"sender_tier", tier_name(row.category.sender_tier)},
                               {"receiver_tier", tier_name(row.category.receiver_tier)},
                               {"recall", row.recall},
                               {"n_docs", row.n_docs}};
        if (row.precision) {
            item["precision"] = *row.precision;
        } else {
            item["precision"] = nullptr;
        }
        arr.push_back(item);
    }
    out << arr.dump(2) << "\n";
}

std::vector<CategoryRow> read_category_json(std::istream& in) {
    auto arr = nlohmann::json::parse(in);
    std::vector<CategoryRow> rows;
    for (const auto& item : arr) {
        CategoryRow row;
        row.category.sender_tier = tier_from_name(item.at("sender_tier").get<std::string>());
        row.category.receiver_tier = tier_from_name(item.at("receiver_tier").get<std::string>());
        row.recall = item.at("recall").get<double>();
        if (!item.at("precision").is_null()) row.precision = item.at("precision").get<double>();
        row.n_docs = item.at("n_docs").get<std::uint32_t>();
        rows.push_back(row);
    }
    return rows;
}

} // namespace privnet
