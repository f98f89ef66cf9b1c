#include "privnet/network.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "privnet/errors.hpp"

namespace privnet {

namespace {

// Packed ordered-pair key for the link lookup table.
std::uint64_t pair_key(EntityIndex from, EntityIndex to) {
    return (static_cast<std::uint64_t>(from) << 32) | to;
}

} // namespace

EntityNetwork build_network(const std::vector<DocumentRecord>& docs, const CounselSet& counsel,
                            const BuildOptions& options) {
    EntityNetwork net;
    std::unordered_map<std::uint64_t, LinkIndex> link_of;

    auto intern = [&](const EntityKey& key) -> EntityIndex {
        auto [it, inserted] = net.index_of.try_emplace(key, static_cast<EntityIndex>(net.entities.size()));
        if (inserted) {
            Entity entity;
            entity.key = key;
            entity.is_counsel = counsel.contains(key);
            net.entities.push_back(std::move(entity));
            net.adjacency.emplace_back();
        }
        return it->second;
    };

    std::vector<EntityIndex> doc_recipients;
    for (DocIndex doc_idx = 0; doc_idx < docs.size(); ++doc_idx) {
        const auto& doc = docs[doc_idx];
        EntityIndex sender = intern(doc.sender);

        doc_recipients.clear();
        auto add_recipients = [&](const std::vector<EntityKey>& list) {
            for (const auto& key : list) {
                EntityIndex idx = intern(key);
                if (idx == sender) continue; // self-links discarded
                if (std::find(doc_recipients.begin(), doc_recipients.end(), idx) ==
                    doc_recipients.end()) {
                    doc_recipients.push_back(idx);
                }
            }
        };
        add_recipients(doc.recipients_to);
        add_recipients(doc.recipients_cc);
        if (options.include_bcc) add_recipients(doc.recipients_bcc);

        for (EntityIndex recipient : doc_recipients) {
            auto [it, inserted] =
                link_of.try_emplace(pair_key(sender, recipient),
                                    static_cast<LinkIndex>(net.links.size()));
            LinkIndex link_idx = it->second;
            if (inserted) {
                net.links.push_back(Link{sender, recipient, 0});
                net.link_docs.emplace_back();
                net.adjacency[sender].push_back(link_idx);
                net.adjacency[recipient].push_back(link_idx);
            }
            // Documents arrive in order, so one back() check deduplicates.
            auto& docs_of_link = net.link_docs[link_idx];
            if (docs_of_link.empty() || docs_of_link.back() != doc_idx) {
                docs_of_link.push_back(doc_idx);
                ++net.links[link_idx].multiplicity;
            }
        }
    }

    for (EntityIndex i = 0; i < net.entities.size(); ++i) {
        net.entities[i].n_connected = static_cast<std::uint32_t>(net.adjacency[i].size());
    }
    return net;
}

std::uint32_t degree(const EntityNetwork& network, EntityIndex entity) {
    return static_cast<std::uint32_t>(network.adjacency.at(entity).size());
}

void export_network_json(const EntityNetwork& network, std::ostream& out) {
    // Streamed by hand: corpora can reach millions of links, and a DOM
    // would multiply the memory footprint.
    auto quoted = [](const std::string& s) { return nlohmann::json(s).dump(); };

    out << "{\n  \"entities\": [";
    for (std::size_t i = 0; i < network.entities.size(); ++i) {
        const auto& e = network.entities[i];
        out << (i ? ",\n    " : "\n    ") << "{\"key\": " << quoted(e.key.value)
            << ", \"is_counsel\": " << (e.is_counsel ? "true" : "false")
            << ", \"score\": " << nlohmann::json(e.score).dump() << "}";
    }
    out << "\n  ],\n  \"links\": [";
    for (std::size_t i = 0; i < network.links.size(); ++i) {
        const auto& l = network.links[i];
        out << (i ? ",\n    " : "\n    ")
            << "{\"from_key\": " << quoted(network.entities[l.from].key.value)
            << ", \"to_key\": " << quoted(network.entities[l.to].key.value)
            << ", \"multiplicity\": " << l.multiplicity << "}";
    }
    out << "\n  ]\n}\n";
}

EntityNetwork import_network_json(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Corpus, std::string("invalid network JSON: ") + e.what());
    }

    EntityNetwork net;
    for (const auto& item : doc.at("entities")) {
        Entity entity;
        entity.key.value = item.at("key").get<std::string>();
        entity.is_counsel = item.at("is_counsel").get<bool>();
        entity.score = item.at("score").get<double>();
        auto [it, inserted] =
            net.index_of.try_emplace(entity.key, static_cast<EntityIndex>(net.entities.size()));
        if (!inserted) {
            throw Error(ErrorCode::Corpus, "duplicate entity key '" + entity.key.value + "'");
        }
        net.entities.push_back(std::move(entity));
        net.adjacency.emplace_back();
    }
    for (const auto& item : doc.at("links")) {
        EntityKey from{item.at("from_key").get<std::string>()};
        EntityKey to{item.at("to_key").get<std::string>()};
        if (!net.has(from) || !net.has(to)) {
            throw Error(ErrorCode::Corpus, "link references unknown entity");
        }
        Link link;
        link.from = net.find(from);
        link.to = net.find(to);
        link.multiplicity = item.at("multiplicity").get<std::uint32_t>();
        if (link.from == link.to) {
            throw Error(ErrorCode::Corpus, "self-link in network JSON");
        }
        auto link_idx = static_cast<LinkIndex>(net.links.size());
        net.links.push_back(link);
        net.link_docs.emplace_back();
        net.adjacency[link.from].push_back(link_idx);
        net.adjacency[link.to].push_back(link_idx);
    }
    for (EntityIndex i = 0; i < net.entities.size(); ++i) {
        net.entities[i].n_connected = static_cast<std::uint32_t>(net.adjacency[i].size());
    }
    return net;
}

} // namespace privnet
