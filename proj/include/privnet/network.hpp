#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "privnet/records.hpp"

namespace privnet {

using EntityIndex = std::uint32_t;
using LinkIndex = std::uint32_t;
using DocIndex = std::uint32_t;

struct Entity {
    EntityKey key;
    bool is_counsel = false;
    double score = 0.0;     // mutated only by the ranking module
    double new_score = 0.0; // per-iteration accumulator
    std::uint32_t n_connected = 0; // distinct incident links, both directions
};

// One deduplicated directed sender->recipient pair. multiplicity counts the
// documents containing the pair; it does not weight propagation.
struct Link {
    EntityIndex from = 0;
    EntityIndex to = 0;
    std::uint32_t multiplicity = 0;
};

// Directed human-entity network. Entity indices follow first appearance over
// the document sequence (sender before recipients), which makes rebuilds
// from the same docs identical, not merely isomorphic.
struct EntityNetwork {
    std::vector<Entity> entities;
    std::vector<Link> links;
    // Per entity: incident link indices, both directions, ascending.
    // Every link appears exactly twice in total (once per endpoint).
    std::vector<std::vector<LinkIndex>> adjacency;
    // Per link: indices into the source document sequence, ascending,
    // one entry per document containing the pair.
    std::vector<std::vector<DocIndex>> link_docs;
    std::unordered_map<EntityKey, EntityIndex, EntityKeyHash> index_of;

    std::size_t entity_count() const { return entities.size(); }
    std::size_t link_count() const { return links.size(); }

    EntityIndex find(const EntityKey& key) const { return index_of.at(key); }
    bool has(const EntityKey& key) const { return index_of.count(key) != 0; }
};

struct BuildOptions {
    bool include_bcc = true;
};

// One Entity per distinct key seen as sender or recipient; one Link per
// distinct ordered pair aggregated over documents; self-links discarded.
EntityNetwork build_network(const std::vector<DocumentRecord>& docs, const CounselSet& counsel,
                            const BuildOptions& options = {});

// Distinct incident links in either direction; a reciprocal pair A->B and
// B->A counts as two.
std::uint32_t degree(const EntityNetwork& network, EntityIndex entity);

// JSON export with `entities` (key, is_counsel, score) and `links`
// (from_key, to_key, multiplicity). Streamed, fixed field order.
void export_network_json(const EntityNetwork& network, std::ostream& out);

// Inverse of export_network_json. Document associations are not part of the
// wire format, so link_docs comes back empty.
EntityNetwork import_network_json(std::istream& in);

} // namespace privnet
