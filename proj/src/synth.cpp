#include "privnet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "privnet/csv.hpp"
#include "privnet/errors.hpp"

namespace privnet {

namespace {

// mt19937_64 output is fully specified by the standard; the reductions here
// avoid std distributions, whose sequences are implementation-defined.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::uint64_t index(std::uint64_t bound) { return engine_() % bound; }

private:
    std::mt19937_64 engine_;
};

std::string entity_key_for(std::uint32_t i, bool is_counsel) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%s%06u@corp.example", is_counsel ? "counsel" : "user", i + 1);
    return buf;
}

const char* role_name(SynthRole role) {
    switch (role) {
    case SynthRole::Counsel: return "counsel";
    case SynthRole::Adjacent: return "adjacent";
    case SynthRole::General: return "general";
    }
    return "?";
}

SynthRole role_from_name(const std::string& name) {
    if (name == "counsel") return SynthRole::Counsel;
    if (name == "adjacent") return SynthRole::Adjacent;
    if (name == "general") return SynthRole::General;
    throw Error(ErrorCode::Corpus, "unknown role '" + name + "'");
}

} // namespace

void SynthConfig::validate() const {
    if (n_entities < 2) throw Error(ErrorCode::Config, "n_entities must be at least 2");
    if (n_docs < 1) throw Error(ErrorCode::Config, "n_docs must be at least 1");
    auto in01 = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!in01(counsel_fraction) || !in01(legal_affinity) || !in01(base_priv_rate)) {
        throw Error(ErrorCode::Config, "fractions and rates must be in [0, 1]");
    }
    if (adjacency_priv_boost < 0.0) {
        throw Error(ErrorCode::Config, "adjacency_priv_boost must be non-negative");
    }
    if (counsel_fraction == 0.0) {
        throw Error(ErrorCode::Config, "counsel_fraction of 0 yields no counsel; ranking degenerate");
    }
}

std::uint32_t SynthConfig::counsel_count() const {
    auto count = static_cast<std::uint32_t>(std::floor(counsel_fraction * n_entities));
    return std::max<std::uint32_t>(1, count);
}

SynthCorpus generate_corpus(const SynthConfig& config) {
    using namespace synth_shape;
    config.validate();

    DetRng rng(config.seed);
    const std::uint32_t n = config.n_entities;
    const std::uint32_t n_counsel = config.counsel_count();
    const std::uint32_t n_adjacent =
        static_cast<std::uint32_t>(std::floor(kAdjacentShare * (n - n_counsel)));
    const std::uint32_t n_general = n - n_counsel - n_adjacent;
    std::uint32_t n_hubs = std::clamp<std::uint32_t>(n / kHubDivisor, 1, kHubCap);
    n_hubs = std::min(n_hubs, n_general); // hubs live among general staff

    SynthCorpus corpus;
    corpus.truth.config = config;
    corpus.truth.entities.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        auto& e = corpus.truth.entities[i];
        if (i < n_counsel) {
            e.role = SynthRole::Counsel;
            e.involvement = 1.0;
        } else if (i < n_counsel + n_adjacent) {
            e.role = SynthRole::Adjacent;
            e.involvement = kAdjacentInvolvementMin +
                            (kAdjacentInvolvementMax - kAdjacentInvolvementMin) * rng.uniform01();
        } else {
            e.role = SynthRole::General;
            e.involvement = kGeneralInvolvementMax * rng.uniform01();
        }
        e.hub = i >= n - n_hubs;
        e.key.value = entity_key_for(i, e.role == SynthRole::Counsel);
        if (e.role == SynthRole::Counsel) corpus.counsel.members.insert(e.key);
    }

    // Weighted-all sampler: hubs carry kHubWeight units of mass, everyone
    // else one.
    const std::uint64_t total_weight =
        static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(n_hubs) * (kHubWeight - 1);
    const std::uint32_t first_hub = n - n_hubs;
    auto draw_weighted = [&]() -> std::uint32_t {
        std::uint64_t r = rng.index(total_weight);
        if (r < n) return static_cast<std::uint32_t>(r);
        return first_hub + static_cast<std::uint32_t>((r - n) / (kHubWeight - 1));
    };
    // Legal-cluster draw: counsel with probability kCounselPull, adjacent
    // staff otherwise.
    auto draw_cluster = [&]() -> std::uint32_t {
        if (n_adjacent == 0 || rng.uniform01() < kCounselPull) {
            return static_cast<std::uint32_t>(rng.index(n_counsel));
        }
        return n_counsel + static_cast<std::uint32_t>(rng.index(n_adjacent));
    };

    corpus.docs.reserve(config.n_docs);
    std::uint64_t priv_count = 0;
    std::vector<std::uint32_t> sampled;
    for (std::uint32_t d = 0; d < config.n_docs; ++d) {
        std::uint32_t sender = draw_weighted();
        double sender_inv = corpus.truth.entities[sender].involvement;
        std::uint32_t n_recipients = 1 + static_cast<std::uint32_t>(rng.index(kMaxRecipients));

        sampled.clear();
        std::uint32_t anchor = sender;
        for (std::uint32_t j = 0; j < n_recipients; ++j) {
            std::uint32_t recipient = (rng.uniform01() < config.legal_affinity * sender_inv)
                                          ? draw_cluster()
                                          : draw_weighted();
            if (j == 0) anchor = recipient;
            if (std::find(sampled.begin(), sampled.end(), recipient) == sampled.end()) {
                sampled.push_back(recipient);
            }
        }

        // Privilege is planted from latent involvement of the primary pair,
        // never from anything the ranking computes.
        double anchor_inv = corpus.truth.entities[anchor].involvement;
        double p = config.base_priv_rate *
                   (1.0 + config.adjacency_priv_boost * (sender_inv + anchor_inv) / 2.0);
        p = std::clamp(p, 0.0, 1.0);
        bool privileged = rng.uniform01() < p;
        if (privileged) ++priv_count;

        DocumentRecord doc;
        char id[16];
        std::snprintf(id, sizeof(id), "D%06u", d + 1);
        doc.doc_id = id;
        doc.sender = corpus.truth.entities[sender].key;
        for (std::size_t j = 0; j < sampled.size(); ++j) {
            const auto& key = corpus.truth.entities[sampled[j]].key;
            if (j > 0 && rng.uniform01() < kCcChance) {
                doc.recipients_cc.push_back(key);
            } else {
                doc.recipients_to.push_back(key);
            }
        }
        doc.privileged = privileged;
        corpus.docs.push_back(std::move(doc));
    }
    corpus.truth.realized_priv_rate = static_cast<double>(priv_count) / config.n_docs;
    return corpus;
}

void write_corpus(const SynthCorpus& corpus, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);

    {
        std::ofstream out(dir / "metadata.csv", std::ios::binary);
        if (!out) throw Error(ErrorCode::Io, "cannot write " + (dir / "metadata.csv").string());
        out << "DocID,From,To,CC,BCC,Privileged\n";
        std::string to, cc;
        for (const auto& doc : corpus.docs) {
            to.clear();
            cc.clear();
            for (std::size_t i = 0; i < doc.recipients_to.size(); ++i) {
                if (i) to += ';';
                to += doc.recipients_to[i].value;
            }
            for (std::size_t i = 0; i < doc.recipients_cc.size(); ++i) {
                if (i) cc += ';';
                cc += doc.recipients_cc[i].value;
            }
            csv::write_record(out, {doc.doc_id, doc.sender.value, to, cc, std::string{},
                                    doc.privileged.value() ? "1" : "0"});
        }
    }
    {
        std::ofstream out(dir / "counsel.txt", std::ios::binary);
        if (!out) throw Error(ErrorCode::Io, "cannot write " + (dir / "counsel.txt").string());
        out << "# generated counsel list\n";
        for (const auto& e : corpus.truth.entities) {
            if (e.role == SynthRole::Counsel) out << e.key.value << "\n";
        }
    }
    {
        // Streamed: entity lists can be large.
        std::ofstream out(dir / "ground_truth.json", std::ios::binary);
        if (!out) throw Error(ErrorCode::Io, "cannot write " + (dir / "ground_truth.json").string());
        const auto& cfg = corpus.truth.config;
        nlohmann::json config_json = {{"seed", cfg.seed},
                                      {"n_entities", cfg.n_entities},
                                      {"counsel_fraction", cfg.counsel_fraction},
                                      {"n_docs", cfg.n_docs},
                                      {"legal_affinity", cfg.legal_affinity},
                                      {"base_priv_rate", cfg.base_priv_rate},
                                      {"adjacency_priv_boost", cfg.adjacency_priv_boost}};
        out << "{\n\"config\": " << config_json.dump() << ",\n\"realized_priv_rate\": "
            << nlohmann::json(corpus.truth.realized_priv_rate).dump() << ",\n\"entities\": [";
        for (std::size_t i = 0; i < corpus.truth.entities.size(); ++i) {
            const auto& e = corpus.truth.entities[i];
            out << (i ? ",\n  " : "\n  ") << "{\"key\": " << nlohmann::json(e.key.value).dump()
                << ", \"role\": \"" << role_name(e.role)
                << "\", \"involvement\": " << nlohmann::json(e.involvement).dump()
                << ", \"hub\": " << (e.hub ? "true" : "false") << "}";
        }
        out << "\n]\n}\n";
    }
}

GroundTruth read_ground_truth(const std::filesystem::path& json_path) {
    std::ifstream in(json_path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Input, "cannot read " + json_path.string());
    auto doc = nlohmann::json::parse(in);

    GroundTruth truth;
    const auto& cfg = doc.at("config");
    truth.config.seed = cfg.at("seed").get<std::uint64_t>();
    truth.config.n_entities = cfg.at("n_entities").get<std::uint32_t>();
    truth.config.counsel_fraction = cfg.at("counsel_fraction").get<double>();
    truth.config.n_docs = cfg.at("n_docs").get<std::uint32_t>();
    truth.config.legal_affinity = cfg.at("legal_affinity").get<double>();
    truth.config.base_priv_rate = cfg.at("base_priv_rate").get<double>();
    truth.config.adjacency_priv_boost = cfg.at("adjacency_priv_boost").get<double>();
    truth.realized_priv_rate = doc.at("realized_priv_rate").get<double>();
    for (const auto& item : doc.at("entities")) {
        SynthEntity e;
        e.key.value = item.at("key").get<std::string>();
        e.role = role_from_name(item.at("role").get<std::string>());
        e.involvement = item.at("involvement").get<double>();
        e.hub = item.at("hub").get<bool>();
        truth.entities.push_back(std::move(e));
    }
    return truth;
}

} // namespace privnet
