#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "privnet/ranking.hpp"
#include "privnet/reference_rank.hpp"
#include "support/builders.hpp"

using namespace privnet;
using testsupport::counsel;
using testsupport::doc;

namespace {

EntityNetwork path_abc() {
    // A(counsel) -> B, B -> C.
    std::vector<DocumentRecord> docs = {
        doc("1", "a@x.com", {"b@x.com"}),
        doc("2", "b@x.com", {"c@x.com"}),
    };
    return build_network(docs, counsel({"a@x.com"}));
}

} // namespace

TEST_CASE("iteration zero is the counsel indicator") {
    auto net = path_abc();
    RankConfig config;
    config.max_iterations = 0;
    auto snaps = rank_entities(net, config);
    REQUIRE(snaps.size() == 1);
    CHECK(snaps[0].iteration == 0);
    CHECK(snaps[0].scores == std::vector<double>{1.0, 0.0, 0.0});
}

TEST_CASE("path fixture after one iteration") {
    auto net = path_abc();
    RankConfig config;
    config.max_iterations = 1;
    auto snaps = rank_entities(net, config);
    REQUIRE(snaps.size() == 2);
    // A: 0.3*1 + 0.7*0/10, B: 0.3*0 + 0.7*(1+0)/max(10,2), C: 0.
    CHECK(snaps[1].scores[0] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(snaps[1].scores[1] == doctest::Approx(0.07).epsilon(1e-15));
    CHECK(snaps[1].scores[2] == 0.0);
}

TEST_CASE("isolated counsel node decays by the self weight") {
    std::vector<DocumentRecord> docs = {doc("1", "gc@x.com", {})};
    auto net = build_network(docs, counsel({"gc@x.com"}));
    RankConfig config;
    config.max_iterations = 1;
    auto snaps = rank_entities(net, config);
    CHECK(snaps[1].scores[0] == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("zero counsel stays at the zero fixed point") {
    std::vector<DocumentRecord> docs = {
        doc("1", "a@x.com", {"b@x.com"}),
        doc("2", "b@x.com", {"c@x.com", "a@x.com"}),
    };
    auto net = build_network(docs, {});
    RankConfig config;
    config.max_iterations = 5;
    for (const auto& snap : rank_entities(net, config)) {
        for (double s : snap.scores) CHECK(s == 0.0);
    }
}

TEST_CASE("empty network yields empty snapshots") {
    auto net = build_network({}, {});
    RankConfig config;
    config.max_iterations = 3;
    auto snaps = rank_entities(net, config);
    REQUIRE(snaps.size() == 4);
    for (const auto& snap : snaps) CHECK(snap.scores.empty());
}

TEST_CASE("pin_counsel holds counsel at 1") {
    auto net = path_abc();
    RankConfig config;
    config.max_iterations = 3;
    config.pin_counsel = true;
    auto snaps = rank_entities(net, config);
    for (const auto& snap : snaps) CHECK(snap.scores[0] == 1.0);
    // Non-counsel still move.
    CHECK(snaps[1].scores[1] == doctest::Approx(0.07).epsilon(1e-15));
}

TEST_CASE("degree floor saturates once a node has ten hot neighbors") {
    // Hub receives from 12 counsel: average hits 1, score hits 0.7 after
    // one iteration.
    std::vector<DocumentRecord> docs;
    std::vector<std::string> lawyers;
    for (int i = 0; i < 12; ++i) {
        std::string who = "c" + std::to_string(i) + "@x.com";
        docs.push_back(doc(std::to_string(i), who, {"hub@x.com"}));
        lawyers.push_back(who);
    }
    auto net = build_network(docs, counsel(lawyers));
    RankConfig config;
    config.max_iterations = 1;
    auto snaps = rank_entities(net, config);
    auto hub = net.find(EntityKey{"hub@x.com"});
    CHECK(snaps[1].scores[hub] == doctest::Approx(config.neighbor_weight).epsilon(1e-15));
}

TEST_CASE("final entity scores land in the network") {
    auto net = path_abc();
    RankConfig config;
    config.max_iterations = 2;
    auto snaps = rank_entities(net, config);
    for (std::size_t i = 0; i < net.entity_count(); ++i) {
        CHECK(net.entities[i].score == snaps.back().scores[i]);
    }
}

TEST_CASE("config validation") {
    RankConfig config;
    config.self_weight = 0.5;
    CHECK_THROWS(config.validate());
    config = {};
    config.degree_floor = 0;
    CHECK_THROWS(config.validate());
    config = {};
    config.neighbor_weight = -0.1;
    config.self_weight = 1.1;
    CHECK_THROWS(config.validate());
}

TEST_CASE("optimized ranking matches the reference oracle") {
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 30; ++round) {
        auto fixture = testsupport::random_net(rng);
        auto net = build_network(fixture.docs, fixture.counsel);
        for (std::uint32_t iters : {1u, 2u, 3u}) {
            RankConfig config;
            config.max_iterations = iters;
            auto expected = reference_rank(net, config);
            auto got = rank_entities(net, config, round % 4 + 1);
            REQUIRE(got.size() == expected.size());
            for (std::size_t k = 0; k < got.size(); ++k) {
                REQUIRE(got[k].scores.size() == expected[k].scores.size());
                for (std::size_t i = 0; i < got[k].scores.size(); ++i) {
                    CHECK(std::abs(got[k].scores[i] - expected[k].scores[i]) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("boundedness and support monotonicity") {
    std::mt19937_64 rng(99);
    for (int round = 0; round < 10; ++round) {
        auto fixture = testsupport::random_net(rng);
        auto net = build_network(fixture.docs, fixture.counsel);
        RankConfig config;
        config.max_iterations = 10;
        auto snaps = rank_entities(net, config);
        for (std::size_t k = 0; k < snaps.size(); ++k) {
            for (std::size_t i = 0; i < snaps[k].scores.size(); ++i) {
                double s = snaps[k].scores[i];
                CHECK(s >= 0.0);
                CHECK(s <= 1.0);
                if (k > 0 && snaps[k - 1].scores[i] > 0.0) {
                    CHECK(s > 0.0); // support never shrinks
                }
            }
        }
    }
}

TEST_CASE("results are independent of link processing order") {
    std::mt19937_64 rng(7);
    auto fixture = testsupport::random_net(rng);
    auto net = build_network(fixture.docs, fixture.counsel);

    // Shuffle the documents, rebuild: entity iteration order inside an
    // iteration changes, synchronous semantics keep values equal to 1e-12.
    auto shuffled_docs = fixture.docs;
    std::shuffle(shuffled_docs.begin(), shuffled_docs.end(), rng);
    auto shuffled_net = build_network(shuffled_docs, fixture.counsel);

    RankConfig config;
    config.max_iterations = 3;
    auto a = rank_entities(net, config);
    auto b = rank_entities(shuffled_net, config);

    for (std::size_t k = 0; k < a.size(); ++k) {
        for (std::size_t i = 0; i < net.entity_count(); ++i) {
            auto j = shuffled_net.find(net.entities[i].key);
            CHECK(std::abs(a[k].scores[i] - b[k].scores[j]) <= 1e-12);
        }
    }
}

TEST_CASE("thread count does not change bits") {
    std::mt19937_64 rng(5150);
    auto fixture = testsupport::random_net(rng, 150, 1500);
    auto net = build_network(fixture.docs, fixture.counsel);
    RankConfig config;
    config.max_iterations = 3;
    auto one = rank_entities(net, config, 1);
    auto eight = rank_entities(net, config, 8);
    for (std::size_t k = 0; k < one.size(); ++k) {
        CHECK(one[k].scores == eight[k].scores); // bitwise
    }
}

TEST_CASE("link_score is the endpoint mean") {
    auto net = path_abc();
    RankConfig config;
    config.max_iterations = 1;
    auto snaps = rank_entities(net, config);
    // Link A->B from the path example: (0.3 + 0.07) / 2.
    CHECK(link_score(net.links[0], snaps[1]) == doctest::Approx(0.185).epsilon(1e-15));
    ScoreSnapshot ones{0, {1.0, 1.0, 1.0}};
    CHECK(link_score(net.links[0], ones) == 1.0);
    ScoreSnapshot zeros{0, {0.0, 0.0, 0.0}};
    CHECK(link_score(net.links[0], zeros) == 0.0);
}

TEST_CASE("tier split sizes") {
    CHECK(tier_split_sizes(7) == std::array<std::size_t, 3>{3, 2, 2});
    CHECK(tier_split_sizes(6) == std::array<std::size_t, 3>{2, 2, 2});
    CHECK(tier_split_sizes(8) == std::array<std::size_t, 3>{3, 3, 2});
    CHECK(tier_split_sizes(0) == std::array<std::size_t, 3>{0, 0, 0});
    CHECK(tier_split_sizes(1) == std::array<std::size_t, 3>{1, 0, 0});
}

namespace {

// Hand-built network: scores injected through a snapshot, no ranking run.
struct TierFixture {
    EntityNetwork net;
    ScoreSnapshot snap;
};

TierFixture tier_fixture(const std::vector<std::pair<std::string, double>>& scored,
                         const std::vector<std::string>& lawyers) {
    std::vector<DocumentRecord> docs;
    for (std::size_t i = 0; i < scored.size(); ++i) {
        docs.push_back(doc(std::to_string(i), scored[i].first, {}));
    }
    TierFixture fixture{build_network(docs, counsel(lawyers)), {}};
    fixture.snap.iteration = 1;
    for (const auto& [key, score] : scored) {
        (void)key;
        fixture.snap.scores.push_back(score);
    }
    return fixture;
}

} // namespace

TEST_CASE("assign_tiers splits qualifiers evenly, remainder to the front") {
    auto fixture = tier_fixture({{"a@x", 0.9},
                                 {"b@x", 0.8},
                                 {"c@x", 0.7},
                                 {"d@x", 0.6},
                                 {"e@x", 0.5},
                                 {"f@x", 0.4},
                                 {"g@x", 0.3}},
                                {});
    RankConfig config;
    auto tiers = assign_tiers(fixture.net, fixture.snap, config);
    std::vector<Tier> expected = {Tier::LikelyPriv1, Tier::LikelyPriv1, Tier::LikelyPriv1,
                                  Tier::LikelyPriv2, Tier::LikelyPriv2, Tier::LikelyPriv3,
                                  Tier::LikelyPriv3};
    CHECK(tiers.tiers == expected);
}

TEST_CASE("assign_tiers breaks score ties by ascending key") {
    auto fixture = tier_fixture({{"zz@x", 0.9},
                                 {"mm@x", 0.5},
                                 {"aa@x", 0.5},
                                 {"bb@x", 0.2},
                                 {"cc@x", 0.15},
                                 {"dd@x", 0.1}},
                                {});
    RankConfig config;
    auto tiers = assign_tiers(fixture.net, fixture.snap, config);
    // Order: zz(0.9), aa(0.5), mm(0.5), bb(0.2), cc(0.15), dd(0.1) -> 2/2/2.
    CHECK(tiers.tiers[0] == Tier::LikelyPriv1); // zz
    CHECK(tiers.tiers[2] == Tier::LikelyPriv1); // aa wins the tie on key
    CHECK(tiers.tiers[1] == Tier::LikelyPriv2); // mm
    CHECK(tiers.tiers[3] == Tier::LikelyPriv2); // bb
    CHECK(tiers.tiers[4] == Tier::LikelyPriv3); // cc
    CHECK(tiers.tiers[5] == Tier::LikelyPriv3); // dd at exactly 0.1 qualifies
}

TEST_CASE("assign_tiers threshold is strict below, counsel is excluded") {
    auto fixture = tier_fixture({{"gc@x", 0.95}, {"a@x", 0.0999}, {"b@x", 0.5}}, {"gc@x"});
    RankConfig config;
    auto tiers = assign_tiers(fixture.net, fixture.snap, config);
    CHECK(tiers.tiers[0] == Tier::Counsel);
    CHECK(tiers.tiers[1] == Tier::LikelyNonPriv);
    CHECK(tiers.tiers[2] == Tier::LikelyPriv1);
}

TEST_CASE("tier assignment is a partition with ordered groups") {
    std::mt19937_64 rng(31337);
    for (int round = 0; round < 10; ++round) {
        auto fixture = testsupport::random_net(rng, 120, 900);
        auto net = build_network(fixture.docs, fixture.counsel);
        RankConfig config;
        config.max_iterations = 3;
        auto snaps = rank_entities(net, config);
        config.tier_threshold = 0.02; // qualify a decent slice
        auto tiers = assign_tiers(net, snaps.back(), config);

        REQUIRE(tiers.tiers.size() == net.entity_count());
        std::array<std::vector<double>, 3> group_scores;
        std::size_t counsel_seen = 0;
        for (std::size_t i = 0; i < net.entity_count(); ++i) {
            Tier t = tiers.tiers[i];
            if (net.entities[i].is_counsel) {
                CHECK(t == Tier::Counsel);
                ++counsel_seen;
                continue;
            }
            CHECK(t != Tier::Counsel);
            double s = snaps.back().scores[i];
            if (t == Tier::LikelyNonPriv) {
                CHECK(s < config.tier_threshold);
            } else {
                CHECK(s >= config.tier_threshold);
                group_scores[static_cast<std::size_t>(t)].push_back(s);
            }
        }
        // |P1| - |P3| in {0, 1, 2}; later tiers never outgrow earlier ones.
        std::size_t p1 = group_scores[0].size(), p2 = group_scores[1].size(),
                    p3 = group_scores[2].size();
        CHECK(p1 >= p2);
        CHECK(p2 >= p3);
        CHECK(p1 - p3 <= 2);
        // Group boundaries respect score order.
        auto min_of = [](const std::vector<double>& v) {
            return *std::min_element(v.begin(), v.end());
        };
        auto max_of = [](const std::vector<double>& v) {
            return *std::max_element(v.begin(), v.end());
        };
        if (p1 && p2) CHECK(min_of(group_scores[0]) >= max_of(group_scores[1]));
        if (p2 && p3) CHECK(min_of(group_scores[1]) >= max_of(group_scores[2]));
        (void)counsel_seen;
    }
}
