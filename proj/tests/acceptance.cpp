// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Needs the CLI binary path (--cli=PATH or PRIVNET_CLI) for the
// determinism and scale criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "privnet/classify.hpp"
#include "privnet/eval.hpp"
#include "privnet/ingest.hpp"
#include "privnet/pipeline.hpp"
#include "privnet/ranking.hpp"
#include "privnet/reference_rank.hpp"
#include "privnet/synth.hpp"
#include "support/run_cli.hpp"
#include "support/stats.hpp"
#include "support/temp_dir.hpp"

using namespace privnet;
using clk = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
    std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(clk::time_point start) {
    return std::chrono::duration<double>(clk::now() - start).count();
}

// Shared random-network source for criteria 1 and 3: up to 200 nodes,
// up to 2000 link draws, random counsel subsets.
struct RandomCase {
    std::vector<DocumentRecord> docs;
    CounselSet counsel;
};

RandomCase random_case(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> node_count(2, 200);
    std::uniform_int_distribution<std::size_t> link_draws(1, 2000);
    std::size_t n = node_count(rng);
    std::size_t draws = link_draws(rng);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    auto name = [](std::size_t i) { return "n" + std::to_string(i) + "@case.example"; };
    RandomCase c;
    for (std::size_t d = 0; d < draws; ++d) {
        std::size_t from = pick(rng);
        std::size_t to = pick(rng);
        if (from == to) continue;
        DocumentRecord record;
        record.doc_id = "d" + std::to_string(d);
        record.sender.value = name(from);
        record.recipients_to.push_back(EntityKey{name(to)});
        c.docs.push_back(std::move(record));
    }
    double counsel_rate = 0.02 + 0.4 * coin(rng);
    for (std::size_t i = 0; i < n; ++i) {
        if (coin(rng) < counsel_rate) c.counsel.members.insert(EntityKey{name(i)});
    }
    return c;
}

void criterion_1_oracle_equivalence() {
    auto start = clk::now();
    std::mt19937_64 rng(1001);
    double worst = 0.0;
    bool pass = true;
    for (int round = 0; round < 100; ++round) {
        auto c = random_case(rng);
        auto net = build_network(c.docs, c.counsel);
        for (std::uint32_t iters : {1u, 2u, 3u}) {
            RankConfig config;
            config.max_iterations = iters;
            auto expected = reference_rank(net, config);
            auto got = rank_entities(net, config, 1 + round % 4);
            if (got.size() != expected.size()) {
                pass = false;
                continue;
            }
            for (std::size_t k = 0; k < got.size(); ++k) {
                for (std::size_t i = 0; i < got[k].scores.size(); ++i) {
                    double diff = std::abs(got[k].scores[i] - expected[k].scores[i]);
                    worst = std::max(worst, diff);
                    if (diff > 1e-12) pass = false;
                }
            }
        }
    }
    double elapsed = seconds_since(start);
    if (elapsed >= 10.0) pass = false;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "max |diff| %.3g, %.2fs over 100 networks x 3 depths",
                  worst, elapsed);
    report(1, pass, "rank_entities matches reference_rank within 1e-12", detail);
}

void criterion_2_hand_fixture() {
    std::vector<DocumentRecord> docs(2);
    docs[0].doc_id = "1";
    docs[0].sender.value = "a@x.com";
    docs[0].recipients_to.push_back(EntityKey{"b@x.com"});
    docs[1].doc_id = "2";
    docs[1].sender.value = "b@x.com";
    docs[1].recipients_to.push_back(EntityKey{"c@x.com"});
    CounselSet counsel;
    counsel.members.insert(EntityKey{"a@x.com"});

    auto net = build_network(docs, counsel);
    RankConfig config;
    config.max_iterations = 1;
    auto snaps = rank_entities(net, config);
    double a = snaps[1].scores[net.find(EntityKey{"a@x.com"})];
    double b = snaps[1].scores[net.find(EntityKey{"b@x.com"})];
    double c = snaps[1].scores[net.find(EntityKey{"c@x.com"})];

    // 0.07 is not representable as the exact product 0.7*1/10; one ulp of
    // slack (1e-15 absolute) is the tightest honest reading of "exactly".
    bool pass = std::abs(a - 0.3) <= 1e-15 && std::abs(b - 0.07) <= 1e-15 && c == 0.0;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "got (%.17g, %.17g, %.17g)", a, b, c);
    report(2, pass, "path A(counsel)-B-C scores (0.3, 0.07, 0.0) after one iteration", detail);
}

void criterion_3_bounded_monotone() {
    std::mt19937_64 rng(3003);
    bool pass = true;
    for (int round = 0; round < 100; ++round) {
        auto c = random_case(rng);
        auto net = build_network(c.docs, c.counsel);
        RankConfig config;
        config.max_iterations = 10;
        auto snaps = rank_entities(net, config);
        for (std::size_t k = 0; k < snaps.size(); ++k) {
            for (std::size_t i = 0; i < snaps[k].scores.size(); ++i) {
                double s = snaps[k].scores[i];
                if (!(s >= 0.0 && s <= 1.0)) pass = false;
                if (k > 0 && snaps[k - 1].scores[i] > 0.0 && s <= 0.0) pass = false;
            }
        }
    }
    report(3, pass, "scores stay in [0,1] and nonzero support never shrinks",
           "100 networks x 10 iterations");
}

bool files_equal(const std::filesystem::path& a, const std::filesystem::path& b) {
    return testsupport::read_file(a) == testsupport::read_file(b);
}

void criterion_4_determinism() {
    testsupport::TempDir dir("accept_det");
    std::string common = "pipeline --synth --seed 7 --bucket-size 100 --out ";
    auto run1 = testsupport::run_cli(common + (dir.path() / "t1").string() + " --threads 1",
                                     (dir.path() / "log1").string());
    auto run8 = testsupport::run_cli(common + (dir.path() / "t8").string() + " --threads 8",
                                     (dir.path() / "log8").string());
    auto rerun = testsupport::run_cli(common + (dir.path() / "t1b").string() + " --threads 1",
                                      (dir.path() / "log1b").string());
    bool pass = run1.exit_code == 0 && run8.exit_code == 0 && rerun.exit_code == 0;

    std::size_t compared = 0;
    std::string first_diff = "none";
    if (pass) {
        for (const auto& entry :
             std::filesystem::recursive_directory_iterator(dir.path() / "t1")) {
            if (!entry.is_regular_file()) continue;
            auto rel = std::filesystem::relative(entry.path(), dir.path() / "t1");
            if (rel.filename() == "manifest.json") continue; // echoes the thread count
            ++compared;
            if (!files_equal(entry.path(), dir.path() / "t8" / rel) ||
                !files_equal(entry.path(), dir.path() / "t1b" / rel)) {
                pass = false;
                if (first_diff == "none") first_diff = rel.string();
            }
        }
        if (compared < 5) pass = false;
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail), "%zu files byte-compared, first diff: %s", compared,
                  first_diff.c_str());
    report(4, pass, "pipeline output is byte-identical across reruns and --threads 1 vs 8",
           detail);
}

struct SeedOutcome {
    double curve_rho = 0.0;
    double base_rate = 0.0;
    double npnp_precision = 2.0;
    bool npnp_defined = false;
    bool best_involves_p1 = false;
};

SeedOutcome evaluate_seed(std::uint64_t seed) {
    SynthConfig config; // defaults: 5000 entities, 50000 docs, base rate 0.2
    config.seed = seed;
    auto corpus = generate_corpus(config);
    auto net = build_network(corpus.docs, corpus.counsel);
    RankConfig rank_config; // 3 iterations
    auto snaps = rank_entities(net, rank_config, 2);
    const auto& snap = snaps.back();

    SeedOutcome outcome;
    auto metrics = entity_metrics(corpus.docs, net);
    auto rows = bucket_curve(entity_scored_items(net, snap, metrics), BucketOptions{100, false});
    std::vector<double> mean_score, mean_precision;
    for (const auto& row : rows) {
        mean_score.push_back(row.mean_score);
        mean_precision.push_back(row.mean_precision);
    }
    outcome.curve_rho = testsupport::spearman(mean_score, mean_precision);

    for (const auto& d : corpus.docs) outcome.base_rate += *d.privileged ? 1.0 : 0.0;
    outcome.base_rate /= static_cast<double>(corpus.docs.size());

    auto tiers = assign_tiers(net, snap, rank_config);
    auto table = category_table(corpus.docs, net, tiers);
    double best = -1.0;
    for (const auto& row : table) {
        if (!row.precision) continue;
        bool is_npnp = row.category.sender_tier == Tier::LikelyNonPriv &&
                       row.category.receiver_tier == Tier::LikelyNonPriv;
        if (is_npnp) {
            outcome.npnp_precision = *row.precision;
            outcome.npnp_defined = true;
        }
        if (*row.precision > best) {
            best = *row.precision;
            outcome.best_involves_p1 = row.category.sender_tier == Tier::LikelyPriv1 ||
                                       row.category.receiver_tier == Tier::LikelyPriv1;
        }
    }
    return outcome;
}

void criteria_5_and_6_synth_shape() {
    std::vector<SeedOutcome> outcomes;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) outcomes.push_back(evaluate_seed(seed));

    bool curve_pass = true;
    double min_rho = 1.0;
    for (const auto& o : outcomes) {
        min_rho = std::min(min_rho, o.curve_rho);
        if (o.curve_rho < 0.5) curve_pass = false;
    }
    char detail5[96];
    std::snprintf(detail5, sizeof(detail5), "min Spearman %.3f over 5 seeds, bucket size 100",
                  min_rho);
    report(5, curve_pass, "bucket mean score tracks bucket mean precision (rho >= 0.5)", detail5);

    int npnp_ok = 0, best_ok = 0;
    for (const auto& o : outcomes) {
        if (o.npnp_defined && o.npnp_precision < o.base_rate) ++npnp_ok;
        if (o.best_involves_p1) ++best_ok;
    }
    bool table_pass = npnp_ok >= 4 && best_ok >= 4;
    char detail6[128];
    std::snprintf(detail6, sizeof(detail6),
                  "NonPriv.NonPriv below base rate %d/5, max precision involves Priv1 %d/5",
                  npnp_ok, best_ok);
    report(6, table_pass, "category table reproduces the published shape", detail6);
}

void criterion_7_scale() {
    SynthConfig config;
    config.seed = 7;
    config.n_entities = 100000;
    config.n_docs = 350000;
    auto corpus = generate_corpus(config);
    auto net = build_network(corpus.docs, corpus.counsel);
    bool size_ok = net.entity_count() >= 99000 && net.link_count() >= 1000000;

    auto rank_start = clk::now();
    RankConfig rank_config; // 3 iterations
    auto snaps = rank_entities(net, rank_config, 4);
    double rank_seconds = seconds_since(rank_start);

    // Full pipeline through the CLI on the same corpus.
    testsupport::TempDir dir("accept_scale");
    write_corpus(corpus, dir.path() / "corpus");
    auto pipeline_start = clk::now();
    auto run = testsupport::run_cli(
        "pipeline " + (dir.path() / "corpus" / "metadata.csv").string() + " --counsel-list " +
            (dir.path() / "corpus" / "counsel.txt").string() + " --threads 4 --out " +
            (dir.path() / "out").string(),
        (dir.path() / "log").string());
    double pipeline_seconds = seconds_since(pipeline_start);

    bool pass = size_ok && snaps.size() == 4 && rank_seconds < 5.0 && run.exit_code == 0 &&
                pipeline_seconds < 60.0;
    char detail[192];
    std::snprintf(detail, sizeof(detail),
                  "%zu entities, %zu links; rank %.2fs (< 5s), pipeline %.1fs (< 60s)",
                  net.entity_count(), net.link_count(), rank_seconds, pipeline_seconds);
    report(7, pass, "ranking and full pipeline meet the scale budget", detail);
}

// ---- criterion 8: one logical 50-message fixture, three formats ----

struct Participant {
    std::string header_form; // as written in EML/mbox headers
    std::string csv_form;    // as written inside a CSV field
};

struct LogicalMessage {
    int sender = -1; // -1: missing From
    std::vector<int> to;
    std::vector<int> cc;
    std::vector<int> bcc;
    bool privileged = false;
};

struct Fixture {
    std::vector<Participant> people;
    std::vector<LogicalMessage> messages;
};

Fixture make_fixture() {
    Fixture f;
    f.people = {
        {"jane.roe@corp.com", "jane.roe@corp.com"},
        {"Jane ROE <Jane.Roe@CORP.com>", "Jane ROE <Jane.Roe@CORP.com>"}, // same entity as 0
        {"bob@corp.com", "bob@corp.com"},
        {"BOB@CORP.COM", "BOB@CORP.COM"},                                 // same entity as 2
        {"\"Smith,  Alice\"", "Smith,  Alice"},                           // bare display name
        {"carol.chen@corp.com", "carol.chen@corp.com"},
        {"Dmitri Volkov <d.volkov@corp.com>", "Dmitri Volkov <d.volkov@corp.com>"},
        {"erin@labs.example", "erin@labs.example"},
        {"Frank Mills <frank.mills@corp.com>", "frank.mills@corp.com"},
        {"gc@corp.com", "GC@corp.com"},
    };
    std::mt19937_64 rng(88);
    std::uniform_int_distribution<int> person(0, static_cast<int>(f.people.size()) - 1);
    std::uniform_int_distribution<int> n_to(1, 3);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int i = 0; i < 50; ++i) {
        LogicalMessage m;
        m.sender = person(rng);
        int k = n_to(rng);
        for (int j = 0; j < k; ++j) m.to.push_back(person(rng));
        if (coin(rng)) m.cc.push_back(person(rng));
        if (i % 5 == 0) m.bcc.push_back(person(rng));
        m.privileged = coin(rng) == 1;
        f.messages.push_back(std::move(m));
    }
    // The advertised quirks, at fixed positions.
    f.messages[7].to = {f.messages[7].sender};                  // self-send
    f.messages[9].to = {2, 3, 2};                               // duplicate recipients, mixed case
    f.messages[13].sender = -1;                                 // missing From
    f.messages[21].to = {4};                                    // display-name-only recipient
    return f;
}

std::string join_header(const Fixture& f, const std::vector<int>& people) {
    std::string out;
    for (std::size_t i = 0; i < people.size(); ++i) {
        if (i) out += ", ";
        out += f.people[people[i]].header_form;
    }
    return out;
}

std::string join_csv(const Fixture& f, const std::vector<int>& people) {
    std::string out;
    for (std::size_t i = 0; i < people.size(); ++i) {
        if (i) out += ";";
        out += f.people[people[i]].csv_form;
    }
    return out;
}

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void write_fixture_formats(const Fixture& f, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir / "eml");
    std::ofstream mbox(dir / "corpus.mbox", std::ios::binary);
    std::ofstream csv(dir / "corpus.csv", std::ios::binary);
    csv << "DocID,From,To,CC,BCC,Privileged\n";

    for (std::size_t i = 0; i < f.messages.size(); ++i) {
        const auto& m = f.messages[i];
        std::ostringstream headers;
        if (m.sender >= 0) headers << "From: " << f.people[m.sender].header_form << "\n";
        if (!m.to.empty()) headers << "To: " << join_header(f, m.to) << "\n";
        if (!m.cc.empty()) headers << "Cc: " << join_header(f, m.cc) << "\n";
        if (!m.bcc.empty()) headers << "Bcc: " << join_header(f, m.bcc) << "\n";
        headers << "Subject: fixture message " << i << "\n";

        char name[32];
        std::snprintf(name, sizeof(name), "msg%02zu.eml", i);
        std::ofstream eml(dir / "eml" / name, std::ios::binary);
        eml << headers.str() << "\nbody " << i << "\n";

        mbox << "From fixture Thu Jan  1 00:00:00 1970\n"
             << headers.str() << "\nbody " << i << "\n";

        csv << "M" << i << "," << csv_field(m.sender >= 0 ? f.people[m.sender].csv_form : "")
            << "," << csv_field(join_csv(f, m.to)) << "," << csv_field(join_csv(f, m.cc)) << ","
            << csv_field(join_csv(f, m.bcc)) << "," << (m.privileged ? "1" : "0") << "\n";
    }
}

void criterion_8_cross_format_ingest() {
    testsupport::TempDir dir("accept_ingest");
    auto fixture = make_fixture();
    write_fixture_formats(fixture, dir.path());

    CounselSet counsel;
    counsel.members.insert(EntityKey{"jane.roe@corp.com"});
    counsel.members.insert(EntityKey{"gc@corp.com"});

    auto eml = parse_metadata(dir.path() / "eml", InputFormat::EmlDir);
    auto mbox = parse_metadata(dir.path() / "corpus.mbox", InputFormat::Mbox);
    auto csv = parse_metadata(dir.path() / "corpus.csv", InputFormat::Csv);

    bool counts_ok = eml.records.size() == 49 && mbox.records.size() == 49 &&
                     csv.records.size() == 49 && eml.skipped == 1 && mbox.skipped == 1 &&
                     csv.skipped == 1;

    auto export_string = [&](const ParseResult& parsed) {
        auto net = build_network(parsed.records, counsel);
        std::ostringstream out;
        export_network_json(net, out);
        return out.str();
    };
    auto eml_net = export_string(eml);
    bool identical = eml_net == export_string(mbox) && eml_net == export_string(csv);

    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "records 49/49/49, skips %zu/%zu/%zu, networks %s", eml.skipped, mbox.skipped,
                  csv.skipped, identical ? "identical" : "DIFFER");
    report(8, counts_ok && identical,
           "EML, mbox, and CSV fixtures yield identical networks with one skip each", detail);
}

} // namespace

int main(int argc, char** argv) {
    testsupport::init_cli_path(argc, argv);
    if (testsupport::cli_path().empty()) {
        std::fprintf(stderr, "acceptance: pass --cli=PATH or set PRIVNET_CLI\n");
        return 2;
    }

    criterion_1_oracle_equivalence();
    criterion_2_hand_fixture();
    criterion_3_bounded_monotone();
    criterion_4_determinism();
    criteria_5_and_6_synth_shape();
    criterion_7_scale();
    criterion_8_cross_format_ingest();

    if (failures) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
