#include "doctest.h"
#include "gen.hpp"

#include "curve/family.hpp"
#include "pipeline/analysis.hpp"
#include "pipeline/db.hpp"
#include "pipeline/stats.hpp"
#include "pipeline/step0.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace sha5;

namespace {

const Database& db_up_to(long n) {
    static std::map<long, Database> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        BuildOptions o;
        o.max_height = n;
        o.workers = 2;
        it = cache.emplace(n, build_database(o)).first;
    }
    return it->second;
}

const CurveRecord& rec(long u, long v) {
    for (const auto& r : db_up_to(12).records)
        if (r.u == u && r.v == v) return r;
    throw DomainError("no such record");
}

std::vector<std::vector<std::string>> step0_rows(const std::string& text, char kind) {
    std::vector<std::vector<std::string>> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] != kind) continue;
        std::istringstream w(line);
        std::vector<std::string> f;
        for (std::string s; w >> s;) f.push_back(s);
        out.push_back(f);
    }
    return out;
}

std::filesystem::path temp_file(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "sha5-tests";
    std::filesystem::create_directories(dir);
    auto p = dir / name;
    std::filesystem::remove(p);
    return p;
}

// Swaps the curve fields so a pair read back to front compares equal.
PairResult swapped(PairResult p) {
    std::swap(p.u1, p.u2);
    std::swap(p.v1, p.v2);
    std::swap(p.dim_coker_eta1, p.dim_coker_eta2);
    return p;
}

}  // namespace

TEST_CASE("step0 tables up to 11") {
    const auto text = step0_tables(11);
    const auto rows = step0_rows(text, 'G');
    std::map<std::string, std::pair<std::string, int>> by_prime;  // p -> (f, count)
    for (const auto& r : rows) {
        REQUIRE(r.size() == 9);
        auto& e = by_prime[r[1]];
        e.first = r[2];
        ++e.second;
    }
    CHECK(by_prime.size() == 5);
    CHECK(by_prime["2"] == std::pair<std::string, int>{"4", 1});
    CHECK(by_prime["3"] == std::pair<std::string, int>{"4", 1});
    CHECK(by_prime["5"] == std::pair<std::string, int>{"1", 1});
    CHECK(by_prime["7"] == std::pair<std::string, int>{"4", 1});
    CHECK(by_prime["11"] == std::pair<std::string, int>{"1", 4});
    for (const auto& r : rows)
        if (r[1] == "5") CHECK(std::vector<std::string>(r.begin() + 5, r.end()) == std::vector<std::string>{"1", "-1", "0", "0"});
    CHECK(step0_rows(text, 'A').size() >= 2);
    CHECK(step0_tables(11) == text);
}

TEST_CASE("local exponent of ((1,1),(7,1))") {
    const auto p = pair_analysis(rec(1, 1), rec(7, 1));
    CHECK(p.t_union == 1);
    CHECK(p.u_intersection == 0);
    CHECK(p.L == -1);
    CHECK(p.G == p.dim_coker_phi_dual - p.dim_coker_eta1 - p.dim_coker_eta2 + p.dim_coker_psi);
    CHECK(p.sha_nonsquare == ((p.L + p.G) % 2 != 0));
}

TEST_CASE("pair analysis refuses self pairs and incomplete records") {
    CHECK_THROWS_AS(pair_analysis(rec(1, 1), rec(1, 1)), DomainError);
    CurveRecord r = rec(2, 1);
    r.incomplete = true;
    CHECK_THROWS_AS(pair_analysis(rec(1, 1), r), IncompleteRecordError);
}

TEST_CASE("two rank-0 curves have an even regulator exponent") {
    const auto& recs = db_up_to(10).records;
    int seen = 0;
    for (std::size_t i = 0; i < recs.size(); ++i)
        for (std::size_t j = i + 1; j < recs.size(); ++j)
            if (recs[i].rank == 0 && recs[j].rank == 0) {
                const auto p = pair_analysis(recs[i], recs[j]);
                CHECK(p.re_parity == 0);
                CHECK(p.re_parity_match);
                ++seen;
            }
    CHECK(seen == 780);
}

TEST_CASE("pair analysis is symmetric") {
    const auto& recs = db_up_to(10).records;
    for (std::size_t i = 0; i < recs.size(); ++i)
        for (std::size_t j = i + 1; j < recs.size(); ++j) {
            const auto ab = pair_analysis(recs[i], recs[j]);
            const auto ba = pair_analysis(recs[j], recs[i]);
            REQUIRE(ab == swapped(ba));
        }
}

TEST_CASE("union ranks do not depend on the diagonal twist n") {
    testgen::Gen g(20240611);
    const auto& recs = db_up_to(12).records;
    for (int trial = 0; trial < 100; ++trial) {
        const auto& a = g.pick(recs);
        const auto& b = g.pick(recs);
        if (&a == &b) continue;
        const int psi = dim_coker_psi_twisted(a, b, 1), dual = dim_coker_phi_dual_twisted(a, b, 1);
        for (int n = 2; n <= 4; ++n) {
            CHECK(dim_coker_psi_twisted(a, b, n) == psi);
            CHECK(dim_coker_phi_dual_twisted(a, b, n) == dual);
        }
    }
}

TEST_CASE("curve census and pair count") {
    long phi_sum = 0;
    for (long k = 1; k <= 10; ++k) {
        long c = 0;
        for (long j = 1; j <= k; ++j) c += std::gcd(j, k) == 1;
        phi_sum += c;
    }
    CHECK(2 * phi_sum - 1 == 63);
    CHECK(coprime_pair_count(10) == 63);
    const auto res = analyze(db_up_to(10), 2);
    CHECK(res.curves.size() == 63);
    CHECK(res.pairs.size() == 63 * 62 / 2);
    CHECK(res.incomplete() == 0);
}

TEST_CASE("analysis and database output are deterministic") {
    const auto one = analyze(db_up_to(10), 1);
    const auto three = analyze(db_up_to(10), 3);
    CHECK(format_results(one) == format_results(three));
    BuildOptions o;
    o.max_height = 8;
    o.workers = 1;
    const auto a = format_database(build_database(o));
    o.workers = 3;
    CHECK(format_database(build_database(o)) == a);
}

TEST_CASE("database round trip") {
    const auto& db = db_up_to(12);
    std::istringstream in(format_database(db));
    const auto back = parse_database(in, "mem");
    REQUIRE(back.records.size() == db.records.size());
    CHECK(back.header == db.header);
    for (std::size_t i = 0; i < db.records.size(); ++i) {
        const auto& x = db.records[i];
        const auto& y = back.records[i];
        CHECK(format_record(y, false) == format_record(x, false));
        CHECK(y.P_free == x.P_free);
        CHECK(y.P_torsion == x.P_torsion);
        CHECK(y.Q_free == x.Q_free);
        CHECK(y.Q_torsion == x.Q_torsion);
        CHECK(y.dim_coker_eta_dual == x.dim_coker_eta_dual);
        CHECK(y.dim_coker_eta == x.dim_coker_eta);
        CHECK(y.generators == x.generators);
    }
    const auto r1 = analyze(db, 1), r2 = analyze(back, 1);
    CHECK(format_results(r1) == format_results(r2));
}

TEST_CASE("results round trip") {
    const auto r = analyze(db_up_to(10), 1);
    std::istringstream in(format_results(r));
    const auto back = parse_results(in, "mem");
    CHECK(back.curves == r.curves);
    CHECK(back.pairs == r.pairs);
}

TEST_CASE("malformed files report the line") {
    std::string text = format_database(db_up_to(6));
    auto third = text.find('\n', text.find('\n') + 1);
    text.insert(third + 1, "3 3 | 0 certain | 5 | - | - | 1 | - | - | 0 | - | -\n");
    std::istringstream in(text);
    try {
        parse_database(in, "bad.db");
        FAIL("no error");
    } catch (const FormatError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("bad.db:3:") == 0);
    }
    std::istringstream gens("# comment\n7 1 0\n3 1 1 -6\n");
    try {
        parse_generators(gens, "g.txt");
        FAIL("no error");
    } catch (const FormatError& e) {
        CHECK(e.line() == 3);
    }
    std::istringstream header("# something else\n");
    CHECK_THROWS_AS(parse_database(header, "x"), FormatError);
}

TEST_CASE("generator ingestion") {
    std::istringstream in("3 1 1 -6 12  # P = (-6, 12)\n\n7 1 0\n");
    const auto g = parse_generators(in, "g");
    REQUIRE(g.size() == 2);
    CHECK(g.at({3, 1}).rank == 1);
    CHECK(g.at({3, 1}).points.size() == 1);
    CHECK(g.at({7, 1}).points.empty());
    BuildOptions o;
    o.max_height = 3;
    o.workers = 1;
    o.generators = g;
    const auto db = build_database(o);
    for (const auto& r : db.records)
        if (r.u == 3 && r.v == 1) {
            CHECK(r.tag == RankTag::ingested);
            CHECK(r.rank == 1);
            CHECK(r.generators.size() == 1);
        }
}

TEST_CASE("interrupted builds resume") {
    const auto path = temp_file("resume.db");
    BuildOptions o;
    o.max_height = 7;
    o.workers = 2;
    o.out_path = path.string();
    const auto full = format_database(build_database(o));
    {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        CHECK(ss.str() == full);
    }
    // keep the header and a few records, then cut the next line short
    std::string partial;
    {
        std::istringstream in(full);
        std::string line;
        for (int i = 0; i < 6 && std::getline(in, line); ++i) partial += line + "\n";
        std::getline(in, line);
        partial += line.substr(0, line.size() / 2);
    }
    std::ofstream(path, std::ios::trunc) << partial;
    CHECK(format_database(build_database(o)) == full);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == full);

    o.max_height = 6;
    CHECK_THROWS_AS(build_database(o), DomainError);
    std::filesystem::remove(path);
}

TEST_CASE("merging databases is a union") {
    Database six = db_up_to(6), eight = db_up_to(8);
    const auto m = merge_databases(six, eight);
    CHECK(format_database(m) == format_database(eight));
    CHECK(format_database(merge_databases(eight, six)) == format_database(eight));
    Database census = six;
    census.header.census_only = true;
    CHECK_THROWS_AS(merge_databases(census, six), DomainError);
}

TEST_CASE("conductor filter and census mode") {
    const Int C = 1000;
    const auto keys = curve_keys(20, C);
    std::size_t brute = 0;
    for (long u = 1; u <= 20; ++u)
        for (long v = 1; v <= 20; ++v)
            if (std::gcd(u, v) == 1 && reduction_data(u, v).conductor <= C) ++brute;
    CHECK(keys.size() == brute);
    CHECK(keys.size() < coprime_pair_count(20));

    BuildOptions o;
    o.max_height = 20;
    o.max_conductor = C;
    o.census_only = true;
    o.workers = 2;
    const auto db = build_database(o);
    CHECK(db.records.size() == brute);
    std::istringstream in(format_database(db));
    CHECK(format_database(parse_database(in, "c")) == format_database(db));
    const auto res = analyze(db, 1);
    CHECK(res.census_only);
    CHECK(res.pairs.empty());
    CHECK(res.incomplete() == 0);
    CHECK(stats_table(res, "1").find(std::to_string(brute)) != std::string::npos);
}

TEST_CASE("local-only reads no rank data") {
    const auto tab = local_only(10, 2);
    const auto res = analyze(db_up_to(10), 1);
    ParityCrossTab from_pairs;
    for (const auto& p : res.pairs) ++from_pairs.cells[p.t_union % 2][p.u_intersection % 2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(tab.cells[i][j] == from_pairs.cells[i][j]);
    CHECK(local_only(10, 1).total() == tab.total());
}

TEST_CASE("percent rounds half to even") {
    CHECK(percent(1, 8, 1) == "12.5");
    CHECK(percent(1, 16, 1) == "6.2");
    CHECK(percent(3, 16, 1) == "18.8");
    CHECK(percent(1, 3, 3) == "33.333");
    CHECK(percent(2, 3, 2) == "66.67");
    CHECK(percent(1312, 1953, 3) == "67.179");
    CHECK(percent(0, 5, 2) == "0.00");
    CHECK(percent(5, 5, 2) == "100.00");
    CHECK(percent(1, 0, 2) == "-");
}

TEST_CASE("stats tables") {
    const auto res = analyze(db_up_to(10), 1);
    const auto t6 = by_height(res, {10});
    REQUIRE(t6.size() == 1);
    CHECK(t6[0].curves == 63);
    CHECK(t6[0].tally.pairs == 1953);
    CHECK(percent(t6[0].tally.square, t6[0].tally.pairs, 3) == "67.179");

    const auto census = rank_census(res, {10});
    CHECK(census[0].by_rank.at(0) == 40);
    CHECK(census[0].by_rank.at(1) == 22);
    CHECK(census[0].by_rank.at(2) == 1);

    const auto classes = by_rank_class(res);
    std::uint64_t sum = 0;
    for (const auto& [k, t] : classes)
        if (k.first >= 0) sum += t.pairs;
    CHECK(sum == 1953);
    CHECK(classes.at({0, 0}).re_match == classes.at({0, 0}).pairs);

    const auto x = crosstabs(res);
    for (const auto* cells : {&x.local_global, &x.t_u, &x.regulator_rank, &x.local_rank})
        CHECK((*cells)[0][0] + (*cells)[0][1] + (*cells)[1][0] + (*cells)[1][1] == x.total);

    for (const char* t : {"1", "2", "3", "4", "5", "6", "crosstabs"}) CHECK_FALSE(stats_table(res, t).empty());
    CHECK(stats_table(res, "6").find("67.179") != std::string::npos);
    CHECK_THROWS_AS(stats_table(res, "7"), DomainError);
}
