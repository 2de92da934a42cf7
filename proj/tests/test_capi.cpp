#include "doctest.h"

#include "sha5/sha5.h"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    sha5_string_free(s);
    return out;
}

std::string temp_path(const char* name) {
    auto dir = std::filesystem::temp_directory_path() / "sha5-capi-tests";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

}  // namespace

TEST_CASE("null arguments are rejected with a message") {
    CHECK(sha5_record_build(1, 1, nullptr) == SHA5_ERR_ARGUMENT);
    CHECK(std::strlen(sha5_last_error()) > 0);
    sha5_pair p;
    CHECK(sha5_pair_analyze(nullptr, nullptr, &p) == SHA5_ERR_ARGUMENT);
    CHECK(sha5_step0(11, nullptr) == SHA5_ERR_ARGUMENT);
    CHECK(sha5_local_only(10, 1, nullptr) == SHA5_ERR_ARGUMENT);
    CHECK(std::string(sha5_version()).size() > 0);
}

TEST_CASE("records and a pair") {
    sha5_record* a = nullptr;
    sha5_record* b = nullptr;
    REQUIRE(sha5_record_build(1, 1, &a) == SHA5_OK);
    REQUIRE(sha5_record_build(7, 1, &b) == SHA5_OK);
    sha5_record_info info{};
    REQUIRE(sha5_record_get_info(b, &info) == SHA5_OK);
    CHECK(info.u == 7);
    CHECK(info.v == 1);
    CHECK(info.rank >= 0);
    CHECK(info.incomplete == 0);
    CHECK(info.dim_coker_eta_dual + info.dim_coker_eta == info.rank + 1);
    char* text = nullptr;
    REQUIRE(sha5_record_conductor(a, &text) == SHA5_OK);
    CHECK(take(text) == "11");
    REQUIRE(sha5_record_tag(a, &text) == SHA5_OK);
    CHECK(take(text) == "certain");
    REQUIRE(sha5_record_format(a, &text) == SHA5_OK);
    CHECK(take(text).rfind("1 1 | 0 certain", 0) == 0);

    sha5_pair p{};
    REQUIRE(sha5_pair_analyze(a, b, &p) == SHA5_OK);
    CHECK(p.L == -1);
    CHECK(p.G == p.dim_coker_phi_dual - p.dim_coker_eta1 - p.dim_coker_eta2 + p.dim_coker_psi);
    CHECK(p.sha_nonsquare == ((p.L + p.G) % 2 != 0));
    CHECK(sha5_pair_analyze(a, a, &p) == SHA5_ERR_ARGUMENT);
    sha5_record_free(a);
    sha5_record_free(b);
}

TEST_CASE("ingested generators") {
    sha5_record* r = nullptr;
    REQUIRE(sha5_record_build_with_generators("3 1 1 -6 12", &r) == SHA5_OK);
    sha5_record_info info{};
    sha5_record_get_info(r, &info);
    CHECK(info.rank == 1);
    CHECK(info.generator_count == 1);
    char* tag = nullptr;
    sha5_record_tag(r, &tag);
    CHECK(take(tag) == "ingested");
    sha5_record_free(r);
    CHECK(sha5_record_build_with_generators("3 1 1 -6 13", &r) == SHA5_ERR_ARGUMENT);
    CHECK(sha5_record_build_with_generators("3 1", &r) == SHA5_ERR_FORMAT);
    CHECK(std::string(sha5_last_error()).find(":1:") != std::string::npos);
}

TEST_CASE("step0 text") {
    char* text = nullptr;
    REQUIRE(sha5_step0(11, &text) == SHA5_OK);
    const std::string t = take(text);
    CHECK(t.find("G 5 1 0 0 1 -1 0 0") != std::string::npos);
}

TEST_CASE("database, analysis and statistics") {
    const std::string db_path = temp_path("n10.db"), res_path = temp_path("n10.results");
    std::filesystem::remove(db_path);
    sha5_build_options o{};
    o.max_height = 10;
    o.out_path = db_path.c_str();
    o.workers = 2;
    sha5_database* db = nullptr;
    REQUIRE(sha5_db_build(&o, &db) == SHA5_OK);
    std::size_t curves = 0, incomplete = 0;
    sha5_db_size(db, &curves, &incomplete);
    CHECK(curves == 63);
    CHECK(incomplete == 0);

    sha5_database* again = nullptr;
    REQUIRE(sha5_db_read(db_path.c_str(), &again) == SHA5_OK);
    sha5_database* merged = nullptr;
    REQUIRE(sha5_db_merge(db, again, &merged) == SHA5_OK);
    sha5_db_size(merged, &curves, nullptr);
    CHECK(curves == 63);
    sha5_record* first = nullptr;
    REQUIRE(sha5_db_record(merged, 0, &first) == SHA5_OK);
    sha5_record_info info{};
    sha5_record_get_info(first, &info);
    CHECK(info.u == 1);
    CHECK(info.v == 1);
    sha5_record_free(first);
    CHECK(sha5_db_record(merged, 63, &first) == SHA5_ERR_ARGUMENT);

    sha5_results* res = nullptr;
    REQUIRE(sha5_analyze(merged, 1, &res) == SHA5_OK);
    sha5_results_summary sum{};
    sha5_results_get_summary(res, &sum);
    CHECK(sum.pairs == 1953);
    CHECK(sum.square == 1312);
    REQUIRE(sha5_results_write(res, res_path.c_str()) == SHA5_OK);
    sha5_results* back = nullptr;
    REQUIRE(sha5_results_read(res_path.c_str(), &back) == SHA5_OK);
    sha5_pair p0{}, p1{};
    sha5_results_pair(res, 5, &p0);
    sha5_results_pair(back, 5, &p1);
    CHECK(std::memcmp(&p0, &p1, sizeof p0) == 0);
    char* table = nullptr;
    REQUIRE(sha5_stats_table(back, "6", &table) == SHA5_OK);
    CHECK(take(table).find("67.179") != std::string::npos);
    CHECK(sha5_stats_table(back, "9", &table) == SHA5_ERR_ARGUMENT);

    sha5_results_free(res);
    sha5_results_free(back);
    sha5_db_free(db);
    sha5_db_free(again);
    sha5_db_free(merged);
}

TEST_CASE("file errors") {
    sha5_database* db = nullptr;
    CHECK(sha5_db_read("/nonexistent/sha5.db", &db) == SHA5_ERR_IO);
    const std::string bad = temp_path("bad.db");
    std::ofstream(bad) << "# sha5-db 1 max-height 3 max-conductor - mode full\n1 1 | zero certain | 5,11 | - | 11 | 11 | - | - | 0 | - | -\n";
    CHECK(sha5_db_read(bad.c_str(), &db) == SHA5_ERR_FORMAT);
    CHECK(std::string(sha5_last_error()).find("bad.db:2:") != std::string::npos);
}

TEST_CASE("local-only counts") {
    std::uint64_t c[4] = {};
    REQUIRE(sha5_local_only(10, 2, c) == SHA5_OK);
    CHECK(c[0] + c[1] + c[2] + c[3] == 1953);
}
