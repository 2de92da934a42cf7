#include "sha5/sha5.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

namespace {

constexpr int kOk = 0;
constexpr int kIncomplete = 1;
constexpr int kError = 2;

int report(sha5_status s) {
    std::cerr << "sha5: " << sha5_last_error() << '\n';
    return s == SHA5_OK ? kOk : kError;
}

int emit(char* text, const std::string& path) {
    int rc = kOk;
    if (path.empty() || path == "-") {
        std::fputs(text, stdout);
    } else {
        std::ofstream out(path, std::ios::trunc);
        out << text;
        if (!out.flush()) {
            std::cerr << "sha5: cannot write " << path << '\n';
            rc = kError;
        }
    }
    sha5_string_free(text);
    return rc;
}

int step0(unsigned max_prime, const std::string& out) {
    char* text = nullptr;
    if (auto s = sha5_step0(max_prime, &text); s != SHA5_OK) return report(s);
    return emit(text, out);
}

int build_db(long max_height, const std::string& max_conductor, const std::string& generators, bool census, const std::string& out) {
    sha5_build_options o{};
    o.max_height = max_height;
    o.max_conductor = max_conductor.empty() ? nullptr : max_conductor.c_str();
    o.census_only = census;
    o.generators_path = generators.empty() ? nullptr : generators.c_str();
    o.out_path = out.c_str();
    sha5_database* db = nullptr;
    if (auto s = sha5_db_build(&o, &db); s != SHA5_OK) return report(s);
    std::size_t curves = 0, incomplete = 0;
    sha5_db_size(db, &curves, &incomplete);
    sha5_db_free(db);
    std::cout << "curves " << curves << " incomplete " << incomplete << '\n';
    return incomplete ? kIncomplete : kOk;
}

int analyze(const std::string& path, const std::string& path2, const std::string& out) {
    sha5_database* db = nullptr;
    if (auto s = sha5_db_read(path.c_str(), &db); s != SHA5_OK) return report(s);
    if (!path2.empty()) {
        sha5_database* other = nullptr;
        sha5_database* merged = nullptr;
        auto s = sha5_db_read(path2.c_str(), &other);
        if (s == SHA5_OK) s = sha5_db_merge(db, other, &merged);
        sha5_db_free(other);
        sha5_db_free(db);
        if (s != SHA5_OK) return report(s);
        db = merged;
    }
    sha5_results* res = nullptr;
    auto s = sha5_analyze(db, 0, &res);
    sha5_db_free(db);
    if (s != SHA5_OK) return report(s);
    s = sha5_results_write(res, out.c_str());
    sha5_results_summary sum{};
    sha5_results_get_summary(res, &sum);
    sha5_results_free(res);
    if (s != SHA5_OK) return report(s);
    std::cout << "curves " << sum.curves << " pairs " << sum.pairs << " incomplete " << sum.incomplete << '\n';
    return sum.incomplete ? kIncomplete : kOk;
}

int stats(const std::string& path, const std::string& table) {
    sha5_results* res = nullptr;
    if (auto s = sha5_results_read(path.c_str(), &res); s != SHA5_OK) return report(s);
    char* text = nullptr;
    auto s = sha5_stats_table(res, table.c_str(), &text);
    sha5_results_summary sum{};
    sha5_results_get_summary(res, &sum);
    sha5_results_free(res);
    if (s != SHA5_OK) return report(s);
    const int rc = emit(text, "");
    return rc != kOk ? rc : (sum.incomplete ? kIncomplete : kOk);
}

std::string pct(std::uint64_t a, std::uint64_t total) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", total ? 100.0 * static_cast<double>(a) / static_cast<double>(total) : 0.0);
    return buf;
}

int local_only(long max_height) {
    std::uint64_t c[4];
    if (auto s = sha5_local_only(max_height, 0, c); s != SHA5_OK) return report(s);
    const std::uint64_t total = c[0] + c[1] + c[2] + c[3];
    std::cout << "pairs " << total << '\n'
              << "                      #(U1 n U2) even  #(U1 n U2) odd\n"
              << "#(T1 u T2) even       " << pct(c[0], total) << "            " << pct(c[1], total) << '\n'
              << "#(T1 u T2) odd        " << pct(c[2], total) << "            " << pct(c[3], total) << '\n'
              << "counts " << c[0] << ' ' << c[1] << ' ' << c[2] << ' ' << c[3] << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Squareness of #Sha for quotients of products of curves with a rational 5-torsion point"};
    app.require_subcommand(1);
    int rc = kOk;

    unsigned max_prime = 0;
    std::string out;
    auto* s0 = app.add_subcommand("step0", "prime ideal generator tables of Q(zeta5)");
    s0->add_option("--max-prime", max_prime, "largest rational prime")->required()->check(CLI::Range(2u, 100000000u));
    s0->add_option("--out", out, "output file, '-' for stdout")->required();
    s0->callback([&] { rc = step0(max_prime, out); });

    long max_height = 0;
    std::string max_conductor, generators;
    bool census = false;
    auto* bd = app.add_subcommand("build-db", "curve records for all coprime u, v <= N");
    bd->add_option("--max-height", max_height, "N")->required()->check(CLI::PositiveNumber);
    bd->add_option("--max-conductor", max_conductor, "keep curves with conductor <= C");
    bd->add_option("--generators", generators, "generator-ingestion file")->check(CLI::ExistingFile);
    bd->add_flag("--census-only", census, "local data and conductors only");
    bd->add_option("--out", out, "database file (reused to resume)")->required();
    bd->callback([&] { rc = build_db(max_height, max_conductor, generators, census, out); });

    std::string db, db2;
    auto* an = app.add_subcommand("analyze", "pair analysis over a database");
    an->add_option("--db", db, "database")->required()->check(CLI::ExistingFile);
    an->add_option("--db2", db2, "second database, merged by union")->check(CLI::ExistingFile);
    an->add_option("--out", out, "results file")->required();
    an->callback([&] { rc = analyze(db, db2, out); });

    std::string results, table;
    auto* st = app.add_subcommand("stats", "tables from a results file");
    st->add_option("--results", results, "results file")->required()->check(CLI::ExistingFile);
    st->add_option("--table", table, "1..6 or crosstabs")->required()->check(CLI::IsMember({"1", "2", "3", "4", "5", "6", "crosstabs"}));
    st->callback([&] { rc = stats(results, table); });

    auto* lo = app.add_subcommand("local-only", "T/U parity cross-tab; needs no rank data");
    lo->add_option("--max-height", max_height, "N")->required()->check(CLI::PositiveNumber);
    lo->callback([&] { rc = local_only(max_height); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kError;
    }
    return rc;
}
