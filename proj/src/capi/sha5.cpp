#include "sha5/sha5.h"

#include "pipeline/analysis.hpp"
#include "pipeline/db.hpp"
#include "pipeline/stats.hpp"
#include "pipeline/step0.hpp"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

struct sha5_record {
    sha5::CurveRecord rec;
};
struct sha5_database {
    sha5::Database db;
};
struct sha5_results {
    sha5::Results res;
};

namespace {

thread_local std::string last_error;

sha5_status fail(sha5_status s, const std::string& msg) {
    last_error = msg;
    return s;
}

template <class F>
sha5_status guarded(F&& f) {
    try {
        last_error.clear();
        return f();
    } catch (const sha5::FormatError& e) {
        return fail(SHA5_ERR_FORMAT, e.what());
    } catch (const sha5::InconsistencyError& e) {
        return fail(SHA5_ERR_INCONSISTENT, e.what());
    } catch (const sha5::IncompleteRecordError& e) {
        return fail(SHA5_ERR_INCOMPLETE, e.what());
    } catch (const sha5::DomainError& e) {
        return fail(SHA5_ERR_ARGUMENT, e.what());
    } catch (const sha5::IoError& e) {
        return fail(SHA5_ERR_IO, e.what());
    } catch (const std::ios_base::failure& e) {
        return fail(SHA5_ERR_IO, e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return fail(SHA5_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(SHA5_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(SHA5_ERR_INTERNAL, e.what());
    }
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

sha5_pair to_c(const sha5::PairResult& p) {
    sha5_pair o{};
    o.u1 = p.u1;
    o.v1 = p.v1;
    o.u2 = p.u2;
    o.v2 = p.v2;
    o.L = p.L;
    o.t_union = p.t_union;
    o.u_intersection = p.u_intersection;
    o.dim_coker_phi_dual = p.dim_coker_phi_dual;
    o.dim_coker_eta1 = p.dim_coker_eta1;
    o.dim_coker_eta2 = p.dim_coker_eta2;
    o.dim_coker_psi = p.dim_coker_psi;
    o.G = p.G;
    o.sha_nonsquare = p.sha_nonsquare;
    o.rank_sum = p.rank_sum;
    o.re_parity = p.re_parity;
    o.re_parity_match = p.re_parity_match;
    o.unconditional = p.confidence == sha5::Confidence::unconditional;
    return o;
}

#define SHA5_REQUIRE(cond) \
    if (!(cond)) return fail(SHA5_ERR_ARGUMENT, "invalid argument: " #cond)

}  // namespace

extern "C" {

const char* sha5_last_error(void) { return last_error.c_str(); }
const char* sha5_version(void) { return "1.0.0"; }
void sha5_string_free(char* s) { std::free(s); }

sha5_status sha5_record_build(long u, long v, sha5_record** out) {
    SHA5_REQUIRE(out);
    return guarded([&] {
        *out = new sha5_record{sha5::build_curve_record(u, v)};
        return SHA5_OK;
    });
}

sha5_status sha5_record_build_with_generators(const char* line, sha5_record** out) {
    SHA5_REQUIRE(line && out);
    return guarded([&] {
        std::istringstream in(line);
        const auto g = sha5::parse_generators(in, "<line>");
        if (g.size() != 1) return fail(SHA5_ERR_ARGUMENT, "expected exactly one generator line");
        const auto& [key, gens] = *g.begin();
        *out = new sha5_record{sha5::build_curve_record(key.first, key.second, {}, gens)};
        return SHA5_OK;
    });
}

void sha5_record_free(sha5_record* r) { delete r; }

sha5_status sha5_record_get_info(const sha5_record* r, sha5_record_info* out) {
    SHA5_REQUIRE(r && out);
    out->u = r->rec.u;
    out->v = r->rec.v;
    out->rank = r->rec.rank;
    out->incomplete = r->rec.incomplete;
    out->dim_coker_eta_dual = r->rec.dim_coker_eta_dual;
    out->dim_coker_eta = r->rec.dim_coker_eta;
    out->generator_count = r->rec.generators.size();
    return SHA5_OK;
}

sha5_status sha5_record_conductor(const sha5_record* r, char** out) {
    SHA5_REQUIRE(r && out);
    return guarded([&] {
        *out = dup(r->rec.conductor.get_str());
        return SHA5_OK;
    });
}

sha5_status sha5_record_tag(const sha5_record* r, char** out) {
    SHA5_REQUIRE(r && out);
    return guarded([&] {
        *out = dup(sha5::to_string(r->rec.tag));
        return SHA5_OK;
    });
}

sha5_status sha5_record_format(const sha5_record* r, char** out) {
    SHA5_REQUIRE(r && out);
    return guarded([&] {
        *out = dup(sha5::format_record(r->rec, false));
        return SHA5_OK;
    });
}

sha5_status sha5_pair_analyze(const sha5_record* a, const sha5_record* b, sha5_pair* out) {
    SHA5_REQUIRE(a && b && out);
    return guarded([&] {
        *out = to_c(sha5::pair_analysis(a->rec, b->rec));
        return SHA5_OK;
    });
}

sha5_status sha5_step0(uint32_t max_prime, char** out) {
    SHA5_REQUIRE(out && max_prime >= 2);
    return guarded([&] {
        *out = dup(sha5::step0_tables(max_prime));
        return SHA5_OK;
    });
}

sha5_status sha5_db_build(const sha5_build_options* opts, sha5_database** out) {
    SHA5_REQUIRE(opts && out && opts->max_height >= 1);
    return guarded([&] {
        sha5::BuildOptions o;
        o.max_height = opts->max_height;
        if (opts->max_conductor) {
            sha5::Int c;
            if (c.set_str(opts->max_conductor, 10) != 0 || c < 1) return fail(SHA5_ERR_ARGUMENT, "bad max_conductor");
            o.max_conductor = c;
        }
        o.census_only = opts->census_only != 0;
        o.workers = opts->workers;
        if (opts->generators_path) o.generators = sha5::read_generators(opts->generators_path);
        if (opts->out_path) o.out_path = opts->out_path;
        *out = new sha5_database{sha5::build_database(o)};
        return SHA5_OK;
    });
}

sha5_status sha5_db_read(const char* path, sha5_database** out) {
    SHA5_REQUIRE(path && out);
    return guarded([&] {
        *out = new sha5_database{sha5::read_database(path)};
        return SHA5_OK;
    });
}

sha5_status sha5_db_write(const sha5_database* db, const char* path) {
    SHA5_REQUIRE(db && path);
    return guarded([&] {
        sha5::write_database(path, db->db);
        return SHA5_OK;
    });
}

sha5_status sha5_db_merge(const sha5_database* a, const sha5_database* b, sha5_database** out) {
    SHA5_REQUIRE(a && b && out);
    return guarded([&] {
        *out = new sha5_database{sha5::merge_databases(a->db, b->db)};
        return SHA5_OK;
    });
}

sha5_status sha5_db_size(const sha5_database* db, size_t* curves, size_t* incomplete) {
    SHA5_REQUIRE(db && curves);
    *curves = db->db.records.size();
    if (incomplete) {
        *incomplete = 0;
        if (!db->db.header.census_only)
            for (const auto& r : db->db.records) *incomplete += r.incomplete;
    }
    return SHA5_OK;
}

sha5_status sha5_db_record(const sha5_database* db, size_t i, sha5_record** out) {
    SHA5_REQUIRE(db && out && i < db->db.records.size());
    return guarded([&] {
        *out = new sha5_record{db->db.records[i]};
        return SHA5_OK;
    });
}

void sha5_db_free(sha5_database* db) { delete db; }

sha5_status sha5_analyze(const sha5_database* db, unsigned workers, sha5_results** out) {
    SHA5_REQUIRE(db && out);
    return guarded([&] {
        *out = new sha5_results{sha5::analyze(db->db, workers)};
        return SHA5_OK;
    });
}

sha5_status sha5_results_read(const char* path, sha5_results** out) {
    SHA5_REQUIRE(path && out);
    return guarded([&] {
        *out = new sha5_results{sha5::read_results(path)};
        return SHA5_OK;
    });
}

sha5_status sha5_results_write(const sha5_results* r, const char* path) {
    SHA5_REQUIRE(r && path);
    return guarded([&] {
        std::ofstream out(path, std::ios::trunc);
        if (!out) return fail(SHA5_ERR_IO, std::string("cannot write ") + path);
        sha5::write_results(out, r->res);
        if (!out.flush()) return fail(SHA5_ERR_IO, std::string("write failed: ") + path);
        return SHA5_OK;
    });
}

sha5_status sha5_results_get_summary(const sha5_results* r, sha5_results_summary* out) {
    SHA5_REQUIRE(r && out);
    sha5::Tally t;
    for (const auto& p : r->res.pairs) t.add(p);
    out->curves = r->res.curves.size();
    out->incomplete = r->res.incomplete();
    out->pairs = t.pairs;
    out->square = t.square;
    out->re_match = t.re_match;
    return SHA5_OK;
}

sha5_status sha5_results_pair(const sha5_results* r, size_t i, sha5_pair* out) {
    SHA5_REQUIRE(r && out && i < r->res.pairs.size());
    *out = to_c(r->res.pairs[i]);
    return SHA5_OK;
}

sha5_status sha5_stats_table(const sha5_results* r, const char* which, char** out) {
    SHA5_REQUIRE(r && which && out);
    return guarded([&] {
        *out = dup(sha5::stats_table(r->res, which));
        return SHA5_OK;
    });
}

void sha5_results_free(sha5_results* r) { delete r; }

sha5_status sha5_local_only(long max_height, unsigned workers, uint64_t cells[4]) {
    SHA5_REQUIRE(cells && max_height >= 1);
    return guarded([&] {
        const auto tab = sha5::local_only(max_height, workers);
        for (int i = 0; i < 4; ++i) cells[i] = tab.cells[i / 2][i % 2];
        return SHA5_OK;
    });
}

}  // extern "C"
