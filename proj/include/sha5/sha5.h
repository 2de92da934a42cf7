#ifndef SHA5_SHA5_H
#define SHA5_SHA5_H

#include <stddef.h>
#include <stdint.h>

#if defined(SHA5_BUILDING_LIBRARY)
#define SHA5_API __attribute__((visibility("default")))
#else
#define SHA5_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sha5_status {
    SHA5_OK = 0,
    SHA5_ERR_ARGUMENT = 1,      /* null pointer, bad index, invalid parameter */
    SHA5_ERR_FORMAT = 2,        /* malformed input file; message has file:line */
    SHA5_ERR_IO = 3,
    SHA5_ERR_INCOMPLETE = 4,    /* record lacks rank or generator data */
    SHA5_ERR_INCONSISTENT = 5,  /* internal check failed */
    SHA5_ERR_INTERNAL = 6
} sha5_status;

typedef struct sha5_record sha5_record;
typedef struct sha5_database sha5_database;
typedef struct sha5_results sha5_results;

/* Message for the last failing call on this thread; never NULL. */
SHA5_API const char* sha5_last_error(void);
SHA5_API const char* sha5_version(void);

/* Strings returned through char** are owned by the caller. */
SHA5_API void sha5_string_free(char* s);

/* ---- curve records ---------------------------------------------------- */

SHA5_API sha5_status sha5_record_build(long u, long v, sha5_record** out);
/* u v rank x1 y1 [x2 y2 ...] as in the generator-ingestion file */
SHA5_API sha5_status sha5_record_build_with_generators(const char* line, sha5_record** out);
SHA5_API void sha5_record_free(sha5_record* r);

typedef struct sha5_record_info {
    long u, v;
    int rank;               /* -1 when unknown */
    int incomplete;
    int dim_coker_eta_dual;
    int dim_coker_eta;
    size_t generator_count;
} sha5_record_info;

SHA5_API sha5_status sha5_record_get_info(const sha5_record* r, sha5_record_info* out);
/* Conductor and the tag (certain/heuristic/unknown/ingested) as decimal text. */
SHA5_API sha5_status sha5_record_conductor(const sha5_record* r, char** out);
SHA5_API sha5_status sha5_record_tag(const sha5_record* r, char** out);
/* One database line. */
SHA5_API sha5_status sha5_record_format(const sha5_record* r, char** out);

/* ---- pairs ------------------------------------------------------------ */

typedef struct sha5_pair {
    long u1, v1, u2, v2;
    int L, t_union, u_intersection;
    int dim_coker_phi_dual, dim_coker_eta1, dim_coker_eta2, dim_coker_psi, G;
    int sha_nonsquare;
    int rank_sum;
    int re_parity;
    int re_parity_match;
    int unconditional;
} sha5_pair;

SHA5_API sha5_status sha5_pair_analyze(const sha5_record* a, const sha5_record* b, sha5_pair* out);

/* ---- step 0 ----------------------------------------------------------- */

SHA5_API sha5_status sha5_step0(uint32_t max_prime, char** out);

/* ---- databases -------------------------------------------------------- */

typedef struct sha5_build_options {
    long max_height;
    const char* max_conductor;    /* decimal, NULL for none */
    int census_only;
    const char* generators_path;  /* NULL for none */
    const char* out_path;         /* NULL: keep in memory only */
    unsigned workers;             /* 0: SHA5_WORKERS or hardware concurrency */
} sha5_build_options;

SHA5_API sha5_status sha5_db_build(const sha5_build_options* opts, sha5_database** out);
SHA5_API sha5_status sha5_db_read(const char* path, sha5_database** out);
SHA5_API sha5_status sha5_db_write(const sha5_database* db, const char* path);
SHA5_API sha5_status sha5_db_merge(const sha5_database* a, const sha5_database* b, sha5_database** out);
SHA5_API sha5_status sha5_db_size(const sha5_database* db, size_t* curves, size_t* incomplete);
/* Copy of the i-th record in (u, v) order. */
SHA5_API sha5_status sha5_db_record(const sha5_database* db, size_t i, sha5_record** out);
SHA5_API void sha5_db_free(sha5_database* db);

/* ---- results and statistics -------------------------------------------- */

SHA5_API sha5_status sha5_analyze(const sha5_database* db, unsigned workers, sha5_results** out);
SHA5_API sha5_status sha5_results_read(const char* path, sha5_results** out);
SHA5_API sha5_status sha5_results_write(const sha5_results* r, const char* path);

typedef struct sha5_results_summary {
    size_t curves;
    size_t incomplete;
    size_t pairs;
    size_t square;
    size_t re_match;
} sha5_results_summary;

SHA5_API sha5_status sha5_results_get_summary(const sha5_results* r, sha5_results_summary* out);
SHA5_API sha5_status sha5_results_pair(const sha5_results* r, size_t i, sha5_pair* out);
/* which: "1" .. "6" or "crosstabs" */
SHA5_API sha5_status sha5_stats_table(const sha5_results* r, const char* which, char** out);
SHA5_API void sha5_results_free(sha5_results* r);

/* Counts of unordered pairs over coprime u, v <= max_height, indexed
   [2 * (#(T1 u T2) mod 2) + (#(U1 n U2) mod 2)]. Needs no rank data. */
SHA5_API sha5_status sha5_local_only(long max_height, unsigned workers, uint64_t cells[4]);

#ifdef __cplusplus
}
#endif

#endif
