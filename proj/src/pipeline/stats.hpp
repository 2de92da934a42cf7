#pragma once

#include "pipeline/analysis.hpp"
#include "pipeline/db.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sha5 {

/// 100 * num / den rounded half-to-even to `digits` decimals; "-" when den is 0.
std::string percent(std::uint64_t num, std::uint64_t den, int digits);

struct Tally {
    std::uint64_t pairs = 0, square = 0, re_match = 0;
    void add(const PairResult& p);
    Tally& operator+=(const Tally& o);
};

struct CensusRow {
    long bound = 0;
    std::uint64_t curves = 0;
    std::map<int, std::uint64_t> by_rank;  // rank -1: no rank data
};

/// Curve counts by rank for max(u, v) <= bound.
std::vector<CensusRow> rank_census(const Results& r, const std::vector<long>& height_bounds);

struct BoundRow {
    std::string bound;
    std::uint64_t curves = 0;
    Tally tally;
};

/// Cumulative tallies over pairs whose curves both satisfy max(u, v) <= N.
std::vector<BoundRow> by_height(const Results& r, const std::vector<long>& bounds);
/// Same with conductor <= C.
std::vector<BoundRow> by_conductor(const Results& r, const std::vector<long>& bounds);

/// Tallies keyed by the rank pair (r1 <= r2); key {-1,-1} collects r1, r2 <= 1.
std::map<std::pair<int, int>, Tally> by_rank_class(const Results& r);

/// Two-by-two counts, first index the row, second the column.
struct CrossTabs {
    std::uint64_t total = 0;
    std::uint64_t local_global[2][2] = {};  // local non-square, global non-square
    std::uint64_t t_u[2][2] = {};           // #(T1 u T2) mod 2, #(U1 n U2) mod 2
    std::uint64_t regulator_rank[2][2] = {};  // regulator exponent parity, rank parity
    std::uint64_t local_rank[2][2] = {};    // local non-square, rank parity
};
CrossTabs crosstabs(const Results& r);

/// Rendered table: "1" .. "6" or "crosstabs".
std::string stats_table(const Results& r, const std::string& which);

}  // namespace sha5
