#include "pipeline/stats.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <unordered_map>

namespace sha5 {

std::string percent(std::uint64_t num, std::uint64_t den, int digits) {
    if (den == 0) return "-";
    Int scale = 100;
    for (int i = 0; i < digits; ++i) scale *= 10;
    const Int n = from_u64(num) * scale, d = from_u64(den);
    Int q = n / d;
    const Int twice_rem = 2 * (n - q * d);
    if (twice_rem > d || (twice_rem == d && q % 2 != 0)) ++q;
    std::string s = q.get_str();
    if (digits == 0) return s;
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    return s;
}

void Tally::add(const PairResult& p) {
    ++pairs;
    square += !p.sha_nonsquare;
    re_match += p.re_parity_match;
}

Tally& Tally::operator+=(const Tally& o) {
    pairs += o.pairs;
    square += o.square;
    re_match += o.re_match;
    return *this;
}

namespace {

struct KeyHash {
    std::size_t operator()(const CurveKey& k) const { return std::hash<long>()(k.first * 1000003L + k.second); }
};

long height(const CurveSummary& c) { return std::max(c.u, c.v); }

std::unordered_map<CurveKey, const CurveSummary*, KeyHash> index_curves(const Results& r) {
    std::unordered_map<CurveKey, const CurveSummary*, KeyHash> m;
    for (const auto& c : r.curves) m.emplace(CurveKey{c.u, c.v}, &c);
    return m;
}

// Cumulative rows: entry i holds the count for values <= bounds[i].
template <class Value>
std::vector<BoundRow> cumulative(const Results& r, const std::vector<long>& bounds, Value value) {
    std::vector<BoundRow> rows(bounds.size());
    const auto slot = [&](const Int& x) {
        return static_cast<std::size_t>(std::lower_bound(bounds.begin(), bounds.end(), x, [](long b, const Int& v) { return Int(b) < v; }) -
                                        bounds.begin());
    };
    for (std::size_t i = 0; i < bounds.size(); ++i) rows[i].bound = std::to_string(bounds[i]);
    for (const auto& c : r.curves) {
        if (c.incomplete) continue;
        if (const auto s = slot(value(c)); s < rows.size()) ++rows[s].curves;
    }
    const auto idx = index_curves(r);
    for (const auto& p : r.pairs) {
        const auto& a = *idx.at({p.u1, p.v1});
        const auto& b = *idx.at({p.u2, p.v2});
        if (const auto s = slot(std::max(value(a), value(b))); s < rows.size()) rows[s].tally.add(p);
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
        rows[i].curves += rows[i - 1].curves;
        rows[i].tally += rows[i - 1].tally;
    }
    return rows;
}

// Bounds below the largest observed value, plus the first one reaching it.
std::vector<long> bounds_covering(std::vector<long> candidates, const Int& largest) {
    std::vector<long> out;
    for (long b : candidates) {
        out.push_back(b);
        if (Int(b) >= largest) break;
    }
    return out;
}

std::string pad(const std::string& s, int width) {
    return s.size() >= static_cast<std::size_t>(width) ? s : std::string(width - s.size(), ' ') + s;
}

std::string rank_label(std::pair<int, int> k) {
    if (k.first < 0) return "r<=1";
    if (k.first == k.second) return "r=" + std::to_string(k.first);
    return "r=" + std::to_string(k.first) + ",r=" + std::to_string(k.second);
}

std::string cross(const char* title, const char* rows[2], const char* cols[2], const std::uint64_t cells[2][2], std::uint64_t total, int digits) {
    std::ostringstream out;
    out << title << '\n' << pad("", 22) << pad(cols[0], 20) << pad(cols[1], 20) << '\n';
    for (int i = 0; i < 2; ++i)
        out << pad(rows[i], 22) << pad(percent(cells[i][0], total, digits), 20) << pad(percent(cells[i][1], total, digits), 20) << '\n';
    return out.str();
}

}  // namespace

std::vector<CensusRow> rank_census(const Results& r, const std::vector<long>& height_bounds) {
    std::vector<CensusRow> rows;
    for (long N : height_bounds) {
        CensusRow row;
        row.bound = N;
        for (const auto& c : r.curves)
            if (height(c) <= N) {
                ++row.curves;
                ++row.by_rank[c.incomplete ? -1 : c.rank];
            }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<BoundRow> by_height(const Results& r, const std::vector<long>& bounds) {
    return cumulative(r, bounds, [](const CurveSummary& c) { return Int(height(c)); });
}

std::vector<BoundRow> by_conductor(const Results& r, const std::vector<long>& bounds) {
    return cumulative(r, bounds, [](const CurveSummary& c) { return c.conductor; });
}

std::map<std::pair<int, int>, Tally> by_rank_class(const Results& r) {
    std::map<std::pair<int, int>, Tally> out;
    const auto idx = index_curves(r);
    for (const auto& p : r.pairs) {
        const int ra = idx.at({p.u1, p.v1})->rank, rb = idx.at({p.u2, p.v2})->rank;
        out[std::minmax(ra, rb)].add(p);
        if (ra <= 1 && rb <= 1) out[{-1, -1}].add(p);
    }
    return out;
}

CrossTabs crosstabs(const Results& r) {
    CrossTabs t;
    for (const auto& p : r.pairs) {
        ++t.total;
        const int local = p.L % 2 != 0, global = p.G % 2 != 0, rank = p.rank_sum % 2;
        ++t.local_global[local][global];
        ++t.t_u[p.t_union % 2][p.u_intersection % 2];
        ++t.regulator_rank[p.re_parity][rank];
        ++t.local_rank[local][rank];
    }
    return t;
}

std::string stats_table(const Results& r, const std::string& which) {
    std::ostringstream out;
    long max_height = 0;
    Int max_conductor = 0;
    for (const auto& c : r.curves) {
        max_height = std::max(max_height, height(c));
        max_conductor = std::max(max_conductor, c.conductor);
    }
    const auto rank_cell = [&](const CensusRow& row, int k) {
        if (r.census_only) return std::string("-");
        const auto it = row.by_rank.find(k);
        return std::to_string(it == row.by_rank.end() ? 0 : it->second);
    };
    if (which == "1" || which == "2") {
        const bool t1 = which == "1";
        const auto bounds = t1 ? bounds_covering({50, 100, 200, 300, 400, 500, 600, 700, 800, 900, 1000, 2000, 2695, 3072, 3375, 4617, 50000}, max_height)
                               : bounds_covering({10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 1000, 10000, 50000}, max_height);
        auto rows = rank_census(r, bounds);
        std::reverse(rows.begin(), rows.end());
        const int top = t1 ? 2 : 3;
        out << pad("N", 8) << pad("#E_d", 10);
        for (int k = 0; k <= top; ++k) out << pad("#{r=" + std::to_string(k) + "}", 10);
        out << pad("incomplete", 12) << '\n';
        for (const auto& row : rows) {
            out << pad(std::to_string(row.bound), 8) << pad(std::to_string(row.curves), 10);
            for (int k = 0; k <= top; ++k) out << pad(rank_cell(row, k), 10);
            out << pad(r.census_only ? "-" : rank_cell(row, -1), 12) << '\n';
        }
        return out.str();
    }
    if (which == "3" || which == "4") {
        const auto classes = by_rank_class(r);
        std::vector<std::pair<int, int>> order;
        for (const auto& [k, t] : classes)
            if (k.first == k.second && k.first >= 0) order.push_back(k);
        for (const auto& [k, t] : classes)
            if (k.first != k.second) order.push_back(k);
        if (classes.count({-1, -1})) order.push_back({-1, -1});
        out << pad("", 10) << pad("#B", 12) << pad("%Sha=square", 14) << pad("%RE=rk(2)", 12) << '\n';
        for (const auto& k : order) {
            const auto& t = classes.at(k);
            out << pad(rank_label(k), 10) << pad(std::to_string(t.pairs), 12) << pad(percent(t.square, t.pairs, 3), 14)
                << pad(percent(t.re_match, t.pairs, 2), 12) << '\n';
        }
        return out.str();
    }
    if (which == "5" || which == "6") {
        const bool t5 = which == "5";
        auto rows = t5 ? by_conductor(r, bounds_covering({1000, 5000, 10000, 20000, 40000, 60000, 80000, 100000, 200000, 400000, 600000, 800000, 1000000},
                                                         max_conductor))
                       : by_height(r, bounds_covering({10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 1000, 10000, 50000}, max_height));
        std::reverse(rows.begin(), rows.end());
        out << pad(t5 ? "C" : "N", 10) << pad("#E_d", 10) << pad("#B", 12) << pad("%Sha=square", 14) << pad("%RE=rk(2)", 12) << '\n';
        for (const auto& row : rows)
            out << pad(row.bound, 10) << pad(std::to_string(row.curves), 10) << pad(std::to_string(row.tally.pairs), 12)
                << pad(percent(row.tally.square, row.tally.pairs, 3), 14) << pad(percent(row.tally.re_match, row.tally.pairs, 2), 12) << '\n';
        return out.str();
    }
    if (which == "crosstabs") {
        const auto t = crosstabs(r);
        const char* par[2] = {"rank even", "rank odd"};
        const char* lrows[2] = {"local = square", "local != square"};
        const char* grows[2] = {"global = square", "global != square"};
        const char* trows[2] = {"#(T1 u T2) even", "#(T1 u T2) odd"};
        const char* ucols[2] = {"#(U1 n U2) even", "#(U1 n U2) odd"};
        const char* rrows[2] = {"regulator = square", "regulator != square"};
        out << "pairs " << t.total << "\n\n";
        out << cross("local x global", lrows, grows, t.local_global, t.total, 2) << '\n';
        out << cross("T parity x U parity", trows, ucols, t.t_u, t.total, 2) << '\n';
        out << cross("regulator x rank parity", rrows, par, t.regulator_rank, t.total, 3) << '\n';
        out << cross("local x rank parity", lrows, par, t.local_rank, t.total, 3);
        return out.str();
    }
    throw DomainError("unknown table '" + which + "'");
}

}  // namespace sha5
