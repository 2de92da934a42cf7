#include "pipeline/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iterator>
#include <numeric>
#include <thread>

namespace sha5 {

const char* to_string(Confidence c) { return c == Confidence::unconditional ? "unconditional" : "conditional"; }

namespace {

PrimeList set_union(const PrimeList& a, const PrimeList& b) {
    PrimeList out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

PrimeList set_intersection(const PrimeList& a, const PrimeList& b) {
    PrimeList out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

F5Row scaled(F5Row r, int n) {
    for (auto& c : r) c = f5(c * n);
    return r;
}

void require_complete(const CurveRecord& r) {
    if (r.incomplete || r.rank < 0) throw IncompleteRecordError("pair_analysis: record (" + std::to_string(r.u) + "," + std::to_string(r.v) + ") is incomplete");
}

std::vector<std::pair<std::uint64_t, int>> k_columns_over(const PrimeList& S) {
    std::vector<std::pair<std::uint64_t, int>> cols;
    for (const auto& t : k_primes_over(S)) cols.emplace_back(t.rational_prime, t.index);
    return cols;
}

int rank_of(std::vector<F5Row> rows) {
    if (rows.empty()) return 0;
    return f5_rank(F5Matrix{std::move(rows)});
}

std::vector<F5Row> p_rows(const CurveRecord& r, const PrimeList& cols, bool torsion_only, int n = 1) {
    std::vector<F5Row> out{scaled(qs5_row_over(r.P_torsion, cols), n)};
    if (!torsion_only)
        for (const auto& q : r.P_free) out.push_back(scaled(qs5_row_over(q, cols), n));
    return out;
}

std::vector<F5Row> q_rows(const CurveRecord& r, const std::vector<std::pair<std::uint64_t, int>>& cols, bool torsion_only, int n = 1) {
    std::vector<F5Row> out;
    for (const auto& q : r.Q_torsion) out.push_back(scaled(ks5_row_over(q, cols), n));
    if (!torsion_only)
        for (const auto& q : r.Q_free) out.push_back(scaled(ks5_row_over(q, cols), n));
    return out;
}

template <class T>
std::vector<T> concat(std::vector<T> a, const std::vector<T>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace

int dim_coker_phi_dual_twisted(const CurveRecord& a, const CurveRecord& b, int n) {
    const PrimeList S = set_union(a.S, b.S);
    return rank_of(concat(p_rows(a, S, false, n), p_rows(b, S, false)));
}

int dim_coker_psi_twisted(const CurveRecord& a, const CurveRecord& b, int n) {
    const auto cols = k_columns_over(set_union(a.S, b.S));
    return rank_of(concat(q_rows(a, cols, false, n), q_rows(b, cols, false)));
}

FreeDims free_cokernel_dims(const CurveRecord& a, const CurveRecord& b) {
    const PrimeList S = set_union(a.S, b.S);
    const auto cols = k_columns_over(S);
    FreeDims d;
    d.phi_dual = rank_of(concat(p_rows(a, S, false), p_rows(b, S, false))) - rank_of(concat(p_rows(a, S, true), p_rows(b, S, true)));
    const int phi = a.dim_coker_eta + b.dim_coker_eta - rank_of(concat(q_rows(a, cols, false), q_rows(b, cols, false)));
    const int ta = rank_of(q_rows(a, cols, true)), tb = rank_of(q_rows(b, cols, true));
    const int phi_torsion = ta + tb - rank_of(concat(q_rows(a, cols, true), q_rows(b, cols, true)));
    d.phi = phi - phi_torsion;
    return d;
}

void regulator_parity(const CurveRecord& a, const CurveRecord& b, PairResult& r) {
    const FreeDims d = free_cokernel_dims(a, b);
    r.re_parity = ((d.phi_dual - d.phi) % 2 + 2) % 2;
    r.re_parity_match = r.re_parity == r.rank_sum % 2;
}

PairResult pair_analysis(const CurveRecord& a, const CurveRecord& b) {
    require_complete(a);
    require_complete(b);
    if (a.u == b.u && a.v == b.v) throw DomainError("pair_analysis: a curve is not paired with itself");
    PairResult r;
    r.u1 = a.u;
    r.v1 = a.v;
    r.u2 = b.u;
    r.v2 = b.v;
    r.t_union = static_cast<int>(set_union(a.T, b.T).size());
    r.u_intersection = static_cast<int>(set_intersection(a.U, b.U).size());
    r.L = -r.t_union + r.u_intersection;
    r.dim_coker_phi_dual = dim_coker_phi_dual_twisted(a, b, 1);
    r.dim_coker_eta1 = a.dim_coker_eta;
    r.dim_coker_eta2 = b.dim_coker_eta;
    r.dim_coker_psi = dim_coker_psi_twisted(a, b, 1);
    r.G = r.dim_coker_phi_dual - r.dim_coker_eta1 - r.dim_coker_eta2 + r.dim_coker_psi;
    r.sha_nonsquare = ((r.L + r.G) % 2 + 2) % 2 == 1;
    r.rank_sum = a.rank + b.rank;
    regulator_parity(a, b, r);
    const auto certain = [](const CurveRecord& c) { return c.rank <= 1 && c.tag == RankTag::certain; };
    r.confidence = certain(a) && certain(b) ? Confidence::unconditional : Confidence::conditional;
    return r;
}

LocalSets local_sets(long u, long v) {
    const auto rd = reduction_data(u, v);
    return LocalSets{u, v, rd.T, rd.U};
}

int local_exponent(const LocalSets& a, const LocalSets& b, int* t_union, int* u_intersection) {
    const int t = static_cast<int>(set_union(a.T, b.T).size());
    const int w = static_cast<int>(set_intersection(a.U, b.U).size());
    if (t_union) *t_union = t;
    if (u_intersection) *u_intersection = w;
    return w - t;
}

ParityCrossTab& ParityCrossTab::operator+=(const ParityCrossTab& o) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) cells[i][j] += o.cells[i][j];
    return *this;
}

unsigned default_workers() {
    if (const char* env = std::getenv("SHA5_WORKERS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

ParityCrossTab local_only(long N, unsigned workers) {
    if (N < 1) throw DomainError("local_only: N must be positive");
    if (workers == 0) workers = default_workers();
    std::vector<LocalSets> sets;
    for (long u = 1; u <= N; ++u)
        for (long v = 1; v <= N; ++v)
            if (std::gcd(u, v) == 1) sets.push_back(local_sets(u, v));
    // #(T1 u T2) = #T1 + #T2 - #(T1 n T2)
    std::atomic<std::size_t> next{0};
    std::vector<ParityCrossTab> partial(workers);
    auto work = [&](unsigned w) {
        ParityCrossTab& tab = partial[w];
        for (std::size_t i; (i = next.fetch_add(1)) < sets.size();) {
            const auto& a = sets[i];
            for (std::size_t j = i + 1; j < sets.size(); ++j) {
                const auto& b = sets[j];
                std::size_t common_t = 0, common_u = 0;
                for (auto p : a.T) common_t += std::binary_search(b.T.begin(), b.T.end(), p);
                for (auto p : a.U) common_u += std::binary_search(b.U.begin(), b.U.end(), p);
                const std::size_t t = a.T.size() + b.T.size() - common_t;
                ++tab.cells[t % 2][common_u % 2];
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto& t : pool) t.join();
    ParityCrossTab out;
    for (const auto& p : partial) out += p;
    return out;
}

}  // namespace sha5
