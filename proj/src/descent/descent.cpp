#include "descent/descent.hpp"

#include "curve/saturate.hpp"
#include "curve/search.hpp"
#include "curve/torsion.hpp"

#include <map>
#include <mutex>

namespace sha5 {

const std::vector<PrimeIdealGen>& cached_prime_generators(std::uint64_t p) {
    static std::mutex mu;
    static std::map<std::uint64_t, std::vector<PrimeIdealGen>> cache;
    {
        std::lock_guard lock(mu);
        auto it = cache.find(p);
        if (it != cache.end()) return it->second;
    }
    auto gens = prime_generators(p);
    std::lock_guard lock(mu);
    return cache.emplace(p, std::move(gens)).first->second;
}

std::vector<PrimeIdealGen> k_primes_over(const PrimeList& S) {
    std::vector<PrimeIdealGen> out;
    for (auto p : S) {
        const auto& g = cached_prime_generators(p);
        out.insert(out.end(), g.begin(), g.end());
    }
    return out;
}

Rat f_dual_value(long u, long v, const PointQ& P) {
    if (P.infinity) return Rat(1);
    if (sgn(P.x) == 0 && sgn(P.y) == 0) return make_rat(Int(v), Int(u));
    const Rat vv(v);
    return P.x * P.y + vv * vv * P.y - vv * P.x * P.x;
}

QS5Vector coker_eta_dual_image(long u, long v, const PointQ& P, const PrimeList& S) {
    return qs5_class(f_dual_value(u, v, P), S);
}

std::vector<QS5Vector> coker_eta_dual_basis(long u, long v, const std::vector<PointQ>& generators, const PrimeList& S) {
    std::vector<QS5Vector> out;
    out.reserve(generators.size());
    for (const auto& P : generators) out.push_back(coker_eta_dual_image(u, v, P, S));
    return out;
}

CycloElement f_eta_value(const Isomorphism<CycloElement>& tau, const PointQ& P) {
    if (P.infinity) return CycloElement(1L);
    const PointK Q = tau.map(to_cyclo(P));
    if (Q.infinity) return CycloElement(1L);
    if (Q.x.is_zero() && Q.y.is_zero()) throw InconsistencyError("f_eta_value: rational point maps to the dual kernel");
    return Q.y + Q.x * Q.y - Q.x * Q.x;
}

KS5Vector coker_eta_image(const Isomorphism<CycloElement>& tau, const PointQ& P, const std::vector<PrimeIdealGen>& SK) {
    return ks5_class(f_eta_value(tau, P), SK);
}

F5Row ks5_row_over(const KS5Vector& v, const std::vector<std::pair<std::uint64_t, int>>& columns) {
    F5Row row(2 + columns.size(), 0);
    row[0] = v.unit_exponents[0];
    row[1] = v.unit_exponents[1];
    for (std::size_t i = 0; i < v.support.size(); ++i) {
        if (v.exponents[i] == 0) continue;
        auto it = std::find(columns.begin(), columns.end(), v.support[i]);
        if (it == columns.end()) throw DomainError("ks5_row_over: prime outside the column set");
        row[2 + static_cast<std::size_t>(it - columns.begin())] = v.exponents[i];
    }
    return row;
}

EtaCokernel coker_eta_basis(const IsogenyData& iso, const std::vector<PointQ>& basis,
                            const std::vector<PrimeIdealGen>& SK, std::optional<int> expected_dim) {
    EtaCokernel out;
    const CurveQ& Ep = iso.target;
    std::vector<PointQ> images;
    for (const auto& P : basis) images.push_back(iso.eta(P));
    out.torsion = rational_five_torsion(Ep);
    std::vector<PointQ> tors;
    if (out.torsion) tors.push_back(*out.torsion);
    out.lattice = saturate_at_5(Ep, images, tors).basis;
    if (out.lattice.size() != basis.size()) throw InconsistencyError("coker_eta_basis: image lattice lost rank");
    if (expected_dim && *expected_dim == 0) return out;

    std::vector<std::pair<std::uint64_t, int>> cols;
    for (const auto& t : SK) cols.emplace_back(t.rational_prime, t.index);
    F5Matrix m;
    for (const auto& P : out.lattice) {
        out.free_images.push_back(coker_eta_image(iso.tau, P, SK));
        m.rows.push_back(ks5_row_over(out.free_images.back(), cols));
    }
    if (out.torsion) {
        out.torsion_images.push_back(coker_eta_image(iso.tau, *out.torsion, SK));
        m.rows.push_back(ks5_row_over(out.torsion_images.back(), cols));
    }
    out.dim = f5_rank(m);
    out.evaluated = true;
    if (expected_dim && *expected_dim != out.dim)
        throw InconsistencyError("coker_eta_basis: K-side rank " + std::to_string(out.dim) + " differs from r + 1 - dim coker eta dual = " +
                                 std::to_string(*expected_dim));
    return out;
}

std::vector<std::pair<std::uint64_t, int>> CurveRecord::k_columns() const {
    std::vector<std::pair<std::uint64_t, int>> cols;
    for (const auto& t : k_primes_over(S)) cols.emplace_back(t.rational_prime, t.index);
    return cols;
}

int p_rank(const CurveRecord& r) {
    F5Matrix m;
    m.rows.push_back(qs5_row_over(r.P_torsion, r.S));
    for (const auto& q : r.P_free) m.rows.push_back(qs5_row_over(q, r.S));
    return f5_rank(m);
}

CurveRecord local_record(long u, long v) {
    const auto rd = reduction_data(u, v);
    CurveRecord rec;
    rec.u = u;
    rec.v = v;
    rec.S = rd.S;
    rec.T = rd.T;
    rec.U = rd.U;
    rec.conductor = rd.conductor;
    return rec;
}

namespace {

// Finds a 5-saturated basis of E(Q) of the given rank; empty optional when
// the search cap is reached first.
std::optional<std::vector<PointQ>> find_basis(const CurveQ& E, const PointQ& T, int rank, std::vector<PointQ> seed,
                                              const SearchPolicy& sp, bool rank_certain, int& found_rank) {
    ModularFunctionals fn(E);
    const FiveDivider div(E);
    const auto torsion_points = torsion_subgroup(E).points;
    std::vector<PointQ> basis;
    if (!seed.empty()) basis = saturate_at_5(E, seed, {T}, fn, div).basis;
    for (std::uint64_t H = sp.start; static_cast<int>(basis.size()) < rank && H <= sp.cap; H *= sp.factor) {
        auto pts = point_search(E, H, torsion_points);
        pts.insert(pts.begin(), basis.begin(), basis.end());
        basis = saturate_at_5(E, pts, {T}, fn, div).basis;
    }
    found_rank = static_cast<int>(basis.size());
    if (found_rank > rank && rank_certain) throw InconsistencyError("build_curve_record: more independent points than the analytic rank");
    if (found_rank < rank) return std::nullopt;
    return basis;
}

}  // namespace

CurveRecord build_curve_record(long u, long v, const RecordPolicy& policy, const std::optional<IngestedGenerators>& ingested) {
    CurveRecord rec = local_record(u, v);
    const auto rd = reduction_data(u, v);
    const CurveQ E = curve_from_uv(u, v);
    const auto tors = family_torsion(u, v);
    const PointQ& T = tors[0];
    rec.P_torsion = coker_eta_dual_image(u, v, T, rec.S);

    std::vector<PointQ> seed;
    if (ingested) {
        rec.rank = ingested->rank;
        rec.tag = RankTag::ingested;
        for (const auto& P : ingested->points)
            if (!on_curve(E, P)) throw DomainError("build_curve_record: ingested point " + to_string(P) + " is not on the curve");
        seed = ingested->points;
    } else {
        const auto ar = analytic_rank(E, rd, root_number(rd, u, v), policy.rank);
        rec.rank = ar.rank;
        rec.tag = ar.tag;
    }
    if (rec.tag == RankTag::unknown || rec.rank < 0) {
        rec.incomplete = true;
        return rec;
    }
    if (rec.rank > 0 || !seed.empty()) {
        int found = 0;
        auto basis = find_basis(E, T, rec.rank, seed, policy.search, rec.tag == RankTag::certain || rec.tag == RankTag::ingested, found);
        if (!basis) {
            rec.incomplete = true;
            return rec;
        }
        if (found > rec.rank) rec.rank = found;
        rec.generators = std::move(*basis);
    }
    rec.P_free = coker_eta_dual_basis(u, v, rec.generators, rec.S);
    rec.dim_coker_eta_dual = p_rank(rec);
    const int expected = rec.rank + 1 - rec.dim_coker_eta_dual;
    if (expected < 0) throw InconsistencyError("build_curve_record: dim coker eta dual exceeds rank + 1");
    rec.dim_coker_eta = expected;
    if (expected > 0) {
        const auto iso = isogeny_data(E, T);
        const auto ec = coker_eta_basis(iso, rec.generators, k_primes_over(rec.S), expected);
        rec.Q_free = ec.free_images;
        rec.Q_torsion = ec.torsion_images;
    }
    return rec;
}

}  // namespace sha5
