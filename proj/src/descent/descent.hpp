#pragma once

#include "arith/qs5.hpp"
#include "curve/family.hpp"
#include "curve/lseries.hpp"
#include "cyclo/cyclo.hpp"
#include "isogeny/isogeny.hpp"

#include <optional>
#include <vector>

namespace sha5 {

/// Primes of K above the rational primes of S, ordered by (p, index).
/// Generators are cached process-wide.
std::vector<PrimeIdealGen> k_primes_over(const PrimeList& S);
const std::vector<PrimeIdealGen>& cached_prime_generators(std::uint64_t p);

/// f = -x^2 + y + xy on E_d pulled back to the integral model of (u,v),
/// times the fifth power v^5: XY + v^2 Y - v X^2. (0,0) -> v/u, O -> 1.
Rat f_dual_value(long u, long v, const PointQ& P);

QS5Vector coker_eta_dual_image(long u, long v, const PointQ& P, const PrimeList& S);

/// Raw images of the given generators of E(Q) (torsion included) in Q(S,5).
std::vector<QS5Vector> coker_eta_dual_basis(long u, long v, const std::vector<PointQ>& generators, const PrimeList& S);

/// f(tau(P)) for P in E'(Q); O -> 1.
CycloElement f_eta_value(const Isomorphism<CycloElement>& tau, const PointQ& P);

KS5Vector coker_eta_image(const Isomorphism<CycloElement>& tau, const PointQ& P, const std::vector<PrimeIdealGen>& SK);

/// GF(5) row of a K(S,5) class over unit columns followed by the given prime columns.
F5Row ks5_row_over(const KS5Vector& v, const std::vector<std::pair<std::uint64_t, int>>& columns);

struct EtaCokernel {
    std::vector<PointQ> lattice;        // 5-saturated free generators of E'(Q)
    std::optional<PointQ> torsion;      // generator of E'(Q)[5]
    std::vector<KS5Vector> free_images;
    std::vector<KS5Vector> torsion_images;
    int dim = 0;
    bool evaluated = false;             // false when dim is 0 and the K side was skipped
};

/// coker eta_Q from a 5-saturated free basis of E(Q). `expected_dim`, when
/// known from dim coker eta dual, allows skipping the K side when it is 0
/// and is asserted against the computed rank otherwise.
EtaCokernel coker_eta_basis(const IsogenyData& iso, const std::vector<PointQ>& basis,
                            const std::vector<PrimeIdealGen>& SK, std::optional<int> expected_dim);

struct SearchPolicy {
    std::uint64_t start = 1000;
    std::uint64_t factor = 10;
    std::uint64_t cap = 10000000;
};

struct RecordPolicy {
    RankPolicy rank;
    SearchPolicy search;
};

struct IngestedGenerators {
    int rank = 0;
    std::vector<PointQ> points;
};

struct CurveRecord {
    long u = 0, v = 0;
    PrimeList S, T, U;
    Int conductor;
    int rank = -1;
    RankTag tag = RankTag::unknown;
    bool incomplete = false;
    std::vector<PointQ> generators;          // saturated free basis of E(Q)
    std::vector<QS5Vector> P_free;           // images of the generators
    QS5Vector P_torsion;                     // image of (0,0), the class of 1/d
    std::vector<KS5Vector> Q_free;
    std::vector<KS5Vector> Q_torsion;        // image of E'(Q)[5] when nontrivial
    int dim_coker_eta_dual = 0;
    int dim_coker_eta = 0;

    std::vector<std::pair<std::uint64_t, int>> k_columns() const;
};

/// Rank of the Q-side rows (free and torsion) of a record.
int p_rank(const CurveRecord& r);

CurveRecord build_curve_record(long u, long v, const RecordPolicy& policy = {},
                               const std::optional<IngestedGenerators>& ingested = std::nullopt);

/// The part of a record that needs no rank data.
CurveRecord local_record(long u, long v);

}  // namespace sha5
