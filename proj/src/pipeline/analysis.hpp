#pragma once

#include "descent/descent.hpp"

#include <cstdint>
#include <vector>

namespace sha5 {

/// A pair was requested for a record without rank or generator data.
class IncompleteRecordError : public DomainError {
public:
    using DomainError::DomainError;
};

enum class Confidence { unconditional, conditional };

const char* to_string(Confidence c);

struct PairResult {
    long u1 = 0, v1 = 0, u2 = 0, v2 = 0;
    int L = 0;
    int t_union = 0, u_intersection = 0;
    int dim_coker_phi_dual = 0, dim_coker_eta1 = 0, dim_coker_eta2 = 0, dim_coker_psi = 0;
    int G = 0;
    bool sha_nonsquare = false;
    int rank_sum = 0;
    int re_parity = 0;  // parity of the 5-exponent of the regulator quotient
    bool re_parity_match = false;
    Confidence confidence = Confidence::conditional;

    bool local_square() const { return L % 2 == 0; }
    bool global_square() const { return G % 2 == 0; }
    bool operator==(const PairResult&) const = default;
};

/// Step 2 for one unordered pair of complete records.
PairResult pair_analysis(const CurveRecord& a, const CurveRecord& b);

/// Same with the K-side union rows built from x^n / y instead of x / y.
int dim_coker_psi_twisted(const CurveRecord& a, const CurveRecord& b, int n);
/// Q-side union rank with the first record's rows scaled by n.
int dim_coker_phi_dual_twisted(const CurveRecord& a, const CurveRecord& b, int n);

/// Free-part cokernel dimensions used for the regulator parity.
struct FreeDims {
    int phi_dual = 0;
    int phi = 0;
};
FreeDims free_cokernel_dims(const CurveRecord& a, const CurveRecord& b);

/// Parity of the 5-exponent of the regulator quotient and its agreement
/// with the parity of rank(E1) + rank(E2); fills re_parity and re_parity_match.
void regulator_parity(const CurveRecord& a, const CurveRecord& b, PairResult& r);

/// Local data of one curve as needed by the local factor.
struct LocalSets {
    long u = 0, v = 0;
    PrimeList T, U;
};

LocalSets local_sets(long u, long v);
/// L = -#(T1 u T2) + #(U1 n U2).
int local_exponent(const LocalSets& a, const LocalSets& b, int* t_union = nullptr, int* u_intersection = nullptr);

/// Counts of unordered pairs by (#(T1 u T2) mod 2, #(U1 n U2) mod 2).
struct ParityCrossTab {
    std::uint64_t cells[2][2] = {{0, 0}, {0, 0}};
    std::uint64_t total() const { return cells[0][0] + cells[0][1] + cells[1][0] + cells[1][1]; }
    ParityCrossTab& operator+=(const ParityCrossTab& o);
};

/// The local-only experiment over all coprime u, v <= N: reads no rank data.
ParityCrossTab local_only(long N, unsigned workers = 0);

/// Worker count: SHA5_WORKERS if set, else the hardware concurrency.
unsigned default_workers();

}  // namespace sha5
