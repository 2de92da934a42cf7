#pragma once

#include "curve/family.hpp"

#include <cstdint>
#include <vector>

namespace sha5 {

struct RankPolicy {
    double zero_threshold = 1e-3;
    double terms_per_sqrt_conductor = 8.0;
    int max_rank = 5;
};

enum class RankTag { certain, heuristic, unknown, ingested };

const char* to_string(RankTag t);

struct AnalyticRank {
    int rank = -1;
    RankTag tag = RankTag::unknown;
    int root_number = 0;
    /// |L^(k)(1)| for each k tried, in increasing k of the root-number parity.
    std::vector<double> derivatives;
};

/// a_n for 1 <= n <= limit (index 0 unused) of a curve in the family, from
/// point counts at good primes and the reduction types at bad ones.
std::vector<long long> dirichlet_coefficients(const CurveQ& E, const ReductionData& rd, std::size_t limit);

/// G_r(x) = (1/(r-1)!) * int_1^inf e^{-xy} (log y)^{r-1} dy/y for r >= 1, e^{-x} for r = 0.
double special_g(int r, double x);

/// L^(r)(E,1) by the rapidly converging series 2 r! sum a_n/n G_r(2 pi n / sqrt N).
double l_derivative(const std::vector<long long>& an, const Int& conductor, int r);

AnalyticRank analytic_rank(const CurveQ& E, const ReductionData& rd, int root_number, const RankPolicy& policy = {});

}  // namespace sha5
