#include "curve/lseries.hpp"

#include "arith/primes.hpp"
#include "curve/saturate.hpp"

#include <cmath>
#include <numbers>

namespace sha5 {

const char* to_string(RankTag t) {
    switch (t) {
        case RankTag::certain: return "certain";
        case RankTag::heuristic: return "heuristic";
        case RankTag::unknown: return "unknown";
        case RankTag::ingested: return "ingested";
    }
    return "?";
}

namespace {

long long ap_small(const CurveQ& E, std::uint64_t p) {
    // direct count for p = 2, 3
    const auto m = [&](const Rat& r) { return static_cast<long long>(mod_si(r.get_num(), p)); };
    const long long a1 = m(E.a1), a2 = m(E.a2), a3 = m(E.a3), a4 = m(E.a4), a6 = m(E.a6);
    const auto P = static_cast<long long>(p);
    long long n = 1;
    for (long long x = 0; x < P; ++x)
        for (long long y = 0; y < P; ++y)
            if (((y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6) % P + P) % P == 0) ++n;
    return P + 1 - n;
}

}  // namespace

std::vector<long long> dirichlet_coefficients(const CurveQ& E, const ReductionData& rd, std::size_t limit) {
    std::vector<long long> a(limit + 1, 0);
    if (limit == 0) return a;
    a[1] = 1;
    // smallest prime factor sieve
    std::vector<std::uint32_t> spf(limit + 1, 0);
    for (std::size_t i = 2; i <= limit; ++i) {
        if (spf[i]) continue;
        for (std::size_t j = i; j <= limit; j += i)
            if (!spf[j]) spf[j] = static_cast<std::uint32_t>(i);
    }
    for (std::size_t n = 2; n <= limit; ++n) {
        const std::uint64_t p = spf[n];
        std::size_t m = n, pk = 1;
        while (m % p == 0) {
            m /= p;
            pk *= p;
        }
        if (m != 1) {
            a[n] = a[pk] * a[m];
            continue;
        }
        // n = p^k
        if (n == p) {
            switch (rd.at(p)) {
                case Reduction::split_mult: a[n] = 1; break;
                case Reduction::nonsplit_mult: a[n] = -1; break;
                case Reduction::additive: a[n] = 0; break;
                case Reduction::good:
                    a[n] = p < 5 ? ap_small(E, p) : static_cast<long long>(p + 1) - static_cast<long long>(count_points(E, p));
                    break;
            }
            continue;
        }
        const std::size_t prev = n / p;
        if (rd.at(p) == Reduction::good)
            a[n] = a[p] * a[prev] - static_cast<long long>(p) * a[prev / p];
        else
            a[n] = a[p] * a[prev];
    }
    return a;
}

double special_g(int r, double x) {
    if (r == 0) return std::exp(-x);
    if (r == 1) return -std::expint(-x);
    // substitute y = e^t: int_0^inf exp(-x e^t) t^(r-1) dt / (r-1)!
    const double tmax = std::log(std::max(60.0 / x, 2.0)) + 1.0;
    const int steps = 4000;
    const double h = tmax / steps;
    double fact = 1;
    for (int k = 2; k < r; ++k) fact *= k;
    auto f = [&](double t) { return std::exp(-x * std::exp(t)) * std::pow(t, r - 1); };
    double s = f(0) + f(tmax);
    for (int i = 1; i < steps; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0 / fact;
}

double l_derivative(const std::vector<long long>& an, const Int& conductor, int r) {
    const double sq = std::sqrt(conductor.get_d());
    const double scale = 2.0 * std::numbers::pi / sq;
    double rfact = 1;
    for (int k = 2; k <= r; ++k) rfact *= k;
    double sum = 0;
    for (std::size_t n = 1; n < an.size(); ++n) {
        if (an[n] == 0) continue;
        const double x = scale * static_cast<double>(n);
        if (x > 700) break;
        sum += static_cast<double>(an[n]) / static_cast<double>(n) * special_g(r, x);
    }
    return 2.0 * rfact * sum;
}

AnalyticRank analytic_rank(const CurveQ& E, const ReductionData& rd, int root_number, const RankPolicy& policy) {
    AnalyticRank out;
    out.root_number = root_number;
    const double sq = std::sqrt(rd.conductor.get_d());
    const auto limit = static_cast<std::size_t>(std::ceil(policy.terms_per_sqrt_conductor * sq)) + 20;
    const auto an = dirichlet_coefficients(E, rd, limit);
    for (int r = root_number == 1 ? 0 : 1; r <= policy.max_rank; r += 2) {
        const double val = std::abs(l_derivative(an, rd.conductor, r));
        out.derivatives.push_back(val);
        if (val >= policy.zero_threshold) {
            out.rank = r;
            out.tag = r <= 1 ? RankTag::certain : RankTag::heuristic;
            return out;
        }
    }
    out.tag = RankTag::unknown;
    return out;
}

}  // namespace sha5
