#include "curve/family.hpp"

#include "arith/factor.hpp"

#include <numeric>

namespace sha5 {

const char* to_string(Reduction r) {
    switch (r) {
        case Reduction::good: return "good";
        case Reduction::split_mult: return "split";
        case Reduction::nonsplit_mult: return "nonsplit";
        case Reduction::additive: return "additive";
    }
    return "?";
}

Reduction ReductionData::at(std::uint64_t p) const {
    auto it = bad.find(p);
    return it == bad.end() ? Reduction::good : it->second;
}

Int family_discriminant_factor(long u, long v) {
    const Int U(u), V(v);
    return U * U + 11 * U * V - V * V;
}

namespace {

void check_uv(long u, long v) {
    if (u < 1 || v < 1) throw DomainError("curve_from_uv: u and v must be positive");
    if (std::gcd(u, v) != 1) throw DomainError("curve_from_uv: gcd(u,v) != 1");
}

}  // namespace

CurveQ curve_from_uv(long u, long v) {
    check_uv(u, v);
    CurveQ E;
    E.a1 = Rat(Int(u) + v);
    E.a2 = Rat(Int(u) * v);
    E.a3 = Rat(Int(u) * v * v);
    return E;
}

ReductionData reduction_data(long u, long v) {
    check_uv(u, v);
    ReductionData rd;
    const Int D = family_discriminant_factor(u, v);
    const auto fuv = factorize(Int(u) * v);
    const auto fD = factorize(D);

    rd.conductor = 1;
    for (const auto& [p, e] : fuv.factors) {
        const auto q = to_u64(p);
        rd.bad[q] = Reduction::split_mult;
        rd.T.push_back(q);
        rd.conductor *= p;
    }
    int v5D = 0;
    for (const auto& [p, e] : fD.factors) {
        const auto q = to_u64(p);
        if (q == 5) {
            v5D = static_cast<int>(e);
            rd.bad[5] = Reduction::additive;
            rd.conductor *= 25;
            if (e != 2 && e != 3) throw InconsistencyError("reduction_data: v5(u^2+11uv-v^2) not in {2,3}");
            if (e == 3) rd.U.push_back(5);
        } else if (q % 5 == 1) {
            rd.bad[q] = Reduction::split_mult;
            rd.U.push_back(q);
            rd.conductor *= p;
        } else if (q % 5 == 4) {
            rd.bad[q] = Reduction::nonsplit_mult;
            rd.conductor *= p;
        } else {
            throw InconsistencyError("reduction_data: prime factor of u^2+11uv-v^2 not congruent to 0, 1 or 4 mod 5");
        }
        rd.identity_component.push_back(q);
    }
    (void)v5D;
    std::sort(rd.U.begin(), rd.U.end());
    std::sort(rd.identity_component.begin(), rd.identity_component.end());
    rd.S.push_back(5);
    for (const auto& [q, r] : rd.bad) rd.S.push_back(q);
    std::sort(rd.S.begin(), rd.S.end());
    rd.S.erase(std::unique(rd.S.begin(), rd.S.end()), rd.S.end());
    return rd;
}

std::array<PointQ, 4> family_torsion(long u, long v) {
    const Rat U(u), V(v);
    return {PointQ::affine(0, 0), PointQ::affine(-U * V, U * U * V), PointQ::affine(-U * V, 0),
            PointQ::affine(0, -U * V * V)};
}

int root_number(const ReductionData& rd, long u, long v) {
    int w = -1;
    for (const auto& [p, r] : rd.bad) {
        switch (r) {
            case Reduction::split_mult: w = -w; break;
            case Reduction::nonsplit_mult: break;
            case Reduction::additive: {
                // potentially good at 5; local root number from the semistability defect
                const int e = valuation(family_discriminant_factor(u, v), 5);
                if (e == 3) w = -w;
                break;
            }
            case Reduction::good: break;
        }
    }
    return w;
}

std::uint64_t coprime_pair_count(long n) {
    std::uint64_t c = 0;
    for (long u = 1; u <= n; ++u)
        for (long v = 1; v <= n; ++v)
            if (std::gcd(u, v) == 1) ++c;
    return c;
}

QPoly two_division_poly(const CurveQ& E) { return QPoly({E.b6(), 2 * E.b4(), E.b2(), Rat(4)}); }

QPoly psi3(const CurveQ& E) { return QPoly({E.b8(), 3 * E.b6(), 3 * E.b4(), E.b2(), Rat(3)}); }

QPoly psi4_over_psi2(const CurveQ& E) {
    const Rat b2 = E.b2(), b4 = E.b4(), b6 = E.b6(), b8 = E.b8();
    return QPoly({b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, Rat(2)});
}

QPoly psi5(const CurveQ& E) {
    const QPoly F = two_division_poly(E), p3 = psi3(E);
    return psi4_over_psi2(E) * F * F - p3 * p3 * p3;
}

QPoly phi5(const CurveQ& E) {
    const QPoly F = two_division_poly(E), p3 = psi3(E), g4 = psi4_over_psi2(E), p5 = psi5(E);
    const QPoly x({Rat(0), Rat(1)});
    return x * p5 * p5 - F * p3 * g4 * (p5 - g4 * g4);
}

}  // namespace sha5
