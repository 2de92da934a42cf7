#pragma once

#include "arith/bigint.hpp"
#include "arith/poly.hpp"
#include "arith/qs5.hpp"
#include "curve/weierstrass.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace sha5 {

enum class Reduction { good, split_mult, nonsplit_mult, additive };

const char* to_string(Reduction r);

struct ReductionData {
    std::map<std::uint64_t, Reduction> bad;  // good primes are absent
    /// Primes where (0,0) reduces into the identity component.
    std::vector<std::uint64_t> identity_component;
    Int conductor;
    PrimeList S, T, U;

    Reduction at(std::uint64_t p) const;
};

/// u^2 + 11uv - v^2
Int family_discriminant_factor(long u, long v);

/// Integral model Y^2 + (u+v)XY + uv^2 Y = X^3 + uv X^2 of E_{u/v} and its
/// reduction data. Requires u, v >= 1 coprime.
CurveQ curve_from_uv(long u, long v);
ReductionData reduction_data(long u, long v);

/// The four nontrivial multiples of (0,0) on the integral model.
std::array<PointQ, 4> family_torsion(long u, long v);

/// Global root number, a product of local factors for this family.
int root_number(const ReductionData& rd, long u, long v);

/// Number of coprime pairs 1 <= u,v <= n.
std::uint64_t coprime_pair_count(long n);

// Division polynomials of a rational model (psi_2^2 = two-division cubic).
QPoly two_division_poly(const CurveQ& E);
QPoly psi3(const CurveQ& E);
QPoly psi4_over_psi2(const CurveQ& E);
QPoly psi5(const CurveQ& E);
/// Numerator of x([5]P) as a function of x(P): phi5, so x([5]P) = phi5/psi5^2.
QPoly phi5(const CurveQ& E);

}  // namespace sha5
