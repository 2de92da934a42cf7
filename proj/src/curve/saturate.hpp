#pragma once

#include "arith/f5.hpp"
#include "arith/poly.hpp"
#include "curve/fp.hpp"
#include "curve/weierstrass.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sha5 {

/// Reduction of a rational point into E(F_p); p must not divide the
/// denominators of the model.
Point<Fp> reduce_point(const PointQ& P, std::uint64_t p);
Weierstrass<Fp> reduce_curve(const CurveQ& E, std::uint64_t p);

/// #E(F_p) for an odd prime p of good reduction (E integral).
std::uint64_t count_points(const CurveQ& E, std::uint64_t p);

/// Homomorphisms E(Q) -> Z/5 from good primes p >= 7: P maps to the
/// coordinates of its image in S/5S, S the 5-Sylow subgroup of E(F_p). Primes
/// whose S is cyclic give one coordinate, those with S = (Z/5)^2 give two;
/// others are skipped. The (Z/5)^2 primes are the only ones that see points
/// in the image of a 5-isogeny from a curve with rational 5-torsion.
class ModularFunctionals {
public:
    explicit ModularFunctionals(const CurveQ& E, std::size_t initial = 24);

    /// Number of primes in use.
    std::size_t size() const { return locals_.size(); }
    /// Length of a row.
    std::size_t width() const;
    const std::vector<std::uint64_t> primes() const;
    /// Adds `count` further primes.
    void extend(std::size_t count);
    F5Row row(const PointQ& P) const;

private:
    struct Local {
        std::uint64_t p;
        std::uint64_t cofactor;  // prime-to-5 part of #E(F_p)
        std::uint64_t shift;     // 5^(k-1) for a cyclic 5-Sylow of order 5^k
        int dim;
        Weierstrass<Fp> curve;
        Point<Fp> generator, second;  // basis of the order-5 part used
    };

    CurveQ E_;
    Int disc_;
    std::uint64_t next_ = 7;
    std::vector<Local> locals_;
};

/// x([5]X) = x(P) solved through phi5 - x(P) psi5^2 (degree 25).
class FiveDivider {
public:
    explicit FiveDivider(const CurveQ& E);
    /// R with 5R = P, if one exists over Q.
    std::optional<PointQ> divide(const PointQ& P) const;

private:
    CurveQ E_;
    QPoly phi5_, psi5sq_;
};

struct SaturationResult {
    std::vector<PointQ> basis;  // free generators, rows independent together with torsion
    std::vector<F5Row> rows;    // functional rows of torsion generators then basis
    int primes_used = 0;
};

/// Builds a 5-saturated independent family from `points`. `torsion` holds
/// generators of the 5-primary torsion (empty if none). Points whose class
/// is already spanned are dropped; combinations divisible by 5 are divided.
SaturationResult saturate_at_5(const CurveQ& E, const std::vector<PointQ>& points, const std::vector<PointQ>& torsion);

/// Variant reusing caller-owned functionals and divider (both may grow).
SaturationResult saturate_at_5(const CurveQ& E, const std::vector<PointQ>& points, const std::vector<PointQ>& torsion,
                               ModularFunctionals& functionals, const FiveDivider& divider);

}  // namespace sha5
