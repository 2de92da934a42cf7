#pragma once

#include "arith/poly.hpp"
#include "curve/fp.hpp"
#include "curve/weierstrass.hpp"
#include "cyclo/cyclo.hpp"
#include "isogeny/velu.hpp"

#include <optional>

namespace sha5 {

using CurveK = Weierstrass<CycloElement>;
using PointK = Point<CycloElement>;

/// eta: E -> E' = E/<T> for a rational point T of exact order 5.
VeluIsogeny<Rat> velu_quotient(const CurveQ& E, const PointQ& T);

/// Monic quadratic whose roots are the x-coordinates of the nonzero points
/// of ker(eta dual) on E'. Computed from the traces of X(x) and X(x)^2 over
/// the ten non-kernel x-roots of the 5-division polynomial of E; checked to
/// divide the 5-division polynomial of E'.
QPoly dual_kernel(const VeluIsogeny<Rat>& eta);

/// A generator R of ker(eta dual) over K = Q(zeta5), with deterministic
/// choice of the root of the kernel polynomial and of the sign of y.
PointK dual_kernel_generator(const CurveQ& Eprime, const QPoly& h, bool flip_x = false, bool flip_y = false);

/// Reduction of a K-rational quantity at the prime above p (p = 1 mod 5)
/// where zeta5 maps to `root`.
Fp reduce_cyclo(const CycloElement& x, std::uint64_t p, std::uint64_t root);

struct TateNormalForm {
    CycloElement dtilde;
    Isomorphism<CycloElement> tau;  // source model -> E_dtilde
};

/// Brings (E, R) with R of exact order 5 to y^2 + (d+1)xy + dy = x^3 + dx^2
/// with R at (0,0).
TateNormalForm tate_normal_form(const CurveK& E, const PointK& R);

CurveK to_cyclo(const CurveQ& E);
PointK to_cyclo(const PointQ& P);

/// The dual isogeny E' -> E as Velu over K followed by a rational
/// isomorphism back to E, normalized so that dual(eta(P)) = 5P.
class DualIsogeny {
public:
    DualIsogeny(const VeluIsogeny<Rat>& eta, const PointK& R);

    /// Evaluation at the reduction modulo the prime above p where zeta5 -> root
    /// (p = 1 mod 5, of good reduction).
    Point<Fp> eval_mod(const Point<Fp>& P, std::uint64_t p, std::uint64_t root) const;
    /// Evaluation at a rational point of E'.
    PointQ operator()(const PointQ& P) const;

    const CurveQ& quotient() const { return quotient_; }
    const Isomorphism<Rat>& to_source() const { return iso_; }

private:
    CurveQ source_, target_, quotient_;  // E', E, Velu codomain (rational)
    PointK R_, R2_;
    Isomorphism<Rat> iso_;               // quotient -> E
};

/// Local data at 5 for the family: |eta'(0)|_5 = 5^-k and dim coker eta over Q_5.
struct FiveAdicData {
    std::optional<int> abs_exponent;  // k, absent when 5 | uv
    int coker_dim = 0;
};

FiveAdicData eta_prime_5val(long u, long v);

/// Number of times the Velu model of E' can be rescaled by 5 while staying integral.
int velu_excess_at_5(const CurveQ& Eprime);

/// Everything about eta a curve record needs.
struct IsogenyData {
    CurveQ source, target;
    VeluIsogeny<Rat> eta;
    QPoly kernel_poly;
    PointK dual_generator;
    CycloElement dtilde;
    Isomorphism<CycloElement> tau;
};

IsogenyData isogeny_data(const CurveQ& E, const PointQ& T);

}  // namespace sha5
