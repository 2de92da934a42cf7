#include "doctest.h"
#include "gen.hpp"

#include "arith/factor.hpp"
#include "curve/family.hpp"
#include "curve/saturate.hpp"
#include "curve/torsion.hpp"
#include "isogeny/isogeny.hpp"

using namespace sha5;

namespace {

CurveK d_model(const CycloElement& d) {
    CurveK E;
    E.a1 = d + CycloElement(1L);
    E.a2 = d;
    E.a3 = d;
    E.a4 = CycloElement(0L);
    E.a6 = CycloElement(0L);
    return E;
}

// Random affine point of E(F_p); the modulus must already be set.
Point<Fp> random_point(const Weierstrass<Fp>& E, testgen::Gen& g) {
    const std::uint64_t p = Fp::modulus();
    for (;;) {
        const Fp x = Fp::raw(g.urange(0, p - 1));
        const Fp d = E.two_division(x);
        if (d.value() != 0 && legendre(static_cast<std::int64_t>(d.value()), p) != 1) continue;
        const Fp s = Fp::raw(sqrt_mod(d.value(), p));
        const Fp y = ((g.coin() ? s : -s) - E.a1 * x - E.a3) / Fp(2L);
        return Point<Fp>::affine(x, y);
    }
}

std::vector<std::uint64_t> split_primes(const Int& bad, std::size_t count) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 11; out.size() < count; p += 10)
        if (is_prime_u64(p) && mod_si(bad, p) != 0) out.push_back(p);
    return out;
}

std::vector<std::uint64_t> fifth_roots(std::uint64_t p) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t a = 2; out.size() < 4; ++a) {
        const std::uint64_t r = powmod(a, (p - 1) / 5, p);
        if (r != 1 && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
    }
    return out;
}

}  // namespace

TEST_CASE("eta kills its kernel and is a homomorphism") {
    testgen::Gen g(71);
    for (int trial = 0; trial < 25; ++trial) {
        const auto [u, v] = g.coprime_pair(40);
        const CurveQ E = curve_from_uv(u, v);
        const auto tors = family_torsion(u, v);
        const auto eta = velu_quotient(E, tors[0]);
        for (const auto& T : tors) CHECK(eta(T).infinity);
        const CurveQ& Ep = eta.codomain();
        CHECK(Ep.a1 == E.a1);
        CHECK(sgn(Ep.discriminant()) != 0);
        CHECK(Ep.c4().get_den() == 1);

        const Int bad = E.discriminant().get_num() * Ep.discriminant().get_num();
        for (auto p : split_primes(bad, 2)) {
            FpScope scope(p);
            const auto Er = reduce_curve(E, p), Epr = reduce_curve(Ep, p);
            const VeluIsogeny<Fp> eta_p(Er, {reduce_point(tors[0], p), reduce_point(tors[1], p)});
            CHECK(eta_p.codomain() == Epr);
            for (int k = 0; k < 5; ++k) {
                const auto P = random_point(Er, g), Q = random_point(Er, g);
                const auto lhs = eta_p(add(Er, P, Q));
                const auto rhs = add(Epr, eta_p(P), eta_p(Q));
                CHECK(on_curve(Epr, eta_p(P)));
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("dual kernel polynomial and generator") {
    testgen::Gen g(72);
    for (int trial = 0; trial < 12; ++trial) {
        const auto [u, v] = g.coprime_pair(30);
        const CurveQ E = curve_from_uv(u, v);
        const auto eta = velu_quotient(E, family_torsion(u, v)[0]);
        const QPoly h = dual_kernel(eta);
        CHECK(h.degree() == 2);
        CHECK(QPoly::divmod(psi5(eta.codomain()), h).second.is_zero_poly());
        // h is not rational-split: the dual kernel is not pointwise rational
        CHECK(rational_roots(h).empty());
        const CurveK EK = to_cyclo(eta.codomain());
        std::vector<PointK> gens;
        for (bool fx : {false, true})
            for (bool fy : {false, true}) {
                const PointK R = dual_kernel_generator(eta.codomain(), h, fx, fy);
                CHECK(on_curve(EK, R));
                CHECK(multiply(EK, 5, R).infinity);
                gens.push_back(R);
            }
        // flip_y gives -R; flip_x gives +-2R
        CHECK(gens[1] == negate(EK, gens[0]));
        const PointK R2 = multiply(EK, 2, gens[0]);
        CHECK((gens[2] == R2 || gens[2] == negate(EK, R2)));
    }
}

TEST_CASE("dual isogeny composes to multiplication by 5") {
    testgen::Gen g(73);
    for (int trial = 0; trial < 10; ++trial) {
        const auto [u, v] = g.coprime_pair(30);
        const CurveQ E = curve_from_uv(u, v);
        const auto tors = family_torsion(u, v);
        const auto eta = velu_quotient(E, tors[0]);
        const PointK R = dual_kernel_generator(eta.codomain(), dual_kernel(eta));
        const DualIsogeny dual(eta, R);
        CHECK(dual.to_source().apply(dual.quotient()) == E);

        const Int bad = E.discriminant().get_num() * eta.codomain().discriminant().get_num();
        for (auto p : split_primes(bad * 3, 2)) {
            bool clean = true;
            for (const Rat* q : {&dual.to_source().r, &dual.to_source().s, &dual.to_source().t, &dual.to_source().u})
                if (mod_si(q->get_den(), p) == 0) clean = false;
            for (const auto& c : {R.x, R.y, multiply(to_cyclo(eta.codomain()), 2, R).x})
                for (std::size_t i = 0; i < 4; ++i)
                    if (mod_si(c[i].get_den(), p) == 0) clean = false;
            if (!clean) continue;
            for (auto root : fifth_roots(p)) {
                FpScope scope(p);
                const auto Er = reduce_curve(E, p);
                const VeluIsogeny<Fp> eta_p(Er, {reduce_point(tors[0], p), reduce_point(tors[1], p)});
                for (int k = 0; k < 4; ++k) {
                    const auto P = random_point(Er, g);
                    CHECK(dual.eval_mod(eta_p(P), p, root) == multiply(Er, 5, P));
                }
            }
        }
    }

    // rational points: (3,1) has the generator (-6, 12)
    const CurveQ E = curve_from_uv(3, 1);
    const auto eta = velu_quotient(E, family_torsion(3, 1)[0]);
    const DualIsogeny dual(eta, dual_kernel_generator(eta.codomain(), dual_kernel(eta)));
    const PointQ P = PointQ::affine(Rat(-6), Rat(12));
    REQUIRE(on_curve(E, P));
    CHECK(dual(eta(P)) == multiply(E, 5, P));
    for (const auto& T : family_torsion(3, 1)) CHECK(dual(eta(add(E, P, T))) == multiply(E, 5, P));
}

TEST_CASE("isogenous curve of conductor 11 has rational 5-torsion") {
    const CurveQ E = curve_from_uv(1, 1);
    const auto eta = velu_quotient(E, family_torsion(1, 1)[0]);
    const auto t = torsion_subgroup(eta.codomain());
    CHECK(t.five_torsion.has_value());
    CHECK(t.order == 5);
    CHECK(abs(eta.codomain().discriminant()) == Int(161051));
}

TEST_CASE("Tate normal form examples") {
    testgen::Gen g(74);
    for (int trial = 0; trial < 20; ++trial) {
        const CycloElement d = CycloElement(std::array<Rat, 4>{Rat(g.range(-9, 9)), Rat(g.range(-9, 9)),
                                                                Rat(g.range(-9, 9)), Rat(g.range(-9, 9))});
        if (d.is_zero()) continue;
        const CurveK E = d_model(d);
        if (E.discriminant().is_zero()) continue;
        const PointK P0 = PointK::affine(CycloElement(0L), CycloElement(0L));
        const auto t0 = tate_normal_form(E, P0);
        CHECK(t0.dtilde == d);
        const auto t1 = tate_normal_form(E, PointK::affine(CycloElement(0L), CycloElement(0L) - d));
        CHECK(t1.dtilde == d);
        const auto t2 = tate_normal_form(E, PointK::affine(CycloElement(0L) - d, d * d));
        CHECK(t2.dtilde == CycloElement(0L) - CycloElement(1L) / d);
        // tau really sends the point to (0,0) on the normal form
        const PointK img = t2.tau.map(PointK::affine(CycloElement(0L) - d, d * d));
        CHECK(img == P0);
        CHECK(t2.tau.apply(E) == d_model(t2.dtilde));
    }
    CHECK_THROWS_AS(tate_normal_form(d_model(CycloElement(2L)), PointK::affine(CycloElement(1L), CycloElement(1L))),
                    DomainError);
}

TEST_CASE("dual generator choice moves dtilde along its orbit") {
    for (auto [u, v] : std::vector<std::pair<long, long>>{{1, 1}, {3, 1}, {2, 7}, {4, 9}}) {
        const auto data = isogeny_data(curve_from_uv(u, v), family_torsion(u, v)[0]);
        const CurveK EK = to_cyclo(data.target);
        const PointK R = data.dual_generator;
        CHECK(tate_normal_form(EK, negate(EK, R)).dtilde == data.dtilde);
        CHECK(tate_normal_form(EK, multiply(EK, 2, R)).dtilde == CycloElement(-1L) / data.dtilde);
        CHECK(!data.dtilde.is_rational());
    }
}

TEST_CASE("local data at 5") {
    CHECK(eta_prime_5val(2, 1).coker_dim == 1);
    CHECK(eta_prime_5val(2, 1).abs_exponent == 0);
    CHECK(eta_prime_5val(7, 1).coker_dim == 2);
    CHECK(eta_prime_5val(7, 1).abs_exponent == 1);
    CHECK(eta_prime_5val(1, 5).coker_dim == 0);
    CHECK(!eta_prime_5val(1, 5).abs_exponent.has_value());
    CHECK(eta_prime_5val(1, 1).coker_dim == 1);

    // cross-check against the Velu model of E'
    int checked = 0;
    for (long u = 1; u <= 60; ++u)
        for (long v = 1; v <= 60; ++v) {
            if (std::gcd(u, v) != 1 || (u * v) % 5 == 0) continue;
            const auto eta = velu_quotient(curve_from_uv(u, v), family_torsion(u, v)[0]);
            const int excess = velu_excess_at_5(eta.codomain());
            const auto d = eta_prime_5val(u, v);
            CHECK((excess >= 1) == (d.abs_exponent == 1));
            ++checked;
        }
    CHECK(checked > 1000);
}

TEST_CASE("dual isogeny skips primes where E(F_p) is killed by 5") {
    // E(F_31) is (Z/5)^2 for (1,14)
    const CurveQ E = curve_from_uv(1, 14);
    REQUIRE(count_points(E, 31) == 25);
    const auto eta = velu_quotient(E, family_torsion(1, 14)[0]);
    const DualIsogeny dual(eta, dual_kernel_generator(eta.codomain(), dual_kernel(eta)));
    CHECK(dual.to_source().apply(dual.quotient()) == E);
}
