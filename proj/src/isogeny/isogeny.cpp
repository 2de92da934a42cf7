#include "isogeny/isogeny.hpp"

#include "arith/primes.hpp"
#include "curve/family.hpp"
#include "curve/saturate.hpp"

namespace sha5 {

namespace {

QPoly x_minus(const Rat& a) { return QPoly::linear_root(a, Rat(1)); }

// Inverse of a modulo g over Q; a and g coprime.
QPoly inverse_mod(const QPoly& a, const QPoly& g) {
    QPoly r0 = g, r1 = QPoly::divmod(a, g).second;
    QPoly s0, s1 = QPoly::constant(Rat(1));
    while (r1.degree() > 0) {
        auto [q, r] = QPoly::divmod(r0, r1);
        QPoly s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r1.is_zero_poly()) throw InconsistencyError("inverse_mod: polynomials are not coprime");
    return (Rat(1) / r1.lead()) * s1;
}

Rat trace_mod(const QPoly& a, const QPoly& g) {
    const int n = g.degree();
    Rat tr = 0;
    QPoly xi = QPoly::constant(Rat(1));
    const QPoly x({Rat(0), Rat(1)});
    for (int i = 0; i < n; ++i) {
        tr += QPoly::divmod(a * xi, g).second.coeff(i);
        xi = xi * x;
    }
    return tr;
}

bool rational_cube_root(const Rat& q, Rat& out) {
    Int n, d;
    if (mpz_root(n.get_mpz_t(), q.get_num().get_mpz_t(), 3) == 0) return false;
    if (mpz_root(d.get_mpz_t(), q.get_den().get_mpz_t(), 3) == 0) return false;
    out = make_rat(n, d);
    return true;
}

Weierstrass<Fp> reduce_curve_k(const CurveK& E, std::uint64_t p, std::uint64_t root) {
    Weierstrass<Fp> R;
    R.a1 = reduce_cyclo(E.a1, p, root);
    R.a2 = reduce_cyclo(E.a2, p, root);
    R.a3 = reduce_cyclo(E.a3, p, root);
    R.a4 = reduce_cyclo(E.a4, p, root);
    R.a6 = reduce_cyclo(E.a6, p, root);
    return R;
}

Point<Fp> reduce_point_k(const PointK& P, std::uint64_t p, std::uint64_t root) {
    if (P.infinity) return Point<Fp>::at_infinity();
    return Point<Fp>::affine(reduce_cyclo(P.x, p, root), reduce_cyclo(P.y, p, root));
}

Isomorphism<Fp> reduce_iso(const Isomorphism<Rat>& iso, std::uint64_t p) {
    Isomorphism<Fp> r;
    const auto red = [&](const Rat& q) { return reduce_cyclo(CycloElement(q), p, 1); };
    r.u = red(iso.u);
    r.r = red(iso.r);
    r.s = red(iso.s);
    r.t = red(iso.t);
    return r;
}

bool reduces_cleanly(const CycloElement& x, std::uint64_t p) { return mod_si(x.denominator(), p) != 0; }

}  // namespace

VeluIsogeny<Rat> velu_quotient(const CurveQ& E, const PointQ& T) {
    if (!on_curve(E, T) || torsion_order(E, T, 5) != 5) throw DomainError("velu_quotient: kernel point is not of order 5");
    return VeluIsogeny<Rat>(E, {T, multiply(E, 2, T)});
}

QPoly dual_kernel(const VeluIsogeny<Rat>& eta) {
    const CurveQ& E = eta.domain();
    QPoly g = psi5(E);
    QPoly D = QPoly::constant(Rat(1));
    for (const auto& Q : eta.kernel_reps()) {
        auto [q, r] = QPoly::divmod(g, x_minus(Q.x));
        if (!r.is_zero_poly()) throw InconsistencyError("dual_kernel: kernel x-coordinate is not a root of psi5");
        g = q;
        D = D * x_minus(Q.x) * x_minus(Q.x);
    }
    g = g.monic();
    // X = N / D
    const QPoly x({Rat(0), Rat(1)});
    QPoly N = x * D;
    for (std::size_t i = 0; i < eta.kernel_reps().size(); ++i) {
        const auto& Q = eta.kernel_reps()[i];
        const auto& d = eta.data()[i];
        const QPoly rest = QPoly::divmod(D, x_minus(Q.x) * x_minus(Q.x)).first;
        N = N + (d.v * x_minus(Q.x) + QPoly::constant(d.u)) * rest;
    }
    const QPoly X = QPoly::divmod(N * inverse_mod(D, g), g).second;
    const QPoly X2 = QPoly::divmod(X * X, g).second;
    const Rat s1 = trace_mod(X, g) / 5, s2 = trace_mod(X2, g) / 5;
    const QPoly h({(s1 * s1 - s2) / 2, -s1, Rat(1)});
    if (!QPoly::divmod(psi5(eta.codomain()), h).second.is_zero_poly())
        throw InconsistencyError("dual_kernel: quadratic does not divide the 5-division polynomial of E'");
    return h;
}

CurveK to_cyclo(const CurveQ& E) {
    CurveK K;
    K.a1 = E.a1;
    K.a2 = E.a2;
    K.a3 = E.a3;
    K.a4 = E.a4;
    K.a6 = E.a6;
    return K;
}

PointK to_cyclo(const PointQ& P) {
    if (P.infinity) return PointK::at_infinity();
    return PointK::affine(P.x, P.y);
}

PointK dual_kernel_generator(const CurveQ& Ep, const QPoly& h, bool flip_x, bool flip_y) {
    if (h.degree() != 2 || h.lead() != 1) throw DomainError("dual_kernel_generator: kernel polynomial must be monic quadratic");
    const Rat c1 = h.coeff(1), c0 = h.coeff(0);
    const Rat disc = c1 * c1 - 4 * c0;
    Rat w;
    if (!rational_sqrt(disc / 5, w)) throw InconsistencyError("dual_kernel_generator: kernel polynomial does not split over Q(sqrt5)");
    const CycloElement sq = CycloElement(w) * CycloElement::sqrt5();
    const CycloElement xr = (CycloElement(-c1) + (flip_x ? -sq : sq)) / CycloElement(2L);
    const CurveK EK = to_cyclo(Ep);
    const CycloElement F = EK.two_division(xr);
    const auto s = sqrt_in_cyclo(F);
    if (!s) throw InconsistencyError("dual_kernel_generator: y-coordinate is not defined over K");
    const CycloElement base = CycloElement(0L) - EK.a1 * xr - EK.a3;
    CycloElement y1 = (base + *s) / CycloElement(2L), y2 = (base - *s) / CycloElement(2L);
    if (y2 < y1) std::swap(y1, y2);
    const PointK R = PointK::affine(xr, flip_y ? y2 : y1);
    if (!on_curve(EK, R) || torsion_order(EK, R, 5) != 5) throw InconsistencyError("dual_kernel_generator: point is not of order 5");
    return R;
}

Fp reduce_cyclo(const CycloElement& x, std::uint64_t p, std::uint64_t root) {
    Fp acc(0L), rp(1L);
    const Fp r = Fp::raw(root);
    for (std::size_t i = 0; i < 4; ++i) {
        const Rat& c = x[i];
        if (sgn(c) != 0) {
            const Fp num = Fp::raw(static_cast<std::uint64_t>(mod_si(c.get_num(), p)));
            const Fp den = Fp::raw(static_cast<std::uint64_t>(mod_si(c.get_den(), p)));
            acc = acc + num / den * rp;
        }
        rp = rp * r;
    }
    return acc;
}

TateNormalForm tate_normal_form(const CurveK& E, const PointK& R) {
    if (R.infinity || !on_curve(E, R)) throw DomainError("tate_normal_form: point not on curve");
    using F = CycloElement;
    Isomorphism<F> shift;
    shift.r = R.x;
    shift.t = R.y;
    CurveK C = shift.apply(E);
    if (C.a3.is_zero()) throw DomainError("tate_normal_form: point of order 2");
    Isomorphism<F> tangent;
    tangent.s = C.a4 / C.a3;
    C = tangent.apply(C);
    if (C.a2.is_zero()) throw DomainError("tate_normal_form: point of order 3");
    Isomorphism<F> scale;
    scale.u = C.a3 / C.a2;
    C = scale.apply(C);
    TateNormalForm out;
    out.dtilde = C.a2;
    out.tau = shift.then(tangent).then(scale);
    if (!(C.a3 == out.dtilde) || !(C.a1 == out.dtilde + F(1L)) || !C.a4.is_zero() || !C.a6.is_zero())
        throw DomainError("tate_normal_form: point is not of order 5");
    return out;
}

DualIsogeny::DualIsogeny(const VeluIsogeny<Rat>& eta, const PointK& R)
    : source_(eta.codomain()), target_(eta.domain()), R_(R) {
    const CurveK EK = to_cyclo(source_);
    R2_ = multiply(EK, 2, R_);
    const VeluIsogeny<CycloElement> dual(EK, {R_, R2_});
    const CurveK& QK = dual.codomain();
    for (const CycloElement* a : {&QK.a1, &QK.a2, &QK.a3, &QK.a4, &QK.a6})
        if (!a->is_rational()) throw InconsistencyError("DualIsogeny: Velu codomain is not rational");
    quotient_.a1 = QK.a1[0];
    quotient_.a2 = QK.a2[0];
    quotient_.a3 = QK.a3[0];
    quotient_.a4 = QK.a4[0];
    quotient_.a6 = QK.a6[0];

    // u^2 from c4, c6 of quotient (source of the isomorphism) and target
    const Rat c4q = quotient_.c4(), c6q = quotient_.c6(), c4e = target_.c4(), c6e = target_.c6();
    std::vector<Rat> u2s;
    if (sgn(c4q) != 0 && sgn(c6q) != 0) {
        u2s.push_back((c6q / c6e) / (c4q / c4e));
    } else if (sgn(c4q) == 0) {
        Rat u2;
        if (rational_cube_root(c6q / c6e, u2)) u2s.push_back(u2);
    } else {
        Rat u2;
        if (rational_sqrt(c4q / c4e, u2)) {
            u2s.push_back(u2);
            u2s.push_back(-u2);
        }
    }
    std::vector<Isomorphism<Rat>> candidates;
    for (const Rat& u2 : u2s) {
        Rat u;
        if (!rational_sqrt(u2, u)) continue;
        for (const Rat& uu : {u, Rat(-u)}) {
            Isomorphism<Rat> iso;
            iso.u = uu;
            iso.s = (uu * target_.a1 - quotient_.a1) / 2;
            iso.r = (uu * uu * target_.a2 - quotient_.a2 + iso.s * quotient_.a1 + iso.s * iso.s) / 3;
            iso.t = (uu * uu * uu * target_.a3 - quotient_.a3 - iso.r * quotient_.a1) / 2;
            if (iso.apply(quotient_) == target_) candidates.push_back(iso);
        }
    }
    if (candidates.empty()) throw InconsistencyError("DualIsogeny: Velu codomain is not isomorphic to E over Q");

    // fix the sign with a point over a split prime
    const Int disc = target_.discriminant().get_num() * source_.discriminant().get_num();
    for (std::uint64_t p = 11;; p += 10) {
        if (!is_prime_u64(p) || mod_si(disc, p) == 0) continue;
        if (!reduces_cleanly(R_.x, p) || !reduces_cleanly(R_.y, p) || !reduces_cleanly(R2_.x, p) || !reduces_cleanly(R2_.y, p))
            continue;
        bool clean = true;
        for (const auto& c : candidates)
            for (const Rat* q : {&c.u, &c.r, &c.s, &c.t})
                if (mod_si(q->get_den(), p) == 0 || (q == &c.u && mod_si(q->get_num(), p) == 0)) clean = false;
        if (!clean) continue;
        FpScope scope(p);
        std::uint64_t root = 0;
        for (std::uint64_t a = 2; root == 0; ++a) {
            const std::uint64_t g = powmod(a, (p - 1) / 5, p);
            if (g != 1) root = g;
        }
        const auto Ep = reduce_curve(target_, p);
        const VeluIsogeny<Fp> eta_p(Ep, {reduce_point(eta.kernel_reps()[0], p), reduce_point(eta.kernel_reps()[1], p)});
        Point<Fp> P = Point<Fp>::at_infinity();
        // E(F_p) may be killed by 5; then try the next prime
        for (std::uint64_t x = 1; P.infinity && x < p; ++x) {
            const Fp X = Fp::raw(x);
            const Fp d = Ep.two_division(X);
            if (d.value() == 0 || legendre(static_cast<std::int64_t>(d.value()), p) != 1) continue;
            const Fp s = Fp::raw(sqrt_mod(d.value(), p));
            const Point<Fp> cand = Point<Fp>::affine(X, (s - Ep.a1 * X - Ep.a3) / Fp(2L));
            if (!multiply(Ep, 5, cand).infinity) P = cand;
        }
        if (P.infinity) continue;
        const Point<Fp> fiveP = multiply(Ep, 5, P);
        const VeluIsogeny<Fp> dual_p(reduce_curve_k(EK, p, root), {reduce_point_k(R_, p, root), reduce_point_k(R2_, p, root)});
        const Point<Fp> image = dual_p(eta_p(P));
        for (const auto& c : candidates) {
            if (reduce_iso(c, p).map(image) == fiveP) {
                iso_ = c;
                return;
            }
        }
        throw InconsistencyError("DualIsogeny: composite is not multiplication by 5");
    }
}

Point<Fp> DualIsogeny::eval_mod(const Point<Fp>& P, std::uint64_t p, std::uint64_t root) const {
    FpScope scope(p);
    const VeluIsogeny<Fp> dual_p(reduce_curve_k(to_cyclo(source_), p, root),
                                 {reduce_point_k(R_, p, root), reduce_point_k(R2_, p, root)});
    return reduce_iso(iso_, p).map(dual_p(P));
}

PointQ DualIsogeny::operator()(const PointQ& P) const {
    const VeluIsogeny<CycloElement> dual(to_cyclo(source_), {R_, R2_});
    const PointK img = dual(to_cyclo(P));
    if (img.infinity) return PointQ::at_infinity();
    if (!img.x.is_rational() || !img.y.is_rational()) throw InconsistencyError("DualIsogeny: image of a rational point is not rational");
    return iso_.map(PointQ::affine(img.x[0], img.y[0]));
}

FiveAdicData eta_prime_5val(long u, long v) {
    FiveAdicData d;
    if ((Int(u) * v) % 5 == 0) {
        d.coker_dim = 0;
        return d;
    }
    const Int D = family_discriminant_factor(u, v);
    const int e = mpz_divisible_ui_p(D.get_mpz_t(), 5) ? valuation(D, 5) : 0;
    if (e == 3) {
        d.abs_exponent = 1;
        d.coker_dim = 2;
    } else {
        d.abs_exponent = 0;
        d.coker_dim = 1;
    }
    return d;
}

int velu_excess_at_5(const CurveQ& Ep) {
    const Int c4 = Ep.c4().get_num(), c6 = Ep.c6().get_num();
    if (Ep.c4().get_den() != 1 || Ep.c6().get_den() != 1) throw DomainError("velu_excess_at_5: model must be integral");
    const int v4 = sgn(c4) == 0 ? 1000 : valuation(c4, 5);
    const int v6 = sgn(c6) == 0 ? 1000 : valuation(c6, 5);
    return std::min(v4 / 4, v6 / 6);
}

IsogenyData isogeny_data(const CurveQ& E, const PointQ& T) {
    IsogenyData d;
    d.source = E;
    d.eta = velu_quotient(E, T);
    d.target = d.eta.codomain();
    d.kernel_poly = dual_kernel(d.eta);
    d.dual_generator = dual_kernel_generator(d.target, d.kernel_poly);
    const auto tnf = tate_normal_form(to_cyclo(d.target), d.dual_generator);
    d.dtilde = tnf.dtilde;
    d.tau = tnf.tau;
    return d;
}

}  // namespace sha5
