#include "curve/saturate.hpp"

#include "arith/primes.hpp"

#include <algorithm>
#include "curve/family.hpp"

namespace sha5 {

namespace {

constexpr std::size_t kMaxPrimes = 1600;

Fp reduce_rat(const Rat& x, std::uint64_t p) {
    const auto n = static_cast<std::uint64_t>(mod_si(x.get_num(), p));
    const auto d = static_cast<std::uint64_t>(mod_si(x.get_den(), p));
    return Fp::raw(n) / Fp::raw(d);
}

}  // namespace

Weierstrass<Fp> reduce_curve(const CurveQ& E, std::uint64_t p) {
    Weierstrass<Fp> R;
    R.a1 = reduce_rat(E.a1, p);
    R.a2 = reduce_rat(E.a2, p);
    R.a3 = reduce_rat(E.a3, p);
    R.a4 = reduce_rat(E.a4, p);
    R.a6 = reduce_rat(E.a6, p);
    return R;
}

Point<Fp> reduce_point(const PointQ& P, std::uint64_t p) {
    if (P.infinity || mod_si(P.x.get_den(), p) == 0) return Point<Fp>::at_infinity();
    return Point<Fp>::affine(reduce_rat(P.x, p), reduce_rat(P.y, p));
}

std::uint64_t count_points(const CurveQ& E, std::uint64_t p) {
    if (p < 3) throw DomainError("count_points: p must be odd");
    const auto c = [&](const Rat& r) { return static_cast<std::uint64_t>(mod_si(r.get_num(), p)); };
    const std::uint64_t b2 = c(E.b2()), b4 = c(E.b4()), b6 = c(E.b6());
    std::vector<std::int8_t> chi(p, -1);
    chi[0] = 0;
    for (std::uint64_t r = 1; r <= (p - 1) / 2; ++r) chi[r * r % p] = 1;
    long long sum = 0;
    const std::uint64_t c2 = b2 % p, c1 = 2 * b4 % p;
    for (std::uint64_t x = 0; x < p; ++x) {
        const std::uint64_t v = ((((4 * x + c2) % p) * x + c1) % p * x + b6) % p;
        sum += chi[v];
    }
    return static_cast<std::uint64_t>(static_cast<long long>(p) + 1 + sum);
}

ModularFunctionals::ModularFunctionals(const CurveQ& E, std::size_t initial) : E_(E), disc_(E.discriminant().get_num()) {
    for (const Rat* a : {&E.a1, &E.a2, &E.a3, &E.a4, &E.a6})
        if (a->get_den() != 1) throw DomainError("ModularFunctionals: model must be integral");
    extend(initial);
}

const std::vector<std::uint64_t> ModularFunctionals::primes() const {
    std::vector<std::uint64_t> out;
    for (const auto& l : locals_) out.push_back(l.p);
    return out;
}

namespace {

Point<Fp> lift_x(const Weierstrass<Fp>& C, std::uint64_t x) {
    const std::uint64_t p = Fp::modulus();
    const Fp X = Fp::raw(x);
    const Fp disc = C.two_division(X);
    if (legendre(static_cast<std::int64_t>(disc.value()), p) < 0) return Point<Fp>::at_infinity();
    const Fp s = Fp::raw(disc.value() == 0 ? 0 : sqrt_mod(disc.value(), p));
    return Point<Fp>::affine(X, (s - C.a1 * X - C.a3) / Fp(2L));
}

int order_exponent5(const Weierstrass<Fp>& C, Point<Fp> Q) {
    int e = 0;
    while (!Q.infinity) {
        Q = multiply(C, 5, Q);
        ++e;
    }
    return e;
}

}  // namespace

void ModularFunctionals::extend(std::size_t count) {
    const std::size_t target = locals_.size() + count;
    while (locals_.size() < target) {
        const std::uint64_t p = next_++;
        if (!is_prime_u64(p) || mod_si(disc_, p) == 0) continue;
        std::uint64_t n = count_points(E_, p);
        if (n % 5 != 0) continue;
        int k = 0;
        while (n % 5 == 0) {
            n /= 5;
            ++k;
        }
        FpScope scope(p);
        Local l{p, n, 1, 0, reduce_curve(E_, p), Point<Fp>::at_infinity(), Point<Fp>::at_infinity()};
        const auto& C = l.curve;
        // The 5-Sylow subgroup is used when it is cyclic or exactly (Z/5)^2.
        Point<Fp> T1 = Point<Fp>::at_infinity(), T2 = T1;
        for (std::uint64_t x = 0, tried = 0; x < p && tried < 400; ++x) {
            const Point<Fp> P = lift_x(C, x);
            if (P.infinity) continue;
            ++tried;
            const Point<Fp> Q = multiply(C, static_cast<long>(l.cofactor), P);
            const int e = order_exponent5(C, Q);
            if (e == k) {
                l.dim = 1;
                l.shift = 1;
                for (int i = 1; i < k; ++i) l.shift *= 5;
                l.generator = multiply(C, static_cast<long>(l.shift), Q);
                break;
            }
            if (k != 2 || e != 1) continue;
            if (T1.infinity) {
                T1 = Q;
                continue;
            }
            bool in_span = false;
            Point<Fp> m = Point<Fp>::at_infinity();
            for (int i = 0; i < 5 && !in_span; ++i, m = add(C, m, T1)) in_span = m == Q;
            if (!in_span) {
                T2 = Q;
                l.dim = 2;
                l.shift = 1;
                l.generator = T1;
                l.second = T2;
                break;
            }
        }
        if (l.dim == 0) continue;
        locals_.push_back(std::move(l));
    }
}

std::size_t ModularFunctionals::width() const {
    std::size_t w = 0;
    for (const auto& l : locals_) w += static_cast<std::size_t>(l.dim);
    return w;
}

F5Row ModularFunctionals::row(const PointQ& P) const {
    F5Row out;
    out.reserve(width());
    for (const auto& l : locals_) {
        FpScope scope(l.p);
        const Point<Fp> Q = multiply(l.curve, static_cast<long>(l.cofactor * l.shift), reduce_point(P, l.p));
        bool found = false;
        Point<Fp> a = Point<Fp>::at_infinity();
        for (std::uint8_t i = 0; i < 5 && !found; ++i, a = add(l.curve, a, l.generator)) {
            if (l.dim == 1) {
                if (a == Q) {
                    out.push_back(i);
                    found = true;
                }
                continue;
            }
            Point<Fp> b = a;
            for (std::uint8_t j = 0; j < 5; ++j, b = add(l.curve, b, l.second)) {
                if (b == Q) {
                    out.push_back(i);
                    out.push_back(j);
                    found = true;
                    break;
                }
            }
        }
        if (!found) throw InconsistencyError("ModularFunctionals: image outside the 5-torsion");
    }
    return out;
}

FiveDivider::FiveDivider(const CurveQ& E) : E_(E), phi5_(phi5(E)) {
    const QPoly p5 = psi5(E);
    psi5sq_ = p5 * p5;
}

std::optional<PointQ> FiveDivider::divide(const PointQ& P) const {
    if (P.infinity) return P;
    const QPoly f = phi5_ - P.x * psi5sq_;
    for (const Rat& x : rational_roots(f)) {
        const Rat disc = E_.two_division(x);
        Rat s;
        if (!rational_sqrt(disc, s)) continue;
        for (const Rat& sign : {Rat(-1), Rat(1)}) {
            const PointQ R = PointQ::affine(x, (sign * s - E_.a1 * x - E_.a3) / 2);
            if (multiply(E_, 5, R) == P) return R;
        }
    }
    return std::nullopt;
}

SaturationResult saturate_at_5(const CurveQ& E, const std::vector<PointQ>& points, const std::vector<PointQ>& torsion) {
    ModularFunctionals fn(E);
    FiveDivider div(E);
    return saturate_at_5(E, points, torsion, fn, div);
}

SaturationResult saturate_at_5(const CurveQ& E, const std::vector<PointQ>& points, const std::vector<PointQ>& torsion,
                               ModularFunctionals& fn, const FiveDivider& div) {
    SaturationResult res;
    std::vector<PointQ> gens = torsion;  // torsion generators first, then free basis
    const std::size_t nt = torsion.size();
    auto rows_of = [&] {
        std::vector<F5Row> rows;
        for (const auto& G : gens) rows.push_back(fn.row(G));
        return rows;
    };
    std::vector<F5Row> rows = rows_of();
    while (f5_rank(F5Matrix{rows}) != static_cast<int>(rows.size())) {
        if (fn.size() >= kMaxPrimes) throw InconsistencyError("saturate_at_5: torsion generators are dependent mod 5");
        fn.extend(fn.size());
        rows = rows_of();
    }

    const auto is_torsion = [&](const PointQ& X) { return X.infinity || torsion_order(E, X, 12) != 0; };
    for (const PointQ& input : points) {
        PointQ Q = input;
        // Points met along the division chain. A repeat up to sign and torsion
        // means (5^k - 1) Q lies in the current lattice: Q adds nothing at 5.
        std::vector<PointQ> chain{Q};
        for (int guard = 0;; ++guard) {
            if (guard > 500) throw InconsistencyError("saturate_at_5: descent did not terminate");
            if (is_torsion(Q)) break;
            const F5Row r = fn.row(Q);
            const auto coeff = f5_solve(rows, r);
            if (!coeff) {
                gens.push_back(Q);
                rows.push_back(r);
                break;
            }
            // Balanced coefficients: a point of the lattice then has strictly
            // shrinking coordinates along the divisions and ends in torsion.
            PointQ Qp = Q;
            for (std::size_t i = 0; i < gens.size(); ++i) {
                const int c = (*coeff)[i] > 2 ? (*coeff)[i] - 5 : (*coeff)[i];
                if (c) Qp = subtract(E, Qp, multiply(E, c, gens[i]));
            }
            if (is_torsion(Qp)) break;
            if (auto R = div.divide(Qp)) {
                Q = *R;
                if (std::any_of(chain.begin(), chain.end(),
                                [&](const PointQ& C) { return is_torsion(subtract(E, Q, C)) || is_torsion(add(E, Q, C)); }))
                    break;
                chain.push_back(Q);
                continue;
            }
            if (fn.size() >= kMaxPrimes) throw InconsistencyError("saturate_at_5: functionals fail to separate a non-divisible point");
            fn.extend(fn.size());
            rows = rows_of();
        }
    }
    res.basis.assign(gens.begin() + static_cast<std::ptrdiff_t>(nt), gens.end());
    res.rows = rows;
    res.primes_used = static_cast<int>(fn.size());
    return res;
}

}  // namespace sha5
