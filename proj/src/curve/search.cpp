#include "curve/search.hpp"

#include "arith/primes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>

namespace sha5 {

namespace {

constexpr std::array<unsigned, 16> kSieve{3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59};

struct Cubic {
    double c3, c2, c1, c0;
    double operator()(double x) const { return ((c3 * x + c2) * x + c1) * x + c0; }
};

double bisect(const Cubic& f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Intervals of x where 4x^3 + b2 x^2 + 2 b4 x + b6 >= 0, as (lo, hi) with hi = +inf for the last.
std::vector<std::pair<double, double>> nonnegative_intervals(const CurveQ& E) {
    const Cubic f{4.0, E.b2().get_d(), 2.0 * E.b4().get_d(), E.b6().get_d()};
    const double big = 1e30;
    std::vector<double> roots;
    // critical points of f: 12x^2 + 2 c2 x + c1
    const double A = 12.0, B = 2.0 * f.c2, C = f.c1;
    const double disc = B * B - 4 * A * C;
    double lo = -1.0;
    while (f(lo) > 0) lo *= 2;
    double hi = 1.0;
    while (f(hi) < 0) hi *= 2;
    if (disc <= 0) {
        roots.push_back(bisect(f, lo, hi));
    } else {
        const double s = std::sqrt(disc);
        const double m1 = (-B - s) / (2 * A), m2 = (-B + s) / (2 * A);
        const double f1 = f(m1), f2 = f(m2);
        if (f1 > 0 && f2 < 0) {
            roots.push_back(bisect(f, std::min(lo, m1), m1));
            roots.push_back(bisect(f, m1, m2));
            roots.push_back(bisect(f, m2, std::max(hi, m2)));
        } else if (f2 >= 0) {
            roots.push_back(bisect(f, std::min(lo, m1), std::min(m1, m2)));
        } else {
            roots.push_back(bisect(f, std::max(m1, m2), std::max(hi, m2)));
        }
    }
    if (roots.size() == 3) return {{roots[0], roots[1]}, {roots[2], big}};
    return {{roots[0], big}};
}

// Bit j of pattern[s] is set when a = s + j (mod q) makes G(a,b) a square mod q.
struct SievePrime {
    unsigned q;
    std::vector<bool> square;
    std::vector<std::uint64_t> pattern;
};

}  // namespace

bool point_search_visit(const CurveQ& E, std::uint64_t H, const std::function<bool(const PointQ&)>& visit) {
    const Int b2 = E.b2().get_num(), b4 = E.b4().get_num(), b6 = E.b6().get_num();
    if (E.b2().get_den() != 1 || E.b4().get_den() != 1 || E.b6().get_den() != 1)
        throw DomainError("point_search: model must be integral");
    const auto intervals = nonnegative_intervals(E);

    std::vector<SievePrime> sp;
    for (unsigned q : kSieve) {
        SievePrime s{q, std::vector<bool>(q, false), std::vector<std::uint64_t>(q, 0)};
        for (unsigned r = 0; r < q; ++r) s.square[r * r % q] = true;
        sp.push_back(std::move(s));
    }
    const auto Hd = static_cast<double>(H);
    const std::int64_t Hi = static_cast<std::int64_t>(H);
    const auto bmax = static_cast<std::uint64_t>(std::sqrt(Hd) + 1e-9);

    Int G, root;
    for (std::uint64_t b = 1; b <= bmax; ++b) {
        if (b * b > H) break;
        const Int B(static_cast<unsigned long>(b));
        const Int B2 = B * B, B4 = B2 * B2, B6 = B4 * B2;
        const Int k2 = b2 * B2, k1 = 2 * b4 * B4, k0 = b6 * B6;
        // G(a) = 4a^3 + k2 a^2 + k1 a + k0
        for (auto& s : sp) {
            const unsigned q = s.q;
            const long m2 = mod_si(k2, q), m1 = mod_si(k1, q), m0 = mod_si(k0, q);
            std::vector<bool> ok(q);
            for (unsigned a = 0; a < q; ++a) {
                const long A = a;
                const long g = ((((4 * A + m2) % q) * A + m1) % q * A + m0) % q;
                ok[a] = s.square[static_cast<std::size_t>(g)];
            }
            for (unsigned st = 0; st < q; ++st) {
                std::uint64_t w = 0;
                for (unsigned j = 0; j < 64; ++j)
                    if (ok[(st + j) % q]) w |= (std::uint64_t{1} << j);
                s.pattern[st] = w;
            }
        }
        const double bb = static_cast<double>(b) * static_cast<double>(b);
        std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
        for (const auto& [xlo, xhi] : intervals) {
            const double alo = std::max(-Hd, std::floor(xlo * bb - 1 - 1e-9 * std::abs(xlo * bb)));
            const double ahi = std::min(Hd, std::ceil(xhi * bb + 1 + 1e-9 * std::abs(xhi * bb)));
            if (alo > ahi) continue;
            const auto lo = static_cast<std::int64_t>(alo);
            const auto hi = std::min<std::int64_t>(Hi, static_cast<std::int64_t>(ahi));
            if (!ranges.empty() && lo <= ranges.back().second + 1)
                ranges.back().second = std::max(ranges.back().second, hi);
            else
                ranges.emplace_back(lo, hi);
        }
        for (const auto& [lo, a1] : ranges) {
            std::int64_t a0 = lo;
            std::vector<unsigned> off;
            off.reserve(sp.size());
            for (const auto& s : sp) off.push_back(static_cast<unsigned>(((a0 % static_cast<std::int64_t>(s.q)) + s.q) % s.q));
            for (; a0 <= a1; a0 += 64) {
                std::uint64_t w = ~std::uint64_t{0};
                for (std::size_t i = 0; i < sp.size(); ++i) {
                    w &= sp[i].pattern[off[i]];
                    off[i] = (off[i] + 64) % sp[i].q;
                }
                if (a1 - a0 < 63) w &= (std::uint64_t{1} << (a1 - a0 + 1)) - 1;
                while (w) {
                    const int j = __builtin_ctzll(w);
                    w &= w - 1;
                    const std::int64_t a = a0 + j;
                    if (std::gcd(static_cast<std::uint64_t>(a < 0 ? -a : a), b) != 1) continue;
                    const Int A(static_cast<long>(a));
                    G = ((4 * A + k2) * A + k1) * A + k0;
                    if (sgn(G) < 0 || !mpz_perfect_square_p(G.get_mpz_t())) continue;
                    mpz_sqrt(root.get_mpz_t(), G.get_mpz_t());
                    const Rat x(A, B2);
                    // y = (-(a1 x + a3) +- sqrt(G)/b^3) / 2
                    const Rat base = -(E.a1 * x + E.a3);
                    const Rat s = make_rat(root, B2 * B);
                    const PointQ P1 = PointQ::affine(x, (base - s) / 2);
                    if (!visit(P1)) return false;
                    if (sgn(root) != 0) {
                        const PointQ P2 = PointQ::affine(x, (base + s) / 2);
                        if (!visit(P2)) return false;
                    }
                }
            }
        }
    }
    return true;
}

std::vector<PointQ> point_search(const CurveQ& E, std::uint64_t H, const std::vector<PointQ>& torsion) {
    std::set<Rat> torsion_x, seen_x;
    for (const auto& T : torsion)
        if (!T.infinity) torsion_x.insert(T.x);
    std::vector<PointQ> out;
    point_search_visit(E, H, [&](const PointQ& P) {
        if (torsion_x.count(P.x) || seen_x.count(P.x)) return true;
        if (torsion_order(E, P, 12) != 0) return true;
        out.push_back(P);
        seen_x.insert(P.x);
        for (const auto& T : torsion) {
            const PointQ Q = add(E, P, T);
            if (!Q.infinity) seen_x.insert(Q.x);
        }
        return true;
    });
    return out;
}

}  // namespace sha5
