#include "arith/poly.hpp"

#include "arith/primes.hpp"

#include <algorithm>

namespace sha5 {

namespace {

using ModPoly = std::vector<std::uint64_t>;

void trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly mod_reduce(const std::vector<Int>& f, std::uint64_t p) {
    ModPoly r;
    r.reserve(f.size());
    for (const auto& c : f) r.push_back(static_cast<std::uint64_t>(mod_si(c, p)));
    trim(r);
    return r;
}

ModPoly mod_rem(ModPoly a, const ModPoly& b, std::uint64_t p) {
    const std::uint64_t inv = invmod(b.back(), p);
    while (a.size() >= b.size()) {
        const std::uint64_t t = mulmod(a.back(), inv, p);
        const std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = (a[shift + j] + p - mulmod(t, b[j], p)) % p;
        trim(a);
    }
    return a;
}

int mod_gcd_degree(ModPoly a, ModPoly b, std::uint64_t p) {
    while (!b.empty()) {
        ModPoly r = mod_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return static_cast<int>(a.size()) - 1;
}

Int eval_int(const std::vector<Int>& f, const Int& x, const Int& m) {
    Int r = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) {
        r = r * x + *it;
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    }
    return r;
}

// Integer, primitive, nonzero constant term; squarefree on request.
std::vector<Int> prepare(const QPoly& f, bool& zero_root, bool squarefree) {
    QPoly g = f;
    zero_root = false;
    // strip factors of x
    while (!g.is_zero_poly() && is_zero(g.coeff(0))) {
        zero_root = true;
        std::vector<Rat> c(g.coeffs().begin() + 1, g.coeffs().end());
        g = QPoly(std::move(c));
    }
    if (squarefree && g.degree() >= 1) {
        QPoly d = QPoly::gcd(g, g.derivative());
        if (d.degree() > 0) g = QPoly::divmod(g, d).first;
    }
    Int den = 1;
    for (const auto& c : g.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Int> out;
    Int content = 0;
    for (const auto& c : g.coeffs()) {
        Int v = c.get_num() * (den / c.get_den());
        out.push_back(v);
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    }
    if (content != 0)
        for (auto& v : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), content.get_mpz_t());
    return out;
}

}  // namespace

bool rational_reconstruct(const Int& r, const Int& m, const Int& bound, Rat& out) {
    Int r0 = m, r1 = r;
    mpz_mod(r1.get_mpz_t(), r1.get_mpz_t(), m.get_mpz_t());
    Int t0 = 0, t1 = 1;
    while (r1 > bound) {
        Int q = r0 / r1;
        Int tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (t1 == 0 || abs(t1) > bound) return false;
    Int g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
    if (g != 1) return false;
    out = Rat(r1, t1);
    out.canonicalize();
    return true;
}

std::vector<Rat> rational_roots(const QPoly& f) {
    if (f.is_zero_poly()) throw DomainError("rational_roots: zero polynomial");
    bool zero_root = false;
    std::vector<Int> g = prepare(f, zero_root, false);
    std::vector<Rat> roots;
    if (zero_root) roots.emplace_back(0);
    const int deg = static_cast<int>(g.size()) - 1;
    if (deg >= 1) {
        std::vector<Int> dg;
        auto derive = [&] {
            dg.clear();
            for (std::size_t i = 1; i < g.size(); ++i) dg.push_back(g[i] * static_cast<unsigned long>(i));
        };
        derive();
        // find a prime of squarefree reduction; only a polynomial with repeated
        // factors exhausts the attempts, and then its squarefree part is used
        std::uint64_t p = 1009;
        int attempts = 0;
        for (;; p += 2) {
            if (!is_prime_u64(p)) continue;
            if (mod_si(g.back(), p) == 0) continue;
            if (++attempts > 40) {
                g = prepare(f, zero_root, true);
                derive();
                attempts = -1000000;
            }
            ModPoly fp = mod_reduce(g, p);
            ModPoly dp = mod_reduce(dg, p);
            if (dp.empty()) continue;
            if (mod_gcd_degree(fp, dp, p) == 0) break;
        }
        const Int bound = std::max(abs(g.front()), abs(g.back()));
        std::vector<std::uint64_t> base;
        const ModPoly fp = mod_reduce(g, p);
        for (std::uint64_t x = 0; x < p; ++x) {
            std::uint64_t r = 0;
            for (auto it = fp.rbegin(); it != fp.rend(); ++it) r = (mulmod(r, x, p) + *it) % p;
            if (r == 0) base.push_back(x);
        }
        const Int target = 2 * bound * bound + 1;
        for (std::uint64_t r0 : base) {
            Int x = from_u64(r0);
            Int m = from_u64(p);
            while (m < target) {
                m = m * m;
                Int fx = eval_int(g, x, m);
                Int dx = eval_int(dg, x, m);
                Int inv;
                if (mpz_invert(inv.get_mpz_t(), dx.get_mpz_t(), m.get_mpz_t()) == 0) break;
                x = x - fx * inv;
                mpz_mod(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
            }
            Rat cand;
            if (!rational_reconstruct(x, m, bound, cand)) continue;
            Rat val = 0;
            for (auto it = g.rbegin(); it != g.rend(); ++it) val = val * cand + Rat(*it);
            if (val == 0) roots.push_back(cand);
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace sha5
