#include "cyclo/cyclo.hpp"

#include "arith/primes.hpp"

#include <algorithm>
#include <sstream>

namespace sha5 {

// ---------------------------------------------------------------- arithmetic

CycloElement CycloElement::from_five(std::array<Rat, 5> c) {
    // z^4 = -1 - z - z^2 - z^3
    return CycloElement(std::array<Rat, 4>{c[0] - c[4], c[1] - c[4], c[2] - c[4], c[3] - c[4]});
}

CycloElement CycloElement::zeta() { return CycloElement(std::array<Rat, 4>{Rat(0), Rat(1), Rat(0), Rat(0)}); }

CycloElement CycloElement::sqrt5() { return CycloElement(std::array<Rat, 4>{Rat(-1), Rat(0), Rat(-2), Rat(-2)}); }

bool CycloElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& x) { return sgn(x) == 0; });
}

bool CycloElement::is_rational() const { return sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0; }

bool CycloElement::is_integral() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& x) { return x.get_den() == 1; });
}

CycloElement CycloElement::galois(int k) const {
    std::array<Rat, 5> out{Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)};
    for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>((i * k) % 5)] += c_[static_cast<std::size_t>(i)];
    return from_five(out);
}

Rat CycloElement::norm() const {
    CycloElement p = (*this) * galois(2) * galois(3) * galois(4);
    return p.c_[0];
}

CycloElement CycloElement::inverse() const {
    if (is_zero()) throw DomainError("CycloElement: inverse of zero");
    CycloElement rest = galois(2) * galois(3) * galois(4);
    const Rat n = ((*this) * rest).c_[0];
    for (auto& x : rest.c_) x /= n;
    return rest;
}

Int CycloElement::denominator() const {
    Int d = 1;
    for (const auto& x : c_) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den().get_mpz_t());
    return d;
}

std::string CycloElement::to_string() const {
    std::ostringstream os;
    os << c_[0].get_str() << ' ' << c_[1].get_str() << ' ' << c_[2].get_str() << ' ' << c_[3].get_str();
    return os.str();
}

CycloElement operator+(const CycloElement& a, const CycloElement& b) {
    return CycloElement(std::array<Rat, 4>{a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2], a.c_[3] + b.c_[3]});
}

CycloElement operator-(const CycloElement& a, const CycloElement& b) {
    return CycloElement(std::array<Rat, 4>{a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2], a.c_[3] - b.c_[3]});
}

CycloElement operator-(const CycloElement& a) {
    return CycloElement(std::array<Rat, 4>{-a.c_[0], -a.c_[1], -a.c_[2], -a.c_[3]});
}

CycloElement operator*(const CycloElement& a, const CycloElement& b) {
    if (a.is_rational()) {
        CycloElement r = b;
        for (auto& x : r.c_) x *= a.c_[0];
        return r;
    }
    if (b.is_rational()) {
        CycloElement r = a;
        for (auto& x : r.c_) x *= b.c_[0];
        return r;
    }
    std::array<Rat, 5> out{Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)};
    for (int i = 0; i < 4; ++i) {
        if (sgn(a.c_[static_cast<std::size_t>(i)]) == 0) continue;
        for (int j = 0; j < 4; ++j) out[static_cast<std::size_t>((i + j) % 5)] += a.c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(j)];
    }
    return CycloElement::from_five(out);
}

CycloElement pow(const CycloElement& b, unsigned long e) {
    CycloElement r(1L), base = b;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------- square roots

namespace {

// a + b*sqrt5 from an element of the real quadratic subfield.
bool as_quadratic(const CycloElement& x, Rat& a, Rat& b) {
    // a + b*sqrt5 = (a - b) - 2b z^2 - 2b z^3
    if (sgn(x[1]) != 0 || x[2] != x[3]) return false;
    b = -x[2] / 2;
    a = x[0] + b;
    return true;
}

CycloElement from_quadratic(const Rat& a, const Rat& b) { return CycloElement(a) + CycloElement(b) * CycloElement::sqrt5(); }

bool sqrt_quadratic(const Rat& a, const Rat& b, CycloElement& out) {
    if (sgn(b) == 0) {
        Rat s;
        if (rational_sqrt(a, s)) {
            out = CycloElement(s);
            return true;
        }
        if (rational_sqrt(a / 5, s)) {
            out = from_quadratic(0, s);
            return true;
        }
        return false;
    }
    Rat n;
    if (!rational_sqrt(a * a - 5 * b * b, n)) return false;
    for (const Rat& cand : {Rat((a + n) / 2), Rat((a - n) / 2)}) {
        Rat c;
        if (sgn(cand) == 0 || !rational_sqrt(cand, c)) continue;
        const Rat e = b / (2 * c);
        out = from_quadratic(c, e);
        return true;
    }
    return false;
}

}  // namespace

std::optional<CycloElement> sqrt_in_cyclo(const CycloElement& delta) {
    if (delta.is_zero()) return CycloElement(0L);
    Rat a, b;
    if (!as_quadratic(delta, a, b)) throw DomainError("sqrt_in_cyclo: argument not in Q(sqrt5)");
    CycloElement r;
    if (sqrt_quadratic(a, b, r)) return r;
    // K = Q(sqrt5)(w), w = z - z^4, w^2 = (-5 - sqrt5)/2
    const CycloElement w = CycloElement::zeta() - pow(CycloElement::zeta(), 4);
    const CycloElement q = delta / (w * w);
    if (!as_quadratic(q, a, b)) throw InconsistencyError("sqrt_in_cyclo: quotient left the real subfield");
    if (sqrt_quadratic(a, b, r)) return r * w;
    return std::nullopt;
}

// ---------------------------------------------------------------- primes

SplittingType splitting_type(std::uint64_t p) {
    if (p == 5) return {1, 1, true};
    int f = 1;
    std::uint64_t x = p % 5;
    while (x != 1) {
        x = x * (p % 5) % 5;
        ++f;
    }
    return {f, 4 / f, false};
}

namespace {

using IVec = std::array<Int, 4>;

CycloElement to_cyclo(const IVec& v) { return CycloElement(std::array<Rat, 4>{Rat(v[0]), Rat(v[1]), Rat(v[2]), Rat(v[3])}); }

Rat dot(const std::array<Rat, 4>& a, const std::array<Rat, 4>& b) {
    Rat s = 0;
    for (int i = 0; i < 4; ++i) s += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
    return s;
}

// Textbook exact LLL with delta = 3/4 on four integer vectors.
void lll(std::array<IVec, 4>& b) {
    const Rat delta(3, 4);
    auto gso = [&](std::array<std::array<Rat, 4>, 4>& bs, std::array<std::array<Rat, 4>, 4>& mu, std::array<Rat, 4>& nrm) {
        for (int i = 0; i < 4; ++i) {
            for (int k = 0; k < 4; ++k) bs[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = Rat(b[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
            for (int j = 0; j < i; ++j) {
                std::array<Rat, 4> bi;
                for (int k = 0; k < 4; ++k) bi[static_cast<std::size_t>(k)] = Rat(b[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
                mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = dot(bi, bs[static_cast<std::size_t>(j)]) / nrm[static_cast<std::size_t>(j)];
                for (int k = 0; k < 4; ++k)
                    bs[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] -= mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * bs[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            }
            nrm[static_cast<std::size_t>(i)] = dot(bs[static_cast<std::size_t>(i)], bs[static_cast<std::size_t>(i)]);
        }
    };
    std::array<std::array<Rat, 4>, 4> bs, mu;
    std::array<Rat, 4> nrm;
    gso(bs, mu, nrm);
    std::size_t k = 1;
    while (k < 4) {
        for (std::size_t j = k; j-- > 0;) {
            const Rat m = mu[k][j];
            // nearest integer
            Rat twice = 2 * m + 1;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), twice.get_num().get_mpz_t(), Int(2 * twice.get_den()).get_mpz_t());
            if (q != 0) {
                for (int c = 0; c < 4; ++c) b[k][static_cast<std::size_t>(c)] -= q * b[j][static_cast<std::size_t>(c)];
                gso(bs, mu, nrm);
            }
        }
        if (nrm[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * nrm[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gso(bs, mu, nrm);
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
}

std::vector<std::uint64_t> fifth_roots_of_unity(std::uint64_t p) {
    std::uint64_t g = 0;
    for (std::uint64_t a = 2;; ++a) {
        g = powmod(a, (p - 1) / 5, p);
        if (g != 1) break;
    }
    std::vector<std::uint64_t> r;
    std::uint64_t x = g;
    for (int i = 0; i < 4; ++i) {
        r.push_back(x);
        x = mulmod(x, g, p);
    }
    std::sort(r.begin(), r.end());
    return r;
}

CycloElement short_generator(std::array<IVec, 4> basis, const Int& target_norm) {
    lll(basis);
    for (int bound = 1; bound <= 12; ++bound) {
        std::array<int, 4> k{};
        for (k[0] = -bound; k[0] <= bound; ++k[0])
            for (k[1] = -bound; k[1] <= bound; ++k[1])
                for (k[2] = -bound; k[2] <= bound; ++k[2])
                    for (k[3] = -bound; k[3] <= bound; ++k[3]) {
                        const int m = std::max({std::abs(k[0]), std::abs(k[1]), std::abs(k[2]), std::abs(k[3])});
                        if (m != bound) continue;
                        IVec v{Int(0), Int(0), Int(0), Int(0)};
                        for (int i = 0; i < 4; ++i)
                            for (int c = 0; c < 4; ++c) v[static_cast<std::size_t>(c)] += k[static_cast<std::size_t>(i)] * basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
                        const CycloElement e = to_cyclo(v);
                        if (e.is_zero()) continue;
                        if (e.norm() == Rat(target_norm)) return e;
                    }
    }
    throw InconsistencyError("prime_generators: no generator found within enumeration radius");
}

// Rescales the last generator by a unit so the generators multiply to p exactly.
void normalize_product(std::vector<PrimeIdealGen>& gens, const Int& p) {
    CycloElement prod(1L);
    for (const auto& g : gens) prod = prod * g.generator;
    const CycloElement unit = prod / CycloElement(Rat(p));
    gens.back().generator = gens.back().generator / unit;
    if (!gens.back().generator.is_integral()) throw InconsistencyError("prime_generators: product is not p times a unit");
}

}  // namespace

std::vector<PrimeIdealGen> prime_generators(std::uint64_t p) {
    if (!is_prime_u64(p)) throw DomainError("prime_generators: argument is not prime");
    const SplittingType st = splitting_type(p);
    std::vector<PrimeIdealGen> out;
    const Int P = from_u64(p);
    if (p == 5) {
        out.push_back({5, CycloElement(1L) - CycloElement::zeta(), 1, 0, 0});
        return out;
    }
    if (st.residue_degree == 4) {
        out.push_back({p, CycloElement(Rat(P)), 4, 0, 0});
        return out;
    }
    if (st.residue_degree == 1) {
        int idx = 0;
        for (std::uint64_t r : fifth_roots_of_unity(p)) {
            const Int r1 = from_u64(r);
            const Int r2 = from_u64(mulmod(r, r, p));
            const Int r3 = from_u64(mulmod(mulmod(r, r, p), r, p));
            std::array<IVec, 4> basis{IVec{P, Int(0), Int(0), Int(0)}, IVec{Int(P - r1), Int(1), Int(0), Int(0)},
                                      IVec{Int(P - r2), Int(0), Int(1), Int(0)}, IVec{Int(P - r3), Int(0), Int(0), Int(1)}};
            out.push_back({p, short_generator(basis, P), 1, idx++, r});
        }
        normalize_product(out, P);
        return out;
    }
    // residue degree 2: s = z + 1/z is a root of s^2 + s - 1 mod p
    std::vector<std::uint64_t> roots;
    const std::uint64_t sq5 = sqrt_mod(5, p);
    const std::uint64_t inv2 = invmod(2, p);
    roots.push_back(mulmod((p - 1 + sq5) % p, inv2, p));
    roots.push_back(mulmod((2 * p - 1 - sq5) % p, inv2, p));
    std::sort(roots.begin(), roots.end());
    int idx = 0;
    for (std::uint64_t s : roots) {
        // z^2 = s z - 1, z^3 = (s^2 - 1) z - s ; ideal = {c : c0 - c2 - s c3 = 0, c1 + s c2 + (s^2-1) c3 = 0}
        const std::uint64_t s2m1 = (mulmod(s, s, p) + p - 1) % p;
        std::array<IVec, 4> basis{IVec{P, Int(0), Int(0), Int(0)}, IVec{Int(0), P, Int(0), Int(0)},
                                  IVec{Int(1), from_u64((p - s) % p), Int(1), Int(0)},
                                  IVec{from_u64(s), from_u64((p - s2m1) % p), Int(0), Int(1)}};
        out.push_back({p, short_generator(basis, Int(P * P)), 2, idx++, s});
    }
    normalize_product(out, P);
    return out;
}

// ---------------------------------------------------------------- valuations

namespace {

int ramification(std::uint64_t p) { return p == 5 ? 4 : 1; }

struct DivisionHelper {
    CycloElement cofactor;  // N(t)/t, integral
    Int norm;
};

DivisionHelper division_helper(const PrimeIdealGen& t) {
    DivisionHelper h;
    h.cofactor = t.generator.galois(2) * t.generator.galois(3) * t.generator.galois(4);
    h.norm = (t.generator * h.cofactor)[0].get_num();
    if (h.norm < 0) {
        h.norm = -h.norm;
        h.cofactor = -h.cofactor;
    }
    return h;
}

// Divides the integral element a by t as long as possible.
int strip_integral(std::array<Int, 4>& a, const DivisionHelper& h) {
    int v = 0;
    for (;;) {
        std::array<Rat, 4> ar{Rat(a[0]), Rat(a[1]), Rat(a[2]), Rat(a[3])};
        const CycloElement prod = CycloElement(ar) * h.cofactor;
        std::array<Int, 4> next;
        for (std::size_t i = 0; i < 4; ++i) {
            const Int& c = prod[i].get_num();
            if (!mpz_divisible_p(c.get_mpz_t(), h.norm.get_mpz_t())) return v;
            next[i] = c / h.norm;
        }
        a = next;
        ++v;
    }
}

}  // namespace

int valuation_at(const CycloElement& x, const PrimeIdealGen& t) {
    if (x.is_zero()) throw DomainError("valuation_at: zero");
    const Int den = x.denominator();
    std::array<Int, 4> a;
    for (std::size_t i = 0; i < 4; ++i) a[i] = x[i].get_num() * (den / x[i].get_den());
    Int content = 0;
    for (const auto& c : a) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
    const std::uint64_t p = t.rational_prime;
    const int e = ramification(p);
    int v = e * (valuation(content, p) - valuation(den, p));
    v += strip_integral(a, division_helper(t));
    return v;
}

// ---------------------------------------------------------------- unit characters

UnitCharacters::UnitCharacters(std::size_t count, std::uint64_t floor) {
    std::uint64_t lam = floor + 1;
    while (aux_.size() < count) {
        if (lam % 5 == 1 && is_prime_u64(lam)) {
            const std::uint64_t root = fifth_roots_of_unity(lam).front();
            Aux a{lam, root, 0, 0};
            aux_.push_back(a);
            auto cz = character(CycloElement::zeta(), aux_.back());
            auto c1 = character(CycloElement(1L) + CycloElement::zeta(), aux_.back());
            aux_.back().chi_zeta = cz.value();
            aux_.back().chi_one_plus_zeta = c1.value();
        }
        ++lam;
    }
}

const UnitCharacters& UnitCharacters::standard() {
    static const UnitCharacters chars;
    return chars;
}

std::optional<std::uint8_t> UnitCharacters::character(const CycloElement& x, const Aux& a) const {
    const std::uint64_t lam = a.lambda;
    const Int den = x.denominator();
    if (mod_si(den, lam) == 0) return std::nullopt;
    std::uint64_t acc = 0;
    std::uint64_t rp = 1;
    for (std::size_t i = 0; i < 4; ++i) {
        const Int c = x[i].get_num() * (den / x[i].get_den());
        acc = (acc + mulmod(static_cast<std::uint64_t>(mod_si(c, lam)), rp, lam)) % lam;
        rp = mulmod(rp, a.root, lam);
    }
    if (acc == 0) return std::nullopt;
    const std::uint64_t d = static_cast<std::uint64_t>(mod_si(den, lam));
    const std::uint64_t val = mulmod(acc, invmod(d, lam), lam);
    const std::uint64_t chi = powmod(val, (lam - 1) / 5, lam);
    std::uint64_t g = 1;
    for (std::uint8_t k = 0; k < 5; ++k) {
        if (g == chi) return k;
        g = mulmod(g, a.root, lam);
    }
    throw InconsistencyError("UnitCharacters: character value is not a fifth root of unity");
}

namespace {

std::array<std::uint8_t, 2> solve_units(const std::vector<std::array<std::uint8_t, 3>>& eqs) {
    // rows (chi_zeta, chi_1pz | rhs)
    std::vector<F5Row> basis{F5Row{}, F5Row{}};
    F5Row rhs;
    for (const auto& e : eqs) {
        basis[0].push_back(e[0]);
        basis[1].push_back(e[1]);
        rhs.push_back(e[2]);
    }
    F5Matrix m{basis};
    if (f5_rank(m) < 2) throw DomainError("unit_class: fewer than two independent auxiliary characters");
    auto sol = f5_solve(basis, rhs);
    if (!sol) throw InconsistencyError("unit_class: element is not a unit times a fifth power");
    return {(*sol)[0], (*sol)[1]};
}

}  // namespace

std::array<std::uint8_t, 2> UnitCharacters::unit_class(const CycloElement& u) const {
    std::vector<std::array<std::uint8_t, 3>> eqs;
    for (const auto& a : aux_) {
        auto c = character(u, a);
        if (!c) continue;
        eqs.push_back({a.chi_zeta, a.chi_one_plus_zeta, *c});
    }
    return solve_units(eqs);
}

bool KS5Vector::is_zero() const {
    return unit_exponents[0] == 0 && unit_exponents[1] == 0 &&
           std::all_of(exponents.begin(), exponents.end(), [](std::uint8_t e) { return e == 0; });
}

KS5Vector ks5_class(const CycloElement& x, const std::vector<PrimeIdealGen>& S, const UnitCharacters& chars) {
    if (x.is_zero()) throw DomainError("ks5_class: zero");
    KS5Vector out;
    std::vector<int> vals;
    vals.reserve(S.size());
    for (const auto& t : S) {
        const int v = valuation_at(x, t);
        vals.push_back(v);
        out.support.emplace_back(t.rational_prime, t.index);
        out.exponents.push_back(f5(v));
    }
    // chi(x) - sum v chi(t) = a0 chi(z) + a1 chi(1+z)
    std::vector<std::array<std::uint8_t, 3>> eqs;
    for (const auto& a : chars.aux()) {
        auto cx = chars.character(x, a);
        if (!cx) continue;
        int rhs = *cx;
        bool ok = true;
        for (std::size_t i = 0; i < S.size() && ok; ++i) {
            if (out.exponents[i] == 0) continue;
            auto ct = chars.character(S[i].generator, a);
            if (!ct) {
                ok = false;
                break;
            }
            rhs -= out.exponents[i] * *ct;
        }
        if (!ok) continue;
        eqs.push_back({a.chi_zeta, a.chi_one_plus_zeta, f5(rhs)});
    }
    out.unit_exponents = solve_units(eqs);
    return out;
}

}  // namespace sha5
