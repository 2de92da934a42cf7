#include "arith/factor.hpp"

#include "arith/primes.hpp"

#include <algorithm>
#include <map>

namespace sha5 {

namespace {

constexpr std::uint32_t kTrialLimit = 1000000;

const std::vector<std::uint32_t>& trial_primes() {
    static const std::vector<std::uint32_t> primes = primes_up_to(kTrialLimit);
    return primes;
}

// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
Int pollard_brent(const Int& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        Int y = 2, x, g = 1, q = 1, ys;
        unsigned long r = 1;
        const unsigned long m = 128;
        auto f = [&](const Int& v) {
            Int t = v * v + c;
            mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
            return t;
        };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    Int diff = abs(x - y);
                    q = q * diff;
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                Int diff = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split(const Int& n, std::map<Int, unsigned>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    Int d = pollard_brent(n);
    split(d, out);
    split(Int(n / d), out);
}

}  // namespace

bool is_probable_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0; }

Int PrimeFactorization::product() const {
    Int r = 1;
    for (const auto& [p, e] : factors) r *= pow_int(p, e);
    return r;
}

std::vector<Int> PrimeFactorization::primes() const {
    std::vector<Int> out;
    out.reserve(factors.size());
    for (const auto& f : factors) out.push_back(f.first);
    return out;
}

PrimeFactorization factorize(const Int& n) {
    if (n == 0) throw DomainError("factorize: zero has no factorization");
    Int m = abs(n);
    std::map<Int, unsigned> acc;
    for (std::uint32_t p : trial_primes()) {
        if (m == 1) break;
        if (Int(p) * p > m) break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
                ++e;
            }
            acc[Int(p)] += e;
        }
    }
    if (m != 1) {
        if (m < Int(static_cast<unsigned long>(kTrialLimit)) * kTrialLimit)
            ++acc[m];
        else
            split(m, acc);
    }
    PrimeFactorization out;
    for (auto& [p, e] : acc) out.factors.emplace_back(p, e);
    return out;
}

}  // namespace sha5
