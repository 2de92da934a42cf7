#pragma once

#include "arith/bigint.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace sha5::testgen {

/// Small deterministic generators shared by the property suites.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::int64_t range(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_); }
    std::uint64_t urange(std::uint64_t lo, std::uint64_t hi) { return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_); }
    bool coin() { return range(0, 1) == 1; }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(range(0, static_cast<std::int64_t>(v.size()) - 1))];
    }

    /// Nonzero rational built from primes of `support` with exponents in [-e, e].
    Rat supported_rat(const std::vector<std::uint64_t>& support, int e) {
        Rat x = coin() ? 1 : -1;
        for (auto p : support) {
            const long k = range(-e, e);
            x *= pow_rat(Rat(from_u64(p)), k);
        }
        return x;
    }

    /// Coprime pair with 1 <= u,v <= n.
    std::pair<long, long> coprime_pair(long n) {
        for (;;) {
            long u = range(1, n), v = range(1, n);
            if (std::gcd(u, v) == 1) return {u, v};
        }
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace sha5::testgen
