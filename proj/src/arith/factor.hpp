#pragma once

#include "arith/bigint.hpp"

#include <utility>
#include <vector>

namespace sha5 {

/// Prime factorization of |n|, primes strictly increasing.
struct PrimeFactorization {
    std::vector<std::pair<Int, unsigned>> factors;

    Int product() const;
    std::vector<Int> primes() const;
};

/// Trial division up to 10^6, then Pollard rho (Brent) on the cofactor.
/// Throws DomainError for n = 0.
PrimeFactorization factorize(const Int& n);

/// Probabilistic primality (Miller-Rabin, 40 rounds via GMP).
bool is_probable_prime(const Int& n);

}  // namespace sha5
