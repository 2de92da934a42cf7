#pragma once

#include <cstdint>
#include <vector>

namespace sha5 {

/// Primes up to `limit` inclusive (plain Eratosthenes).
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

/// Deterministic for 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// Legendre symbol (a/p) for odd prime p, returns -1, 0 or 1.
int legendre(std::int64_t a, std::uint64_t p);

/// Square root of a quadratic residue modulo an odd prime (Tonelli-Shanks).
std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p);

}  // namespace sha5
