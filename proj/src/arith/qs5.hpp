#pragma once

#include "arith/bigint.hpp"
#include "arith/f5.hpp"

#include <cstdint>
#include <vector>

namespace sha5 {

using PrimeList = std::vector<std::uint64_t>;

/// Class in Q(S,5): exponents mod 5 at the primes of S (sorted ascending).
struct QS5Vector {
    PrimeList support;
    F5Row exponents;

    bool is_zero() const;
    bool operator==(const QS5Vector&) const = default;
};

/// Valuations of x at S, reduced mod 5. Throws InconsistencyError if x has
/// a prime outside S whose valuation is not divisible by 5.
QS5Vector qs5_class(const Rat& x, const PrimeList& S);

/// Exponent row of v re-expressed over a larger sorted prime list.
F5Row qs5_row_over(const QS5Vector& v, const PrimeList& columns);

}  // namespace sha5
