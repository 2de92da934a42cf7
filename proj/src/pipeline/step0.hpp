#pragma once

#include <cstdint>
#include <string>

namespace sha5 {

/// Generator table for the primes of K above every p <= max_prime, followed
/// by the auxiliary character primes. Text, one entry per line:
///   G p f index label c0 c1 c2 c3
///   A lambda root chi_zeta chi_one_plus_zeta
std::string step0_tables(std::uint32_t max_prime);

}  // namespace sha5
