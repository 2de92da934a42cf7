#include "pipeline/step0.hpp"

#include "arith/primes.hpp"
#include "cyclo/cyclo.hpp"

#include <sstream>

namespace sha5 {

std::string step0_tables(std::uint32_t max_prime) {
    std::ostringstream out;
    out << "# sha5-step0 1 max-prime " << max_prime << '\n';
    for (std::uint32_t p : primes_up_to(max_prime))
        for (const auto& g : prime_generators(p)) {
            out << "G " << p << ' ' << g.residue_degree << ' ' << g.index << ' ' << g.label;
            for (const auto& c : g.generator.coeffs()) out << ' ' << c.get_str();
            out << '\n';
        }
    for (const auto& a : UnitCharacters::standard().aux())
        out << "A " << a.lambda << ' ' << a.root << ' ' << int(a.chi_zeta) << ' ' << int(a.chi_one_plus_zeta) << '\n';
    return out.str();
}

}  // namespace sha5
