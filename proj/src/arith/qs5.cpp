#include "arith/qs5.hpp"

#include <algorithm>

namespace sha5 {

namespace {

// Strips all factors of p from n (in place) and returns the exponent.
int strip(Int& n, std::uint64_t p) {
    int e = 0;
    const unsigned long pp = static_cast<unsigned long>(p);
    while (mpz_divisible_ui_p(n.get_mpz_t(), pp)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), pp);
        ++e;
    }
    return e;
}

bool is_fifth_power(const Int& n) {
    Int r;
    return mpz_root(r.get_mpz_t(), n.get_mpz_t(), 5) != 0;
}

}  // namespace

bool QS5Vector::is_zero() const {
    return std::all_of(exponents.begin(), exponents.end(), [](std::uint8_t e) { return e == 0; });
}

QS5Vector qs5_class(const Rat& x, const PrimeList& S) {
    if (x == 0) throw DomainError("qs5_class: zero has no class");
    if (!std::is_sorted(S.begin(), S.end())) throw DomainError("qs5_class: S must be sorted");
    Int num = abs(x.get_num());
    Int den = x.get_den();
    QS5Vector out;
    out.support = S;
    out.exponents.reserve(S.size());
    for (std::uint64_t p : S) {
        const int e = strip(num, p) - strip(den, p);
        out.exponents.push_back(f5(e));
    }
    if (!is_fifth_power(num) || !is_fifth_power(den))
        throw InconsistencyError("qs5_class: support outside S with valuation not divisible by 5");
    return out;
}

F5Row qs5_row_over(const QS5Vector& v, const PrimeList& columns) {
    F5Row row(columns.size(), 0);
    for (std::size_t i = 0; i < v.support.size(); ++i) {
        if (v.exponents[i] == 0) continue;
        auto it = std::lower_bound(columns.begin(), columns.end(), v.support[i]);
        if (it == columns.end() || *it != v.support[i]) throw DomainError("qs5_row_over: prime missing from columns");
        row[static_cast<std::size_t>(it - columns.begin())] = v.exponents[i];
    }
    return row;
}

}  // namespace sha5
