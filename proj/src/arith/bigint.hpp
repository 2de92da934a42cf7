#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sha5 {

using Int = mpz_class;
using Rat = mpq_class;

/// Thrown when an operation's precondition on its arguments is violated.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Thrown when a computation contradicts the theory it relies on.
/// Always signals a bug upstream rather than bad user input.
class InconsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }

inline Int make_int(std::int64_t v) {
    Int r;
    mpz_set_si(r.get_mpz_t(), static_cast<long>(v));
    return r;
}

inline Rat make_rat(const Int& num, const Int& den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Exponent of p in n; n must be nonzero.
inline int valuation(const Int& n, const Int& p) {
    if (n == 0) throw DomainError("valuation of zero");
    Int m = abs(n);
    int v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

inline int valuation(const Int& n, std::uint64_t p) { return valuation(n, Int(static_cast<unsigned long>(p))); }

inline int valuation(const Rat& x, std::uint64_t p) {
    return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

inline bool fits_u64(const Int& n) { return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

inline std::uint64_t to_u64(const Int& n) {
    if (!fits_u64(n)) throw DomainError("integer does not fit in 64 bits");
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
    return out;
}

inline Int from_u64(std::uint64_t v) {
    Int r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return r;
}

inline std::int64_t mod_si(const Int& n, std::uint64_t m) {
    return static_cast<std::int64_t>(mpz_fdiv_ui(n.get_mpz_t(), static_cast<unsigned long>(m)));
}

inline std::string to_string(const Int& n) { return n.get_str(); }
inline std::string to_string(const Rat& q) { return q.get_str(); }

inline Rat parse_rat(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw DomainError("malformed rational: " + s);
    r.canonicalize();
    return r;
}

inline Int pow_int(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Rat pow_rat(const Rat& b, long e) {
    if (e < 0) return pow_rat(1 / b, -e);
    Rat r(pow_int(b.get_num(), static_cast<unsigned long>(e)), pow_int(b.get_den(), static_cast<unsigned long>(e)));
    return r;
}

/// Exact square root of a nonnegative rational, if it is a square.
inline bool rational_sqrt(const Rat& x, Rat& out) {
    if (x < 0) return false;
    if (!mpz_perfect_square_p(x.get_num().get_mpz_t()) || !mpz_perfect_square_p(x.get_den().get_mpz_t())) return false;
    Int n, d;
    mpz_sqrt(n.get_mpz_t(), x.get_num().get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), x.get_den().get_mpz_t());
    out = Rat(n, d);
    out.canonicalize();
    return true;
}

}  // namespace sha5
