#pragma once

#include "arith/bigint.hpp"
#include "arith/f5.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sha5 {

/// Element c0 + c1 z + c2 z^2 + c3 z^3 of Q(z), z a primitive fifth root of unity.
/// Always kept reduced modulo 1 + x + x^2 + x^3 + x^4.
class CycloElement {
public:
    CycloElement() : c_{Rat(0), Rat(0), Rat(0), Rat(0)} {}
    CycloElement(long v) : c_{Rat(v), Rat(0), Rat(0), Rat(0)} {}  // NOLINT(google-explicit-constructor)
    CycloElement(const Rat& v) : c_{v, Rat(0), Rat(0), Rat(0)} {}  // NOLINT(google-explicit-constructor)
    explicit CycloElement(std::array<Rat, 4> c) : c_(std::move(c)) {}

    static CycloElement zeta();
    /// sqrt(5) = -1 - 2z^2 - 2z^3
    static CycloElement sqrt5();

    const std::array<Rat, 4>& coeffs() const { return c_; }
    const Rat& operator[](std::size_t i) const { return c_[i]; }

    bool is_zero() const;
    bool is_rational() const;
    bool is_integral() const;
    /// Image under z -> z^k, k in 1..4.
    CycloElement galois(int k) const;
    /// Product of all four conjugates; positive for nonzero input.
    Rat norm() const;
    CycloElement inverse() const;
    /// Common denominator of the coefficients.
    Int denominator() const;
    std::string to_string() const;

    friend CycloElement operator+(const CycloElement& a, const CycloElement& b);
    friend CycloElement operator-(const CycloElement& a, const CycloElement& b);
    friend CycloElement operator-(const CycloElement& a);
    friend CycloElement operator*(const CycloElement& a, const CycloElement& b);
    friend CycloElement operator/(const CycloElement& a, const CycloElement& b) { return a * b.inverse(); }
    friend bool operator==(const CycloElement& a, const CycloElement& b) { return a.c_ == b.c_; }
    friend bool operator<(const CycloElement& a, const CycloElement& b) { return a.c_ < b.c_; }

private:
    static CycloElement from_five(std::array<Rat, 5> c);
    std::array<Rat, 4> c_;
};

inline bool is_zero(const CycloElement& x) { return x.is_zero(); }
CycloElement pow(const CycloElement& b, unsigned long e);

/// Square root inside K of an element of the real quadratic subfield Q(sqrt5).
std::optional<CycloElement> sqrt_in_cyclo(const CycloElement& delta);

struct SplittingType {
    int residue_degree;
    int prime_count;
    bool ramified;
    bool operator==(const SplittingType&) const = default;
};

SplittingType splitting_type(std::uint64_t p);

/// Generator of a prime ideal of Z[z] above p.
struct PrimeIdealGen {
    std::uint64_t rational_prime = 0;
    CycloElement generator;
    int residue_degree = 0;
    int index = 0;
    /// Residue-field label used for ordering: the fifth root of unity r mod p
    /// (split case) or the root s of s^2+s-1 mod p (degree-2 case); 0 otherwise.
    std::uint64_t label = 0;
};

/// Generators of the primes above p in the fixed Step-0 ordering. For p != 5
/// they multiply to p exactly.
std::vector<PrimeIdealGen> prime_generators(std::uint64_t p);

/// p-adic valuation of (x) at the prime generated by t; x nonzero.
int valuation_at(const CycloElement& x, const PrimeIdealGen& t);

/// Quintic-residue characters at auxiliary primes, used to read off unit classes.
class UnitCharacters {
public:
    struct Aux {
        std::uint64_t lambda;
        std::uint64_t root;  // primitive fifth root of unity mod lambda, image of z
        std::uint8_t chi_zeta;
        std::uint8_t chi_one_plus_zeta;
    };

    /// The first `count` primes lambda = 1 mod 5 above `floor`.
    explicit UnitCharacters(std::size_t count = 8, std::uint64_t floor = 1000000);

    const std::vector<Aux>& aux() const { return aux_; }

    /// Character value log_root(x^((lambda-1)/5)) in GF(5), or nullopt when x
    /// is not a unit at the chosen prime above lambda.
    std::optional<std::uint8_t> character(const CycloElement& x, const Aux& a) const;

    /// (a0, a1) with u = z^a0 (1+z)^a1 mod fifth powers. u must be a unit
    /// times a fifth power.
    std::array<std::uint8_t, 2> unit_class(const CycloElement& u) const;

    static const UnitCharacters& standard();

private:
    std::vector<Aux> aux_;
};

/// Class in K(S,5).
struct KS5Vector {
    std::array<std::uint8_t, 2> unit_exponents{0, 0};
    std::vector<std::pair<std::uint64_t, int>> support;  // (p, index)
    F5Row exponents;

    bool is_zero() const;
    bool operator==(const KS5Vector&) const = default;
};

/// Class of x in K(S,5) without factoring any norm: valuations at S by exact
/// division, the unit part via quintic-residue characters.
KS5Vector ks5_class(const CycloElement& x, const std::vector<PrimeIdealGen>& S,
                    const UnitCharacters& chars = UnitCharacters::standard());

}  // namespace sha5
