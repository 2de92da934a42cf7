#include "doctest.h"
#include "gen.hpp"

#include "arith/primes.hpp"
#include "cyclo/cyclo.hpp"

using namespace sha5;

namespace {

CycloElement random_element(testgen::Gen& g, int bound) {
    return CycloElement(std::array<Rat, 4>{Rat(g.range(-bound, bound)), Rat(g.range(-bound, bound)),
                                           Rat(g.range(-bound, bound)), Rat(g.range(-bound, bound))});
}

CycloElement random_nonzero(testgen::Gen& g, int bound) {
    for (;;) {
        auto e = random_element(g, bound);
        if (!e.is_zero()) return e;
    }
}

const CycloElement z = CycloElement::zeta();
const CycloElement one(1L);

std::vector<PrimeIdealGen> primes_over(const std::vector<std::uint64_t>& ps) {
    std::vector<PrimeIdealGen> out;
    for (auto p : ps)
        for (auto& t : prime_generators(p)) out.push_back(t);
    return out;
}

}  // namespace

TEST_CASE("field arithmetic basics") {
    CHECK(pow(z, 5) == one);
    CHECK(one + z + pow(z, 2) + pow(z, 3) + pow(z, 4) == CycloElement(0L));
    CHECK(CycloElement::sqrt5() * CycloElement::sqrt5() == CycloElement(5L));
    CHECK((one - z).norm() == 5);
    CHECK(CycloElement(2L).norm() == 16);
    const CycloElement w = z - pow(z, 4);
    CHECK(w * w == (CycloElement(-5L) - CycloElement::sqrt5()) / CycloElement(2L));
}

TEST_CASE("norm is multiplicative and inverse is exact") {
    testgen::Gen g(11);
    for (int i = 0; i < 1000; ++i) {
        const auto x = random_nonzero(g, 20), y = random_nonzero(g, 20);
        CHECK((x * y).norm() == x.norm() * y.norm());
        CHECK(x.norm() > 0);
        if (i % 10 == 0) CHECK(x * x.inverse() == one);
    }
}

TEST_CASE("sqrt_in_cyclo on the real subfield") {
    testgen::Gen g(12);
    const CycloElement w = z - pow(z, 4);
    for (int i = 0; i < 200; ++i) {
        const CycloElement a = CycloElement(Rat(g.range(-30, 30))) + CycloElement(Rat(g.range(-30, 30))) * CycloElement::sqrt5();
        if (a.is_zero()) continue;
        auto r = sqrt_in_cyclo(a * a);
        REQUIRE(r.has_value());
        CHECK(*r * *r == a * a);
        auto s = sqrt_in_cyclo(a * a * w * w);
        REQUIRE(s.has_value());
        CHECK(*s * *s == a * a * w * w);
    }
    CHECK_FALSE(sqrt_in_cyclo(CycloElement(3L)).has_value());
    CHECK_THROWS_AS(sqrt_in_cyclo(z), DomainError);
}

TEST_CASE("splitting_type examples") {
    CHECK(splitting_type(5) == SplittingType{1, 1, true});
    CHECK(splitting_type(11) == SplittingType{1, 4, false});
    CHECK(splitting_type(19) == SplittingType{2, 2, false});
    CHECK(splitting_type(2) == SplittingType{4, 1, false});
}

TEST_CASE("prime_generators examples") {
    auto g5 = prime_generators(5);
    REQUIRE(g5.size() == 1);
    CHECK(g5[0].generator == one - z);

    auto g2 = prime_generators(2);
    REQUIRE(g2.size() == 1);
    CHECK(g2[0].generator == CycloElement(2L));
    CHECK(g2[0].generator.norm() == 16);

    auto g11 = prime_generators(11);
    REQUIRE(g11.size() == 4);
    // fifth roots of unity mod 11 in ascending order
    const std::vector<std::uint64_t> roots{3, 4, 5, 9};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(g11[i].label == roots[i]);
        CHECK(powmod(roots[i], 5, 11) == 1);
        CHECK(g11[i].generator.norm() == 11);
        CHECK(g11[i].index == static_cast<int>(i));
        // the generator vanishes at z = r mod 11
        std::int64_t acc = 0, rp = 1;
        for (std::size_t k = 0; k < 4; ++k) {
            acc += g11[i].generator[k].get_num().get_si() * rp;
            rp = rp * static_cast<std::int64_t>(roots[i]) % 11;
        }
        CHECK(((acc % 11) + 11) % 11 == 0);
    }
    CHECK_THROWS_AS(prime_generators(21), DomainError);
}

TEST_CASE("generators have the right norms and are pairwise non-associate") {
    for (std::uint32_t p : primes_up_to(400)) {
        const auto st = splitting_type(p);
        const auto gens = prime_generators(p);
        REQUIRE(static_cast<int>(gens.size()) == st.prime_count);
        for (std::size_t i = 0; i < gens.size(); ++i) {
            CHECK(gens[i].generator.is_integral());
            CHECK(gens[i].generator.norm() == pow_rat(Rat(p), st.residue_degree));
            CHECK(valuation_at(gens[i].generator, gens[i]) == 1);
            for (std::size_t j = 0; j < gens.size(); ++j)
                if (i != j) CHECK(valuation_at(gens[i].generator, gens[j]) == 0);
        }
    }
}

TEST_CASE("dividing p by its primes leaves a unit") {
    for (std::uint32_t p : primes_up_to(200)) {
        CycloElement x(static_cast<long>(p));
        const int e = p == 5 ? 4 : 1;
        for (const auto& t : prime_generators(p)) {
            CHECK(valuation_at(x, t) == e);
            x = x / pow(t.generator, static_cast<unsigned long>(e));
        }
        CHECK(x.is_integral());
        CHECK(abs(x.norm()) == 1);
        if (p != 5) CHECK(x == one);
    }
}

TEST_CASE("valuation_at examples") {
    for (const auto& t : prime_generators(11)) {
        CHECK(valuation_at(t.generator, t) == 1);
        CHECK(valuation_at(CycloElement(11L), t) == 1);
        CHECK(valuation_at(CycloElement(7L), t) == 0);
        CHECK(valuation_at(CycloElement(Rat(1, 121)), t) == -2);
    }
    auto t5 = prime_generators(5)[0];
    CHECK(valuation_at(CycloElement(25L), t5) == 8);
    CHECK(valuation_at(CycloElement::sqrt5(), t5) == 2);
}

TEST_CASE("unit_class examples and round trip") {
    const auto& chars = UnitCharacters::standard();
    CHECK(chars.aux().size() == 8);
    for (const auto& a : chars.aux()) {
        CHECK(a.lambda > 1000000);
        CHECK(a.lambda % 5 == 1);
    }
    CHECK(chars.unit_class(one) == std::array<std::uint8_t, 2>{0, 0});
    CHECK(chars.unit_class(pow(one + z, 7)) == std::array<std::uint8_t, 2>{0, 2});
    CHECK(chars.unit_class(CycloElement(-1L)) == std::array<std::uint8_t, 2>{0, 0});
    CHECK(chars.unit_class(-z) == std::array<std::uint8_t, 2>{1, 0});

    testgen::Gen g(13);
    for (int i = 0; i < 200; ++i) {
        const auto a = static_cast<unsigned long>(g.range(0, 12)), b = static_cast<unsigned long>(g.range(0, 12));
        const auto y = random_nonzero(g, 6);
        const auto u = pow(z, a) * pow(one + z, b) * pow(y, 5);
        CHECK(chars.unit_class(u) == std::array<std::uint8_t, 2>{static_cast<std::uint8_t>(a % 5), static_cast<std::uint8_t>(b % 5)});
    }
}

TEST_CASE("ks5_class examples") {
    const auto S = primes_over({5, 11});
    CHECK(ks5_class(one, S).is_zero());

    const auto& t = S[2];
    auto c = ks5_class(pow(t.generator, 6), S);
    CHECK(c.unit_exponents == std::array<std::uint8_t, 2>{0, 0});
    for (std::size_t i = 0; i < S.size(); ++i) CHECK(c.exponents[i] == (i == 2 ? 1 : 0));

    auto d = ks5_class(CycloElement(11L) * (one + z), S);
    CHECK(d.exponents == F5Row{0, 1, 1, 1, 1});
    CHECK(d.unit_exponents == std::array<std::uint8_t, 2>{0, 1});
}

TEST_CASE("ks5_class is a homomorphism") {
    const auto S = primes_over({2, 5, 11, 19, 31});
    testgen::Gen g(17);
    auto random_supported = [&] {
        CycloElement x = pow(z, static_cast<unsigned long>(g.range(0, 4))) * pow(one + z, static_cast<unsigned long>(g.range(0, 4)));
        for (const auto& t : S) {
            const long k = g.range(-3, 3);
            x = x * (k >= 0 ? pow(t.generator, static_cast<unsigned long>(k)) : pow(t.generator.inverse(), static_cast<unsigned long>(-k)));
        }
        return x;
    };
    for (int i = 0; i < 60; ++i) {
        const auto x = random_supported(), y = random_supported();
        const auto cx = ks5_class(x, S), cy = ks5_class(y, S), cxy = ks5_class(x * y, S);
        for (std::size_t k = 0; k < 2; ++k) CHECK(cxy.unit_exponents[k] == f5(cx.unit_exponents[k] + cy.unit_exponents[k]));
        for (std::size_t k = 0; k < S.size(); ++k) CHECK(cxy.exponents[k] == f5(cx.exponents[k] + cy.exponents[k]));
        CHECK(ks5_class(pow(x, 5), S).is_zero());
    }
}
