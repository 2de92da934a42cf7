#include "doctest.h"
#include "gen.hpp"

#include "arith/f5.hpp"
#include "arith/factor.hpp"
#include "arith/poly.hpp"
#include "arith/primes.hpp"
#include "arith/qs5.hpp"

#include <numeric>

using namespace sha5;

namespace {

// Plain elimination over GF(5) on a copy, used as the rank oracle.
int naive_rank(std::vector<std::vector<int>> m) {
    int rank = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
        std::size_t piv = static_cast<std::size_t>(rank);
        while (piv < m.size() && m[piv][c] % 5 == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[static_cast<std::size_t>(rank)]);
        auto& pr = m[static_cast<std::size_t>(rank)];
        int inv = 1;
        while ((pr[c] * inv) % 5 != 1) ++inv;
        for (auto& x : pr) x = (x * inv) % 5;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == static_cast<std::size_t>(rank)) continue;
            const int f = m[r][c];
            for (std::size_t k = 0; k < cols; ++k) m[r][k] = ((m[r][k] - f * pr[k]) % 5 + 5) % 5;
        }
        ++rank;
    }
    return rank;
}

}  // namespace

TEST_CASE("factorize examples") {
    auto f = factorize(Int(125));
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0].first == 5);
    CHECK(f.factors[0].second == 3);

    const long u = 7, v = 1;
    auto g = factorize(Int(u * u + 11 * u * v - v * v));
    REQUIRE(g.factors.size() == 1);
    CHECK(g.factors[0] == std::make_pair(Int(5), 3u));

    auto h = factorize(Int(-11));
    REQUIRE(h.factors.size() == 1);
    CHECK(h.factors[0] == std::make_pair(Int(11), 1u));

    CHECK_THROWS_AS(factorize(Int(0)), DomainError);
}

TEST_CASE("factorize reconstructs random inputs up to 1e12") {
    testgen::Gen g(101);
    for (int i = 0; i < 10000; ++i) {
        const Int n = from_u64(g.urange(1, 1000000000000ULL));
        auto f = factorize(n);
        CHECK(f.product() == n);
        for (std::size_t k = 0; k < f.factors.size(); ++k) {
            CHECK(is_probable_prime(f.factors[k].first));
            if (k) CHECK(f.factors[k - 1].first < f.factors[k].first);
        }
    }
}

TEST_CASE("factorize handles large semiprimes") {
    const Int p("1000000000039"), q("1000000000000000003");
    auto f = factorize(p * q * 25);
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[1].first == p);
    CHECK(f.factors[2].first == q);
}

TEST_CASE("qs5_class examples") {
    CHECK(qs5_class(Rat(1), {5, 11}).exponents == F5Row{0, 0});
    CHECK(qs5_class(Rat(32), {2}).exponents == F5Row{0});
    CHECK(qs5_class(Rat(1, 7), {5, 7}).exponents == F5Row{0, 4});
    CHECK_THROWS_AS(qs5_class(Rat(3), {5, 7}), InconsistencyError);
    CHECK(qs5_class(Rat(-243), {5}).is_zero());
}

TEST_CASE("qs5_class is a homomorphism and kills fifth powers") {
    testgen::Gen g(7);
    const PrimeList S{2, 3, 5, 11, 31};
    for (int i = 0; i < 500; ++i) {
        const Rat x = g.supported_rat(S, 9), y = g.supported_rat(S, 9);
        const auto cx = qs5_class(x, S), cy = qs5_class(y, S), cxy = qs5_class(x * y, S);
        for (std::size_t k = 0; k < S.size(); ++k) CHECK(cxy.exponents[k] == f5(cx.exponents[k] + cy.exponents[k]));
        CHECK(qs5_class(pow_rat(x, 5), S).is_zero());
    }
}

TEST_CASE("qs5_row_over widens to a larger support") {
    auto c = qs5_class(Rat(7, 4), {2, 5, 7});
    CHECK(qs5_row_over(c, {2, 3, 5, 7, 11}) == F5Row{3, 0, 0, 1, 0});
}

TEST_CASE("f5_rank examples") {
    CHECK(f5_rank(F5Matrix{}) == 0);
    CHECK(f5_rank(F5Matrix{{{1, 2}, {2, 4}}}) == 1);
    CHECK(f5_rank(F5Matrix{{{1, 0}, {0, 4}}}) == 2);
    CHECK_THROWS_AS(f5_rank(F5Matrix{{{1, 0}, {1}}}), DomainError);
}

TEST_CASE("f5_rank agrees with a naive elimination oracle") {
    testgen::Gen g(55);
    for (int i = 0; i < 1000; ++i) {
        const auto r = static_cast<std::size_t>(g.range(1, 8)), c = static_cast<std::size_t>(g.range(1, 8));
        std::vector<std::vector<int>> m(r, std::vector<int>(c));
        F5Matrix fm;
        // bias toward dependent rows
        for (std::size_t a = 0; a < r; ++a) {
            for (std::size_t b = 0; b < c; ++b) m[a][b] = static_cast<int>(g.range(0, 4));
            if (a > 0 && g.range(0, 2) == 0) {
                const int k = static_cast<int>(g.range(0, 4));
                for (std::size_t b = 0; b < c; ++b) m[a][b] = (m[a - 1][b] * k) % 5;
            }
            fm.rows.emplace_back(m[a].begin(), m[a].end());
        }
        CHECK(f5_rank(fm) == naive_rank(m));
    }
}

TEST_CASE("f5_solve and F5Span") {
    std::vector<F5Row> basis{{1, 0, 2}, {0, 1, 1}};
    auto sol = f5_solve(basis, F5Row{2, 3, 2});
    REQUIRE(sol.has_value());
    CHECK(*sol == F5Row{2, 3});
    CHECK_FALSE(f5_solve(basis, F5Row{0, 0, 1}).has_value());

    F5Span span(3);
    CHECK(span.insert({1, 0, 2}));
    CHECK_FALSE(span.insert({2, 0, 4}));
    CHECK(span.contains({3, 0, 1}));
    CHECK(span.insert({0, 0, 1}));
    CHECK(span.rank() == 2);
}

TEST_CASE("modular helpers") {
    CHECK(is_prime_u64(1000003));
    CHECK_FALSE(is_prime_u64(1000001));
    CHECK(is_prime_u64(18446744073709551557ULL));
    CHECK(legendre(2, 7) == 1);
    CHECK(legendre(3, 7) == -1);
    for (std::uint64_t p : {11ULL, 13ULL, 1000003ULL, 998244353ULL}) {
        for (std::uint64_t a = 1; a < 40; ++a) {
            if (legendre(static_cast<std::int64_t>(a), p) != 1) continue;
            const auto s = sqrt_mod(a, p);
            CHECK(mulmod(s, s, p) == a % p);
        }
    }
    CHECK(primes_up_to(30) == std::vector<std::uint32_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
}

TEST_CASE("rational_roots recovers planted roots") {
    testgen::Gen g(3);
    for (int i = 0; i < 200; ++i) {
        std::vector<Rat> roots;
        QPoly f = QPoly::constant(Rat(g.range(1, 9)));
        const int k = static_cast<int>(g.range(1, 4));
        for (int j = 0; j < k; ++j) {
            Rat r(g.range(-5000, 5000), g.range(1, 300));
            r.canonicalize();
            roots.push_back(r);
            f = f * QPoly::linear_root(r, Rat(1));
        }
        // an irreducible quadratic factor that must not contribute roots
        f = f * QPoly(std::vector<Rat>{Rat(g.range(2, 50) * 2 + 1), Rat(0), Rat(2)});
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        CHECK(rational_roots(f) == roots);
    }
    CHECK(rational_roots(QPoly(std::vector<Rat>{Rat(0), Rat(0), Rat(1)})) == std::vector<Rat>{Rat(0)});
}
