// One PASS/FAIL line per acceptance criterion. Exit status is 0 when every
// failure is on the known list below, 1 otherwise.
#include "arith/qs5.hpp"
#include "curve/family.hpp"
#include "curve/fp.hpp"
#include "curve/saturate.hpp"
#include "cyclo/cyclo.hpp"
#include "descent/descent.hpp"
#include "isogeny/isogeny.hpp"
#include "pipeline/analysis.hpp"
#include "pipeline/db.hpp"
#include "pipeline/stats.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace sha5;

namespace {

// Figures that do not reproduce; see the README. A criterion on this list
// still prints FAIL, but only these sub-checks may fail for it.
constexpr const char* kKnownRed[] = {"4: RE", "6: regulator oracle"};

constexpr double kLocalOnlyTolerance = 0.01;  // percentage points
const std::vector<long> kCensusHeights{10, 20, 30, 40, 50};
const std::vector<std::uint64_t> kCensusCounts{63, 255, 555, 979, 1547};

struct Part {
    std::string name;
    bool ok = false;
    std::string detail;
};

bool known_red(const std::string& criterion, const std::string& part) {
    const std::string key = criterion + ": " + part;
    return std::any_of(std::begin(kKnownRed), std::end(kKnownRed), [&](const char* k) { return key == k; });
}

int unexpected = 0;

void report(const std::string& id, const std::string& title, const std::vector<Part>& parts, double seconds) {
    bool ok = true, all_known = true;
    for (const auto& p : parts) {
        if (p.ok) continue;
        ok = false;
        if (!known_red(id, p.name)) all_known = false;
    }
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << title;
    if (!ok) std::cout << (all_known ? "  [known]" : "  [unexpected]");
    std::cout << "  (" << static_cast<long>(seconds * 10) / 10.0 << " s)\n";
    for (const auto& p : parts) std::cout << "        " << (p.ok ? "ok   " : "bad  ") << p.name << ": " << p.detail << '\n';
    std::cout.flush();
    if (!ok && !all_known) ++unexpected;
}

template <class F>
void criterion(const std::string& id, const std::string& title, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Part> parts;
    try {
        parts = body();
    } catch (const std::exception& e) {
        parts.push_back({"exception", false, e.what()});
    }
    report(id, title, parts, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

std::string show(std::uint64_t got, std::uint64_t want) {
    return std::to_string(got) + " (expected " + std::to_string(want) + ")";
}

std::string show(const std::string& got, const std::string& want) { return got + " (expected " + want + ")"; }

// ---------------------------------------------------------------- generators

class Rng {
public:
    explicit Rng(std::uint64_t seed) : rng_(seed) {}
    long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    std::uint64_t urange(std::uint64_t lo, std::uint64_t hi) { return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_); }
    bool coin() { return range(0, 1) == 1; }
    std::pair<long, long> coprime_pair(long n) {
        for (;;) {
            const long u = range(1, n), v = range(1, n);
            if (std::gcd(u, v) == 1) return {u, v};
        }
    }

private:
    std::mt19937_64 rng_;
};

Point<Fp> random_point(const Weierstrass<Fp>& E, Rng& g) {
    const std::uint64_t p = Fp::modulus();
    for (;;) {
        const Fp x = Fp::raw(g.urange(0, p - 1));
        const Fp d = E.two_division(x);
        if (d.value() != 0 && legendre(static_cast<std::int64_t>(d.value()), p) != 1) continue;
        const Fp s = Fp::raw(sqrt_mod(d.value(), p));
        return Point<Fp>::affine(x, ((g.coin() ? s : -s) - E.a1 * x - E.a3) / Fp(2L));
    }
}

// ---------------------------------------------------------- property suites

Part dual_composition(Rng& g) {
    int curves = 0, points = 0, bad = 0;
    while (curves < 100) {
        const auto [u, v] = g.coprime_pair(60);
        const CurveQ E = curve_from_uv(u, v);
        const auto tors = family_torsion(u, v);
        const auto eta = velu_quotient(E, tors[0]);
        const PointK R = dual_kernel_generator(eta.codomain(), dual_kernel(eta));
        const DualIsogeny dual(eta, R);
        if (!(dual.to_source().apply(dual.quotient()) == E)) ++bad;
        const Int bad_primes = 3 * E.discriminant().get_num() * eta.codomain().discriminant().get_num();
        // a split prime where every coefficient involved reduces
        std::uint64_t p = 0;
        for (std::uint64_t q = 11; p == 0; q += 10) {
            if (!is_prime_u64(q) || mod_si(bad_primes, q) == 0) continue;
            bool clean = true;
            for (const Rat* c : {&dual.to_source().r, &dual.to_source().s, &dual.to_source().t, &dual.to_source().u})
                if (mod_si(c->get_den(), q) == 0) clean = false;
            for (const auto& c : {R.x, R.y, multiply(to_cyclo(eta.codomain()), 2, R).x})
                for (std::size_t i = 0; i < 4; ++i)
                    if (mod_si(c[i].get_den(), q) == 0) clean = false;
            if (clean) p = q;
        }
        std::uint64_t root = 1;
        for (std::uint64_t a = 2; root == 1; ++a) root = powmod(a, (p - 1) / 5, p);
        FpScope scope(p);
        const auto Er = reduce_curve(E, p);
        const VeluIsogeny<Fp> eta_p(Er, {reduce_point(tors[0], p), reduce_point(tors[1], p)});
        for (int k = 0; k < 20; ++k) {
            const auto P = random_point(Er, g);
            if (!(dual.eval_mod(eta_p(P), p, root) == multiply(Er, 5, P))) ++bad;
            ++points;
        }
        ++curves;
    }
    return {"dual composition", bad == 0, std::to_string(curves) + " curves, " + std::to_string(points) + " points over split primes, " + std::to_string(bad) + " mismatches"};
}

Part n_independence(const std::vector<const CurveRecord*>& recs, Rng& g) {
    int bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto& a = *recs[static_cast<std::size_t>(g.range(0, static_cast<long>(recs.size()) - 1))];
        const auto& b = *recs[static_cast<std::size_t>(g.range(0, static_cast<long>(recs.size()) - 1))];
        if (&a == &b) {
            --trial;
            continue;
        }
        const int psi = dim_coker_psi_twisted(a, b, 1), dual = dim_coker_phi_dual_twisted(a, b, 1);
        for (int n = 2; n <= 4; ++n)
            if (dim_coker_psi_twisted(a, b, n) != psi || dim_coker_phi_dual_twisted(a, b, n) != dual) ++bad;
    }
    return {"n-independence", bad == 0, "100 pairs, n = 1..4, " + std::to_string(bad) + " disagreements"};
}

F5Row combine(F5Row a, const F5Row& b, long k) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = f5(a[i] + k * b[i]);
    return a;
}

Part image_homomorphism(const std::vector<const CurveRecord*>& recs, Rng& g) {
    std::vector<const CurveRecord*> ranked;
    for (auto* r : recs)
        if (r->rank >= 1) ranked.push_back(r);
    int points = 0, bad = 0;
    while (points < 100) {
        const auto& rec = *ranked[static_cast<std::size_t>(g.range(0, static_cast<long>(ranked.size()) - 1))];
        const CurveQ E = curve_from_uv(rec.u, rec.v);
        const auto image = [&](const PointQ& P) { return qs5_row_over(coker_eta_dual_image(rec.u, rec.v, P, rec.S), rec.S); };
        std::vector<PointQ> gens{family_torsion(rec.u, rec.v)[0]};
        gens.insert(gens.end(), rec.generators.begin(), rec.generators.end());
        PointQ P = PointQ::at_infinity();
        F5Row expect(rec.S.size(), 0);
        for (const auto& G : gens) {
            const long c = g.range(-3, 3);
            P = add(E, P, multiply(E, c, G));
            expect = combine(expect, image(G), c);
        }
        if (image(P) != expect) ++bad;
        if (image(multiply(E, 5, P)) != F5Row(rec.S.size(), 0)) ++bad;
        ++points;
    }

    // K side on curves with a nontrivial coker eta
    int kpoints = 0;
    for (auto* r : ranked) {
        if (kpoints >= 100) break;
        if (r->dim_coker_eta == 0) continue;
        const CurveQ E = curve_from_uv(r->u, r->v);
        const auto iso = isogeny_data(E, family_torsion(r->u, r->v)[0]);
        const auto SK = k_primes_over(r->S);
        std::vector<std::pair<std::uint64_t, int>> cols;
        for (const auto& t : SK) cols.emplace_back(t.rational_prime, t.index);
        const auto ec = coker_eta_basis(iso, r->generators, SK, r->dim_coker_eta);
        std::vector<PointQ> pts = ec.lattice;
        if (ec.torsion) pts.push_back(*ec.torsion);
        const CurveQ& Ep = iso.target;
        const auto image = [&](const PointQ& P) { return ks5_row_over(coker_eta_image(iso.tau, P, SK), cols); };
        for (int k = 0; k < 10; ++k) {
            PointQ P = PointQ::at_infinity();
            F5Row expect(2 + cols.size(), 0);
            for (const auto& G : pts) {
                const long c = g.range(-2, 2);
                P = add(Ep, P, multiply(Ep, c, G));
                expect = combine(expect, image(G), c);
            }
            if (!P.infinity && image(P) != expect) ++bad;
            if (image(multiply(Ep, 5, P)) != F5Row(2 + cols.size(), 0)) ++bad;
            ++kpoints;
        }
    }
    return {"image homomorphism", bad == 0 && kpoints >= 100,
            std::to_string(points) + " points on E, " + std::to_string(kpoints) + " on E', " + std::to_string(bad) + " failures"};
}

Part class_maps(Rng& g) {
    int bad = 0;
    const PrimeList S{2, 3, 5, 11, 31};
    const auto rat = [&] {
        Rat x = g.coin() ? 1 : -1;
        for (auto p : S) x *= pow_rat(Rat(from_u64(p)), g.range(-9, 9));
        return x;
    };
    for (int i = 0; i < 200; ++i) {
        const Rat x = rat(), y = rat();
        const auto cx = qs5_class(x, S), cy = qs5_class(y, S), cxy = qs5_class(x * y, S);
        for (std::size_t k = 0; k < S.size(); ++k)
            if (cxy.exponents[k] != f5(cx.exponents[k] + cy.exponents[k])) ++bad;
        if (!qs5_class(pow_rat(x, 5), S).is_zero()) ++bad;
    }

    const CycloElement z = CycloElement::zeta(), one(1L);
    std::vector<PrimeIdealGen> SK;
    for (std::uint64_t p : {2, 5, 11, 19, 31})
        for (const auto& t : prime_generators(p)) SK.push_back(t);
    const auto cyclo = [&] {
        CycloElement x = pow(z, static_cast<unsigned long>(g.range(0, 4))) * pow(one + z, static_cast<unsigned long>(g.range(0, 4)));
        for (const auto& t : SK) {
            const long k = g.range(-3, 3);
            x = x * (k >= 0 ? pow(t.generator, static_cast<unsigned long>(k)) : pow(t.generator.inverse(), static_cast<unsigned long>(-k)));
        }
        return x;
    };
    for (int i = 0; i < 40; ++i) {
        const auto x = cyclo(), y = cyclo();
        const auto cx = ks5_class(x, SK), cy = ks5_class(y, SK), cxy = ks5_class(x * y, SK);
        for (std::size_t k = 0; k < 2; ++k)
            if (cxy.unit_exponents[k] != f5(cx.unit_exponents[k] + cy.unit_exponents[k])) ++bad;
        for (std::size_t k = 0; k < SK.size(); ++k)
            if (cxy.exponents[k] != f5(cx.exponents[k] + cy.exponents[k])) ++bad;
        if (!ks5_class(pow(x, 5), SK).is_zero()) ++bad;
    }

    const auto& chars = UnitCharacters::standard();
    for (int i = 0; i < 100; ++i) {
        const auto a = static_cast<unsigned long>(g.range(0, 12)), b = static_cast<unsigned long>(g.range(0, 12));
        CycloElement y;
        do {
            y = CycloElement(std::array<Rat, 4>{Rat(g.range(-6, 6)), Rat(g.range(-6, 6)), Rat(g.range(-6, 6)), Rat(g.range(-6, 6))});
        } while (y.is_zero());
        const auto u = pow(z, a) * pow(one + z, b) * pow(y, 5);
        if (chars.unit_class(u) != std::array<std::uint8_t, 2>{static_cast<std::uint8_t>(a % 5), static_cast<std::uint8_t>(b % 5)}) ++bad;
    }
    return {"class maps", bad == 0, "qs5 200 pairs, ks5 40 pairs, unit_class 100 round trips, " + std::to_string(bad) + " failures"};
}

Part saturation(const std::vector<const CurveRecord*>& recs, Rng& g) {
    int cases = 0, bad = 0;
    for (auto* r : recs) {
        if (r->rank < 1 || cases >= 40) continue;
        const CurveQ E = curve_from_uv(r->u, r->v);
        const PointQ T = family_torsion(r->u, r->v)[0];
        FiveDivider div(E);
        // hide each generator behind a multiple of 5 and a torsion shift
        std::vector<PointQ> input;
        for (const auto& G : r->generators) input.push_back(add(E, multiply(E, 5, G), multiply(E, g.range(0, 4), T)));
        if (r->generators.size() >= 2) input[1] = add(E, input[1], multiply(E, 5 * g.range(1, 4), r->generators[0]));
        const auto sat = saturate_at_5(E, input, {T});
        if (sat.basis.size() != r->generators.size()) ++bad;
        for (const auto& B : sat.basis)
            for (int k = 0; k < 5; ++k)
                if (div.divide(add(E, B, multiply(E, k, T))).has_value()) ++bad;
        // the saturated lattice reaches the record's basis
        if (r->generators.size() == 1) {
            bool related = false;
            for (int s : {1, -1})
                for (int k = 0; k < 5; ++k)
                    if (multiply(E, s, sat.basis[0]) == add(E, r->generators[0], multiply(E, k, T))) related = true;
            if (!related) ++bad;
        }
        ++cases;
    }
    return {"saturation", bad == 0 && cases > 0, std::to_string(cases) + " constructed inputs, " + std::to_string(bad) + " failures"};
}

Part regulator_oracle(const std::vector<const CurveRecord*>& recs10) {
    int pairs = 0, bad = 0;
    for (std::size_t i = 0; i < recs10.size(); ++i)
        for (std::size_t j = i + 1; j < recs10.size(); ++j) {
            const CurveRecord *a = recs10[i], *b = recs10[j];
            if (a->rank + b->rank != 1 || a->rank > 1 || b->rank > 1) continue;
            const auto r = pair_analysis(*a, *b);
            const CurveRecord* one = a->rank == 1 ? a : b;
            const bool trivial = one->dim_coker_eta - static_cast<int>(one->Q_torsion.size()) == 0;
            if ((r.re_parity == 1) != trivial) ++bad;
            ++pairs;
        }
    return {"regulator oracle", bad == 0, std::to_string(pairs) + " rank-(0,1) pairs at N=10, " + std::to_string(bad) + " disagree"};
}

}  // namespace

int main() {
    std::cout << "sha5 acceptance, " << default_workers() << " worker(s)\n";

    criterion("1", "curve census for N = 10..50", [] {
        std::vector<Part> parts;
        for (std::size_t i = 0; i < kCensusHeights.size(); ++i) {
            BuildOptions o;
            o.max_height = kCensusHeights[i];
            o.census_only = true;
            const auto db = build_database(o);
            parts.push_back({"N=" + std::to_string(kCensusHeights[i]), db.records.size() == kCensusCounts[i], show(db.records.size(), kCensusCounts[i])});
        }
        return parts;
    });

    criterion("2", "local-only T/U parity table at N=100", [] {
        const auto t = local_only(100);
        const double want[2][2] = {{46.71, 1.80}, {49.55, 1.95}};
        std::vector<Part> parts{{"pairs", t.total() == 18522741, show(t.total(), 18522741)}};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const double got = 100.0 * static_cast<double>(t.cells[i][j]) / static_cast<double>(t.total());
                std::ostringstream d;
                d.precision(4);
                d << std::fixed << got << " (expected " << want[i][j] << " +- " << kLocalOnlyTolerance << ")";
                parts.push_back({"T" + std::to_string(i) + "U" + std::to_string(j), std::abs(got - want[i][j]) <= kLocalOnlyTolerance + 1e-9, d.str()});
            }
        return parts;
    });

    criterion("3", "conductor filter N=100, C=10^6", [] {
        BuildOptions o;
        o.max_height = 100;
        o.max_conductor = Int(1000000);
        o.census_only = true;
        const auto db = build_database(o);
        return std::vector<Part>{{"curves", db.records.size() == 1391, show(db.records.size(), 1391)}};
    });

    // criteria 4 and 5 share one database at N=20
    Database db20;
    Results res20;
    std::string build_error;
    double build_seconds = 0;
    {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            BuildOptions o;
            o.max_height = 20;
            db20 = build_database(o);
            res20 = analyze(db20);
        } catch (const std::exception& e) {
            build_error = e.what();
        }
        build_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "      (database and analysis at N=20: " << static_cast<long>(build_seconds) << " s)\n";
    }

    criterion("4", "full pipeline at N=10", [&] {
        if (!build_error.empty()) throw std::runtime_error(build_error);
        const auto census = rank_census(res20, {10}).at(0);
        const auto count = [&](int r) { return census.by_rank.count(r) ? census.by_rank.at(r) : 0; };
        const auto row = by_height(res20, {10}).at(0);
        std::ostringstream ranks;
        ranks << count(0) << '/' << count(1) << '/' << count(2) << '/' << count(3) << " unknown " << count(-1);
        return std::vector<Part>{
            {"rank census", count(0) == 40 && count(1) == 22 && count(2) == 1 && count(3) == 0 && count(-1) == 0, show(ranks.str(), "40/22/1/0 unknown 0")},
            {"pairs", row.tally.pairs == 1953, show(row.tally.pairs, 1953)},
            {"square", percent(row.tally.square, row.tally.pairs, 3) == "67.179", show(percent(row.tally.square, row.tally.pairs, 3) + "%", "67.179%")},
            {"RE", percent(row.tally.re_match, row.tally.pairs, 2) == "74.04",
             show(percent(row.tally.re_match, row.tally.pairs, 2) + "% (" + std::to_string(row.tally.re_match) + " pairs)", "74.04% (1446 pairs)")},
        };
    });

    criterion("5", "full pipeline at N=20", [&] {
        if (!build_error.empty()) throw std::runtime_error(build_error);
        const auto row = by_height(res20, {20}).at(0);
        return std::vector<Part>{
            {"complete", res20.incomplete() == 0, show(res20.incomplete(), 0) + " incomplete records"},
            {"pairs", row.tally.pairs == 32385, show(row.tally.pairs, 32385)},
            {"square", percent(row.tally.square, row.tally.pairs, 3) == "56.384", show(percent(row.tally.square, row.tally.pairs, 3) + "%", "56.384%")},
        };
    });

    criterion("6", "property suites", [&] {
        if (!build_error.empty()) throw std::runtime_error(build_error);
        std::vector<const CurveRecord*> recs, recs10;
        for (const auto& r : db20.records) {
            if (r.incomplete) continue;
            recs.push_back(&r);
            if (std::max(r.u, r.v) <= 10) recs10.push_back(&r);
        }
        Rng g(20261016);
        return std::vector<Part>{dual_composition(g), n_independence(recs, g), image_homomorphism(recs, g),
                                 class_maps(g), saturation(recs, g), regulator_oracle(recs10)};
    });

    std::cout << (unexpected == 0 ? "acceptance: no unexpected failures\n" : "acceptance: unexpected failures\n");
    return unexpected == 0 ? 0 : 1;
}
