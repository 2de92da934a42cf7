#include "curve/torsion.hpp"

#include "curve/family.hpp"

#include <algorithm>

namespace sha5 {

std::vector<Rat> rational_ys(const CurveQ& E, const Rat& x) {
    const Rat disc = E.two_division(x);
    Rat s;
    if (!rational_sqrt(disc, s)) return {};
    const Rat base = -(E.a1 * x + E.a3);
    if (sgn(s) == 0) return {base / 2};
    std::vector<Rat> ys{(base - s) / 2, (base + s) / 2};
    std::sort(ys.begin(), ys.end());
    return ys;
}

std::vector<PointQ> rational_two_torsion(const CurveQ& E) {
    std::vector<PointQ> out;
    for (const Rat& x : rational_roots(two_division_poly(E))) out.push_back(PointQ::affine(x, -(E.a1 * x + E.a3) / 2));
    return out;
}

std::optional<PointQ> rational_five_torsion(const CurveQ& E) {
    for (const Rat& x : rational_roots(psi5(E))) {
        for (const Rat& y : rational_ys(E, x)) {
            const PointQ P = PointQ::affine(x, y);
            if (torsion_order(E, P, 5) == 5) return P;
        }
    }
    return std::nullopt;
}

TorsionInfo torsion_subgroup(const CurveQ& E) {
    TorsionInfo t;
    const auto two = rational_two_torsion(E);
    const auto five = rational_five_torsion(E);
    const int n2 = static_cast<int>(two.size()) + 1;  // 1, 2 or 4
    const int n5 = five ? 5 : 1;
    t.order = n2 * n5;
    t.five_torsion = five;
    std::vector<PointQ> cyclic;
    if (five) {
        PointQ Q = *five;
        for (int k = 1; k < 5; ++k) {
            t.points.push_back(Q);
            Q = add(E, Q, *five);
        }
    }
    for (const auto& T : two) {
        t.points.push_back(T);
        if (five) {
            PointQ Q = *five;
            for (int k = 1; k < 5; ++k) {
                t.points.push_back(add(E, T, Q));
                Q = add(E, Q, *five);
            }
        }
    }
    if (n2 == 4) {
        t.structure = five ? "Z/2xZ/10" : "Z/2xZ/2";
        t.generators = {two[0], five ? add(E, two[1], *five) : two[1]};
    } else if (n2 == 2) {
        t.structure = five ? "Z/10" : "Z/2";
        t.generators = {five ? add(E, two[0], *five) : two[0]};
    } else if (five) {
        t.structure = "Z/5";
        t.generators = {*five};
    } else {
        t.structure = "trivial";
    }
    return t;
}

}  // namespace sha5
