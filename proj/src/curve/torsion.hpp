#pragma once

#include "curve/weierstrass.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sha5 {

/// The {2,5}-primary rational torsion. For curves carrying a rational
/// 5-torsion point this is the whole torsion subgroup (Z/5 or Z/10).
struct TorsionInfo {
    int order = 1;
    std::string structure;                // "trivial", "Z/2", "Z/5", "Z/10", ...
    std::vector<PointQ> generators;       // one generator per cyclic factor
    std::optional<PointQ> five_torsion;   // generator of E(Q)[5] if nontrivial
    std::vector<PointQ> points;           // all listed torsion points, O excluded
};

TorsionInfo torsion_subgroup(const CurveQ& E);

/// Rational points of exact order 2.
std::vector<PointQ> rational_two_torsion(const CurveQ& E);

/// A generator of E(Q)[5], if any.
std::optional<PointQ> rational_five_torsion(const CurveQ& E);

/// The rational y-coordinates above x (0, 1 or 2 of them, ascending).
std::vector<Rat> rational_ys(const CurveQ& E, const Rat& x);

}  // namespace sha5
