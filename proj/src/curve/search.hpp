#pragma once

#include "curve/weierstrass.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace sha5 {

/// Visits every affine point with x = a/b^2, gcd(a,b) = 1, |a| <= H, b^2 <= H,
/// in order of increasing b. The visitor returns false to stop early.
/// E must have integral coefficients. Returns false if stopped early.
bool point_search_visit(const CurveQ& E, std::uint64_t H, const std::function<bool(const PointQ&)>& visit);

/// All points of naive height <= H, keeping one representative per class
/// modulo inverses and translation by the given torsion points; torsion
/// points themselves are dropped.
std::vector<PointQ> point_search(const CurveQ& E, std::uint64_t H, const std::vector<PointQ>& torsion);

}  // namespace sha5
