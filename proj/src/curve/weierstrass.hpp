#pragma once

#include "arith/bigint.hpp"

#include <array>
#include <string>

namespace sha5 {

/// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F.
template <class F>
struct Weierstrass {
    F a1{0L}, a2{0L}, a3{0L}, a4{0L}, a6{0L};

    F b2() const { return a1 * a1 + F(4L) * a2; }
    F b4() const { return F(2L) * a4 + a1 * a3; }
    F b6() const { return a3 * a3 + F(4L) * a6; }
    F b8() const { return a1 * a1 * a6 + F(4L) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
    F c4() const { return b2() * b2() - F(24L) * b4(); }
    F c6() const { return F(0L) - b2() * b2() * b2() + F(36L) * b2() * b4() - F(216L) * b6(); }
    F discriminant() const {
        const F B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return F(0L) - B2 * B2 * B8 - F(8L) * B4 * B4 * B4 - F(27L) * B6 * B6 + F(9L) * B2 * B4 * B6;
    }
    /// 4x^3 + b2 x^2 + 2 b4 x + b6, the discriminant of the model in y.
    F two_division(const F& x) const { return ((F(4L) * x + b2()) * x + F(2L) * b4()) * x + b6(); }

    bool operator==(const Weierstrass& o) const {
        return a1 == o.a1 && a2 == o.a2 && a3 == o.a3 && a4 == o.a4 && a6 == o.a6;
    }
};

template <class F>
struct Point {
    bool infinity = true;
    F x{0L}, y{0L};

    static Point at_infinity() { return Point{}; }
    static Point affine(F x, F y) { return Point{false, std::move(x), std::move(y)}; }

    bool operator==(const Point& o) const {
        if (infinity || o.infinity) return infinity == o.infinity;
        return x == o.x && y == o.y;
    }
};

template <class F>
bool on_curve(const Weierstrass<F>& E, const Point<F>& P) {
    if (P.infinity) return true;
    const F& x = P.x;
    const F& y = P.y;
    return is_zero(y * y + E.a1 * x * y + E.a3 * y - (x * x * x + E.a2 * x * x + E.a4 * x + E.a6));
}

template <class F>
Point<F> negate(const Weierstrass<F>& E, const Point<F>& P) {
    if (P.infinity) return P;
    return Point<F>::affine(P.x, F(0L) - P.y - E.a1 * P.x - E.a3);
}

template <class F>
Point<F> add(const Weierstrass<F>& E, const Point<F>& P, const Point<F>& Q) {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    F lambda, nu;
    if (P.x == Q.x) {
        const F denom = F(2L) * P.y + E.a1 * P.x + E.a3;
        if (!(P.y == Q.y) || is_zero(denom)) return Point<F>::at_infinity();
        lambda = (F(3L) * P.x * P.x + F(2L) * E.a2 * P.x + E.a4 - E.a1 * P.y) / denom;
    } else {
        lambda = (Q.y - P.y) / (Q.x - P.x);
    }
    nu = P.y - lambda * P.x;
    const F x3 = lambda * lambda + E.a1 * lambda - E.a2 - P.x - Q.x;
    const F y3 = F(0L) - (lambda + E.a1) * x3 - nu - E.a3;
    return Point<F>::affine(x3, y3);
}

template <class F>
Point<F> subtract(const Weierstrass<F>& E, const Point<F>& P, const Point<F>& Q) {
    return add(E, P, negate(E, Q));
}

template <class F>
Point<F> multiply(const Weierstrass<F>& E, long n, const Point<F>& P) {
    if (n < 0) return multiply(E, -n, negate(E, P));
    Point<F> result = Point<F>::at_infinity(), base = P;
    while (n) {
        if (n & 1) result = add(E, result, base);
        n >>= 1;
        if (n) base = add(E, base, base);
    }
    return result;
}

/// Order of P if it divides some n <= bound, else 0.
template <class F>
int torsion_order(const Weierstrass<F>& E, const Point<F>& P, int bound = 12) {
    Point<F> Q = P;
    for (int n = 1; n <= bound; ++n) {
        if (Q.infinity) return n;
        Q = add(E, Q, P);
    }
    return 0;
}

/// Change of coordinates x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
template <class F>
struct Isomorphism {
    F u{1L}, r{0L}, s{0L}, t{0L};

    Weierstrass<F> apply(const Weierstrass<F>& E) const {
        Weierstrass<F> o;
        const F u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
        o.a1 = (E.a1 + F(2L) * s) / u;
        o.a2 = (E.a2 - s * E.a1 + F(3L) * r - s * s) / u2;
        o.a3 = (E.a3 + r * E.a1 + F(2L) * t) / u3;
        o.a4 = (E.a4 - s * E.a3 + F(2L) * r * E.a2 - (t + r * s) * E.a1 + F(3L) * r * r - F(2L) * s * t) / u4;
        o.a6 = (E.a6 + r * E.a4 + r * r * E.a2 + r * r * r - t * E.a3 - t * t - r * t * E.a1) / u6;
        return o;
    }

    /// Point on the source model to the transformed model.
    Point<F> map(const Point<F>& P) const {
        if (P.infinity) return P;
        const F u2 = u * u;
        const F x = (P.x - r) / u2;
        const F y = (P.y - s * (P.x - r) - t) / (u2 * u);
        return Point<F>::affine(x, y);
    }

    /// Point on the transformed model back to the source model.
    Point<F> unmap(const Point<F>& P) const {
        if (P.infinity) return P;
        const F u2 = u * u;
        return Point<F>::affine(u2 * P.x + r, u2 * u * P.y + s * u2 * P.x + t);
    }

    /// Apply this, then `next`.
    Isomorphism then(const Isomorphism& next) const {
        Isomorphism c;
        c.u = u * next.u;
        c.r = r + u * u * next.r;
        c.s = s + u * next.s;
        c.t = t + s * u * u * next.r + u * u * u * next.t;
        return c;
    }
};

using CurveQ = Weierstrass<Rat>;
using PointQ = Point<Rat>;

inline std::string to_string(const PointQ& P) {
    if (P.infinity) return "O";
    return "(" + P.x.get_str() + "," + P.y.get_str() + ")";
}

}  // namespace sha5
