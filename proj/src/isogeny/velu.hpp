#pragma once

#include "curve/weierstrass.hpp"

#include <stdexcept>
#include <vector>

namespace sha5 {

/// Isogeny with a given finite kernel of odd order, by Velu's formulas.
/// `reps` holds one point from each pair {Q, -Q} of nonzero kernel points.
template <class F>
class VeluIsogeny {
public:
    VeluIsogeny() = default;
    VeluIsogeny(const Weierstrass<F>& domain, std::vector<Point<F>> reps) : domain_(domain), reps_(std::move(reps)) {
        F v(0L), w(0L);
        const F& a1 = domain_.a1;
        for (const auto& Q : reps_) {
            if (Q.infinity) throw std::domain_error("VeluIsogeny: kernel representative is O");
            Data d;
            d.gx = F(3L) * Q.x * Q.x + F(2L) * domain_.a2 * Q.x + domain_.a4 - a1 * Q.y;
            d.gy = F(0L) - F(2L) * Q.y - a1 * Q.x - domain_.a3;
            if (is_zero(d.gy)) throw std::domain_error("VeluIsogeny: kernel contains a point of order 2");
            d.v = F(2L) * d.gx - a1 * d.gy;
            d.u = d.gy * d.gy;
            v = v + d.v;
            w = w + d.u + Q.x * d.v;
            data_.push_back(d);
        }
        codomain_ = domain_;
        codomain_.a4 = domain_.a4 - F(5L) * v;
        codomain_.a6 = domain_.a6 - domain_.b2() * v - F(7L) * w;
    }

    const Weierstrass<F>& domain() const { return domain_; }
    const Weierstrass<F>& codomain() const { return codomain_; }
    const std::vector<Point<F>>& kernel_reps() const { return reps_; }

    Point<F> operator()(const Point<F>& P) const {
        if (P.infinity) return P;
        for (const auto& Q : reps_)
            if (P.x == Q.x) return Point<F>::at_infinity();
        const F& a1 = domain_.a1;
        const F& a3 = domain_.a3;
        F X = P.x, Y = P.y;
        for (std::size_t i = 0; i < reps_.size(); ++i) {
            const auto& Q = reps_[i];
            const auto& d = data_[i];
            const F t = F(1L) / (P.x - Q.x);
            const F t2 = t * t;
            X = X + d.v * t + d.u * t2;
            Y = Y - (d.u * (F(2L) * P.y + a1 * P.x + a3) * t2 * t + d.v * (a1 * (P.x - Q.x) + P.y - Q.y) * t2 +
                     (a1 * d.u - d.gx * d.gy) * t2);
        }
        return Point<F>::affine(X, Y);
    }

    /// X(x) as numerator/denominator data: X = x + sum v_Q/(x-x_Q) + u_Q/(x-x_Q)^2.
    struct Data {
        F gx, gy, v, u;
    };
    const std::vector<Data>& data() const { return data_; }

private:
    Weierstrass<F> domain_, codomain_;
    std::vector<Point<F>> reps_;
    std::vector<Data> data_;
};

}  // namespace sha5
