#pragma once

#include "arith/bigint.hpp"

#include <utility>
#include <vector>

namespace sha5 {


/// Dense univariate polynomial, coefficients stored low degree first.
/// F is any exact field type with +,-,*,/ and an is_zero overload.
template <class F>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<F> c) : c_(std::move(c)) { trim(); }

    static Poly constant(const F& a) { return Poly(std::vector<F>{a}); }
    /// x - a
    static Poly linear_root(const F& a, const F& one) { return Poly(std::vector<F>{-a, one}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero_poly() const { return c_.empty(); }
    const std::vector<F>& coeffs() const { return c_; }
    const F& lead() const { return c_.back(); }
    F coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : F(0); }

    F operator()(const F& x) const {
        if (c_.empty()) return F(0);
        F r = c_.back();
        for (int i = degree() - 1; i >= 0; --i) r = r * x + c_[static_cast<std::size_t>(i)];
        return r;
    }

    Poly derivative() const {
        std::vector<F> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * F(static_cast<long>(i)));
        return Poly(std::move(d));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<F> r(std::max(a.c_.size(), b.c_.size()), F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<F> r(std::max(a.c_.size(), b.c_.size()), F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] - b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.c_.empty() || b.c_.empty()) return Poly();
        std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(const F& s, const Poly& a) {
        std::vector<F> r = a.c_;
        for (auto& x : r) x = s * x;
        return Poly(std::move(r));
    }

    /// Euclidean division; b must be nonzero.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.c_.empty()) throw DomainError("Poly::divmod by zero");
        std::vector<F> rem = a.c_;
        const int db = b.degree();
        std::vector<F> q(a.degree() >= db ? static_cast<std::size_t>(a.degree() - db + 1) : 0, F(0));
        for (int i = a.degree(); i >= db; --i) {
            const F t = rem[static_cast<std::size_t>(i)] / b.lead();
            q[static_cast<std::size_t>(i - db)] = t;
            for (int j = 0; j <= db; ++j) {
                auto& slot = rem[static_cast<std::size_t>(i - db + j)];
                slot = slot - t * b.c_[static_cast<std::size_t>(j)];
            }
        }
        return {Poly(std::move(q)), Poly(std::move(rem))};
    }

    Poly monic() const {
        if (c_.empty()) return *this;
        const F inv = F(1) / lead();
        return inv * (*this);
    }

    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero_poly()) {
            Poly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    bool operator==(const Poly& o) const {
        if (c_.size() != o.c_.size()) return false;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!is_zero(c_[i] - o.c_[i])) return false;
        return true;
    }

private:
    void trim() {
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
    }

    std::vector<F> c_;
};

using QPoly = Poly<Rat>;

/// All distinct rational roots, ascending. Uses Hensel lifting at a prime of
/// squarefree reduction followed by rational reconstruction; every returned
/// root is verified exactly.
std::vector<Rat> rational_roots(const QPoly& f);

/// Rational reconstruction: a/b with a = b*r mod m and |a|,|b| <= bound.
bool rational_reconstruct(const Int& r, const Int& m, const Int& bound, Rat& out);

}  // namespace sha5
