#pragma once

#include "arith/primes.hpp"

#include <cstdint>
#include <stdexcept>

namespace sha5 {

/// Element of F_p with the modulus held per thread; set it with FpScope.
class Fp {
public:
    Fp() = default;
    Fp(long v) : v_(reduce(v)) {}  // NOLINT(google-explicit-constructor)
    static Fp raw(std::uint64_t v) {
        Fp r;
        r.v_ = v % modulus();
        return r;
    }

    std::uint64_t value() const { return v_; }
    static std::uint64_t modulus() { return p_; }

    friend Fp operator+(Fp a, Fp b) {
        std::uint64_t s = a.v_ + b.v_;
        if (s >= p_) s -= p_;
        return raw_unchecked(s);
    }
    friend Fp operator-(Fp a, Fp b) { return raw_unchecked(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + p_ - b.v_); }
    friend Fp operator-(Fp a) { return raw_unchecked(a.v_ ? p_ - a.v_ : 0); }
    friend Fp operator*(Fp a, Fp b) { return raw_unchecked(mulmod(a.v_, b.v_, p_)); }
    friend Fp operator/(Fp a, Fp b) {
        if (b.v_ == 0) throw std::domain_error("Fp: division by zero");
        return raw_unchecked(mulmod(a.v_, invmod(b.v_, p_), p_));
    }
    friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }

private:
    friend class FpScope;
    static Fp raw_unchecked(std::uint64_t v) {
        Fp r;
        r.v_ = v;
        return r;
    }
    static std::uint64_t reduce(long v) {
        const long m = static_cast<long>(p_);
        long r = v % m;
        return static_cast<std::uint64_t>(r < 0 ? r + m : r);
    }

    std::uint64_t v_ = 0;
    static inline thread_local std::uint64_t p_ = 0;
};

inline bool is_zero(Fp x) { return x.value() == 0; }

/// Sets the thread's F_p modulus for its lifetime and restores the previous one.
class FpScope {
public:
    explicit FpScope(std::uint64_t p) : saved_(Fp::p_) { Fp::p_ = p; }
    ~FpScope() { Fp::p_ = saved_; }
    FpScope(const FpScope&) = delete;
    FpScope& operator=(const FpScope&) = delete;

private:
    std::uint64_t saved_;
};

}  // namespace sha5
