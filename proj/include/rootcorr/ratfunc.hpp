#ifndef ROOTCORR_RATFUNC_HPP
#define ROOTCORR_RATFUNC_HPP

#include <stdexcept>
#include <string>
#include <utility>

#include "rootcorr/poly.hpp"

namespace rootcorr {

// Reduced rational function num/den: gcd(num, den) constant, den monic and
// nonzero. The zero function is 0/1.
class RatFunc {
public:
    RatFunc() : den_(Poly::one()) {}
    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }
    explicit RatFunc(Poly num) : num_(std::move(num)), den_(Poly::one()) {}
    explicit RatFunc(GaussianRational c) : num_(Poly(std::move(c))), den_(Poly::one()) {}

    static RatFunc zero() { return RatFunc(); }
    static RatFunc one() { return RatFunc(Poly::one()); }
    static RatFunc constant(long v) { return RatFunc(Poly::constant(v)); }
    static RatFunc x() { return RatFunc(Poly::x()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_ == Poly::one(); }
    bool is_one() const { return den_ == Poly::one() && num_ == Poly::one(); }

    // Throws if the function is not a polynomial.
    const Poly& as_poly() const {
        if (!is_poly()) throw std::domain_error("RatFunc: not a polynomial");
        return num_;
    }

    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc pow(unsigned e) const {
        RatFunc r = RatFunc::one();
        RatFunc b = *this;
        while (e) {
            if (e & 1u) r = r * b;
            b = b * b;
            e >>= 1u;
        }
        return r;
    }

    std::complex<double> eval(std::complex<double> z) const {
        return num_.eval(z) / den_.eval(z);
    }

private:
    void reduce() {
        if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
        if (num_.is_zero()) {
            den_ = Poly::one();
            return;
        }
        Poly g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        GaussianRational lead_inv = den_.leading().inverse();
        num_ = lead_inv * num_;
        den_ = lead_inv * den_;
    }

    Poly num_;
    Poly den_;
};

inline std::string to_string(const RatFunc& r) {
    if (r.is_poly()) return to_string(r.num());
    return "(" + to_string(r.num()) + ")/(" + to_string(r.den()) + ")";
}

}  // namespace rootcorr

#endif
