#ifndef ROOTCORR_POLY_HPP
#define ROOTCORR_POLY_HPP

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rootcorr/rational.hpp"

namespace rootcorr {

// Univariate polynomial over the Gaussian rationals. Coefficients are stored
// by ascending degree with trailing zeros stripped; the zero polynomial is the
// empty vector and has degree -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(GaussianRational c) {
        if (!c.is_zero()) coeffs_.push_back(std::move(c));
    }
    explicit Poly(std::vector<GaussianRational> coeffs) : coeffs_(std::move(coeffs)) {
        normalize();
    }

    static Poly zero() { return Poly(); }
    static Poly one() { return constant(1); }
    static Poly constant(long v) { return Poly(GaussianRational(v)); }
    static Poly x() { return Poly({GaussianRational(0), GaussianRational(1)}); }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_constant() const { return coeffs_.size() <= 1; }

    const std::vector<GaussianRational>& coeffs() const { return coeffs_; }

    const GaussianRational& operator[](size_t k) const {
        static const GaussianRational kZero;
        return k < coeffs_.size() ? coeffs_[k] : kZero;
    }

    const GaussianRational& leading() const {
        if (is_zero()) throw std::domain_error("Poly: leading coefficient of zero polynomial");
        return coeffs_.back();
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    Poly& operator+=(const Poly& o) {
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        normalize();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        normalize();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<GaussianRational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            for (size_t j = 0; j < b.coeffs_.size(); ++j)
                c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Poly(std::move(c));
    }

    friend Poly operator*(const GaussianRational& s, Poly p) {
        for (auto& c : p.coeffs_) c = s * c;
        p.normalize();
        return p;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Euclidean division: *this = q * d + r with deg r < deg d.
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
        Poly r = *this;
        if (r.degree() < d.degree()) return {Poly(), r};
        std::vector<GaussianRational> q(r.degree() - d.degree() + 1);
        GaussianRational lead_inv = d.leading().inverse();
        while (!r.is_zero() && r.degree() >= d.degree()) {
            int shift = r.degree() - d.degree();
            GaussianRational f = r.leading() * lead_inv;
            q[shift] = f;
            // r -= f * x^shift * d
            std::vector<GaussianRational> sub(shift + d.coeffs_.size());
            for (size_t k = 0; k < d.coeffs_.size(); ++k) sub[shift + k] = f * d.coeffs_[k];
            r -= Poly(std::move(sub));
        }
        return {Poly(std::move(q)), r};
    }

    friend Poly operator/(const Poly& a, const Poly& b) {
        auto [q, r] = a.divmod(b);
        if (!r.is_zero()) throw std::domain_error("Poly: inexact division");
        return q;
    }

    Poly pow(unsigned e) const {
        Poly r = Poly::one();
        Poly b = *this;
        while (e) {
            if (e & 1u) r = r * b;
            b = b * b;
            e >>= 1u;
        }
        return r;
    }

    Poly derivative() const {
        if (coeffs_.size() <= 1) return Poly();
        std::vector<GaussianRational> d(coeffs_.size() - 1);
        for (size_t k = 1; k < coeffs_.size(); ++k)
            d[k - 1] = GaussianRational(Rational(k)) * coeffs_[k];
        return Poly(std::move(d));
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return leading().inverse() * *this;
    }

    GaussianRational eval(const GaussianRational& z) const {
        GaussianRational acc;
        for (size_t k = coeffs_.size(); k-- > 0;) acc = acc * z + coeffs_[k];
        return acc;
    }

    std::complex<double> eval(std::complex<double> z) const {
        std::complex<double> acc;
        for (size_t k = coeffs_.size(); k-- > 0;) acc = acc * z + coeffs_[k].to_complex();
        return acc;
    }

    std::vector<std::complex<double>> to_complex_coeffs() const {
        std::vector<std::complex<double>> c(coeffs_.size());
        for (size_t k = 0; k < coeffs_.size(); ++k) c[k] = coeffs_[k].to_complex();
        return c;
    }

private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<GaussianRational> coeffs_;
};

// Monic gcd by the Euclidean algorithm over Q(i).
inline Poly poly_gcd(Poly a, Poly b) {
    if (a.is_zero() && b.is_zero())
        throw std::domain_error("poly_gcd: both inputs zero");
    while (!b.is_zero()) {
        Poly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline bool is_square_free(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("is_square_free: zero polynomial");
    if (p.is_constant()) return true;
    return poly_gcd(p, p.derivative()).is_constant();
}

// p / gcd(p, p'): same roots, all simple.
inline Poly square_free_part(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("square_free_part: zero polynomial");
    if (p.is_constant()) return Poly::one();
    return (p / poly_gcd(p, p.derivative())).monic();
}

// Grammar-compatible rendering, powers descending, e.g. "z^2-2*z+3".
inline std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = p.degree(); k >= 0; --k) {
        const GaussianRational& c = p[k];
        if (c.is_zero()) continue;
        bool first = out.empty();
        std::string cs;
        if (c.is_real() && c.re < 0 && !first) {
            out += "-";
            cs = to_string(GaussianRational(-c.re));
        } else {
            if (!first) out += "+";
            cs = to_string(c);
        }
        bool unit_coeff = (cs == "1");
        if (k == 0) {
            out += cs;
        } else {
            if (!unit_coeff) {
                out += cs;
                out += "*";
            }
            out += "z";
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

}  // namespace rootcorr

#endif
