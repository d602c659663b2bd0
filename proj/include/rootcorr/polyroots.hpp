#ifndef ROOTCORR_POLYROOTS_HPP
#define ROOTCORR_POLYROOTS_HPP

#include <Eigen/Dense>

#include <boost/multiprecision/cpp_complex.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "rootcorr/poly.hpp"

namespace rootcorr {

using Complex = std::complex<double>;

inline constexpr double kTauRoot = 1e-10;  // backward-error certificate

namespace detail {

inline Complex horner(const std::vector<Complex>& c, Complex z) {
    Complex acc;
    for (size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

inline Complex horner_deriv(const std::vector<Complex>& c, Complex z) {
    Complex acc;
    for (size_t k = c.size(); k-- > 1;) acc = acc * z + double(k) * c[k];
    return acc;
}

// sum |c_k| |z|^k, the natural scale for the backward error of p(z)
inline double eval_scale(const std::vector<Complex>& c, Complex z) {
    double az = std::abs(z), acc = 0.0, p = 1.0;
    for (size_t k = 0; k < c.size(); ++k) {
        acc += std::abs(c[k]) * p;
        p *= az;
    }
    return std::max(acc, 1e-300);
}

inline std::vector<Complex> companion_roots(const std::vector<Complex>& c) {
    int n = static_cast<int>(c.size()) - 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) m(i, n - 1) = -c[i] / c[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    std::vector<Complex> roots(n);
    for (int i = 0; i < n; ++i) roots[i] = es.eigenvalues()(i);
    return roots;
}

// Ehrlich-Aberth simultaneous iteration. Returns false if not converged.
inline bool aberth(const std::vector<Complex>& c, std::vector<Complex>& roots) {
    int n = static_cast<int>(roots.size());
    const int max_iter = 200;
    for (int iter = 0; iter < max_iter; ++iter) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            Complex p = horner(c, roots[i]);
            if (!std::isfinite(std::abs(p))) {
                // runaway iterate overflowed the evaluation; pull it inward
                roots[i] *= 0.5;
                worst = 1.0;
                continue;
            }
            double scale = eval_scale(c, roots[i]);
            if (std::abs(p) <= 1e-14 * scale) continue;
            Complex dp = horner_deriv(c, roots[i]);
            if (dp == Complex(0)) {
                roots[i] += 1e-8 * (1.0 + std::abs(roots[i]));
                worst = 1.0;
                continue;
            }
            Complex newton = p / dp;
            Complex repel;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                Complex d = roots[i] - roots[j];
                if (std::abs(d) < 1e-100) d = Complex(1e-100, 0);
                repel += 1.0 / d;
            }
            Complex corr = newton / (1.0 - newton * repel);
            roots[i] -= corr;
            worst = std::max(worst, std::abs(corr) / (1.0 + std::abs(roots[i])));
        }
        if (worst < 1e-14) return true;
    }
    return false;
}

}  // namespace detail

// All complex roots (with multiplicity) of the polynomial with coefficients
// `coeffs` (ascending degree). Backward-error certified against kTauRoot.
inline std::vector<Complex> roots_direct(std::vector<Complex> coeffs) {
    while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    if (coeffs.size() <= 1)
        throw std::domain_error("roots_direct: polynomial has degree < 1");
    for (const Complex& c : coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::overflow_error("roots_direct: coefficient overflow");

    std::vector<Complex> roots;
    // explicit roots at the origin
    size_t nz = 0;
    while (nz < coeffs.size() && std::abs(coeffs[nz]) == 0.0) ++nz;
    for (size_t k = 0; k < nz; ++k) roots.push_back(Complex(0));
    coeffs.erase(coeffs.begin(), coeffs.begin() + nz);

    int n = static_cast<int>(coeffs.size()) - 1;
    if (n >= 1) {
        // initial guesses on a circle at the Fujiwara root bound. Unlike the
        // Cauchy bound this stays moderate for large coefficient ratios, so
        // Horner evaluation at the guesses cannot overflow.
        double r = 0.0;
        for (int k = 1; k <= n; ++k)
            r = std::max(r, std::pow(std::abs(coeffs[n - k] / coeffs[n]), 1.0 / k));
        r = 2.0 * r + 1e-3;
        std::vector<Complex> guess(n);
        for (int i = 0; i < n; ++i) {
            double th = 2.0 * M_PI * (i + 0.25) / n + 0.42;
            guess[i] = r * Complex(std::cos(th), std::sin(th));
        }
        bool ok = detail::aberth(coeffs, guess);
        if (!ok && n <= 50) {
            guess = detail::companion_roots(coeffs);
            detail::aberth(coeffs, guess);
        }
        // final Newton polish
        for (Complex& z : guess) {
            for (int it = 0; it < 3; ++it) {
                Complex p = detail::horner(coeffs, z);
                Complex dp = detail::horner_deriv(coeffs, z);
                if (dp == Complex(0)) break;
                Complex step = p / dp;
                if (!(std::abs(step) < 1.0 + std::abs(z))) break;
                z -= step;
            }
        }
        for (Complex& z : guess) {
            double err = std::abs(detail::horner(coeffs, z)) / detail::eval_scale(coeffs, z);
            if (!(err <= kTauRoot))  // also rejects NaN
                throw std::runtime_error("roots_direct: backward error above tolerance");
            roots.push_back(z);
        }
    }
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return roots;
}

namespace detail {

// One multiprecision Ehrlich-Aberth pass against the exact coefficients.
// Double arithmetic is backward stable but the monomial basis can amplify
// coefficient rounding into large forward errors (Wilkinson effect), so the
// double-precision estimates are refined at 50 digits before rounding back.
inline void refine_mp(const Poly& poly, std::vector<Complex>& roots) {
    using MC = boost::multiprecision::cpp_complex_50;
    using MF = MC::value_type;
    int n = poly.degree();
    if (static_cast<int>(roots.size()) != n) return;
    std::vector<MC> c(n + 1), z(n);
    for (int k = 0; k <= n; ++k)
        c[k] = MC(poly[k].re.template convert_to<MF>(),
                  poly[k].im.template convert_to<MF>());
    for (int i = 0; i < n; ++i) z[i] = MC(roots[i].real(), roots[i].imag());
    const MF tol("1e-35"), tiny("1e-80");
    for (int iter = 0; iter < 40; ++iter) {
        MF worst = 0;
        for (int i = 0; i < n; ++i) {
            MC p = 0, dp = 0;
            for (int k = n; k >= 0; --k) {
                dp = dp * z[i] + p;
                p = p * z[i] + c[k];
            }
            if (p == MC(0) || dp == MC(0)) continue;
            MC newton = p / dp;
            MC repel = 0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                MC d = z[i] - z[j];
                if (abs(d) < tiny) d = MC(tiny);
                repel += MC(1) / d;
            }
            MC corr = newton / (MC(1) - newton * repel);
            z[i] -= corr;
            MF rel = abs(corr) / (1 + abs(z[i]));
            if (rel > worst) worst = rel;
        }
        if (worst < tol) break;
    }
    for (int i = 0; i < n; ++i)
        roots[i] = Complex(z[i].real().template convert_to<double>(),
                           z[i].imag().template convert_to<double>());
}

}  // namespace detail

inline std::vector<Complex> roots_direct(const Poly& p) {
    if (p.is_zero() || p.degree() < 1)
        throw std::domain_error("roots_direct: polynomial has degree < 1");
    std::vector<Complex> roots = roots_direct(p.to_complex_coeffs());
    detail::refine_mp(p, roots);
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return roots;
}

}  // namespace rootcorr

#endif
