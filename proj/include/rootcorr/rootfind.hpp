#ifndef ROOTCORR_ROOTFIND_HPP
#define ROOTCORR_ROOTFIND_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "rootcorr/arcmap.hpp"
#include "rootcorr/genseq.hpp"
#include "rootcorr/polyroots.hpp"

namespace rootcorr {

// One root of H_m (or of the product), with its source index and, when it was
// produced through the curve parametrization, the fraction label p/q with
// q = m + 1.
struct RootRecord {
    Complex z;
    int m = 0;
    int p = -1;  // label p/q; -1 when unlabeled
    int q = -1;
    int mult = 1;
    bool degenerate = false;  // common zero of A and B; excluded from statistics
    const char* method = "curve";
};

inline void sort_records(std::vector<RootRecord>& v) {
    std::sort(v.begin(), v.end(), [](const RootRecord& a, const RootRecord& b) {
        if (a.m != b.m) return a.m < b.m;
        if (a.p != b.p) return a.p < b.p;
        if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
        return a.z.imag() < b.z.imag();
    });
}

// c grid over [0, 4] with all fiber points B^2 - c A = 0, for plotting.
struct CurveSample {
    double c;
    std::vector<Complex> points;
};

namespace detail {

// double coefficients of B^2 - c A
inline std::vector<Complex> level_poly(const Poly& A, const Poly& B, double c) {
    std::vector<Complex> cb = (B * B).to_complex_coeffs();
    std::vector<Complex> ca = A.to_complex_coeffs();
    std::vector<Complex> g(std::max(cb.size(), ca.size()));
    for (size_t k = 0; k < cb.size(); ++k) g[k] += cb[k];
    for (size_t k = 0; k < ca.size(); ++k) g[k] -= c * ca[k];
    while (!g.empty() && std::abs(g.back()) == 0.0) g.pop_back();
    return g;
}

// exact common zeros of A and B (degenerate points of the q-discriminant
// argument), as numerical roots of gcd(A, B)
inline std::vector<Complex> degenerate_points(const Poly& A, const Poly& B) {
    if (B.is_zero()) return {};
    Poly g = poly_gcd(A, B);
    if (g.is_constant()) return {};
    return roots_direct(g);
}

inline bool near_any(Complex z, const std::vector<Complex>& set, double tol) {
    for (Complex w : set)
        if (std::abs(z - w) < tol) return true;
    return false;
}

}  // namespace detail

// Roots of H_m via the q-discriminant mechanism: for each (m+1)-th root of
// unity pair q, q^{-1} (q != 1) solve B^2 = (q + q^{-1} + 2) A. Levels are
// c_j = 2 + 2 cos(2 pi j / (m+1)), j = 1..floor(m/2); q = -1 (m+1 even)
// contributes the roots of B once each. With an ArcSpec, roots on the sheet
// get fraction labels p/(m+1) by nearest-preimage matching.
inline std::vector<RootRecord> roots_curve(const GenTriple& t, int m,
                                           const ArcSpec* spec = nullptr,
                                           double tau_pole = 1e-12) {
    if (!t.standard) throw InvalidTriple("roots_curve: triple not in standard form");
    if (m < 1) throw std::invalid_argument("roots_curve: m < 1");
    const Poly& A = t.A.as_poly();
    const Poly& B = t.B.as_poly();

    // Common zeros of A and B solve every level polynomial but carry no
    // fraction; the q-discriminant argument assumes A(z) != 0 there. They are
    // kept as flagged records and excluded from statistics downstream.
    std::vector<Complex> degen = detail::degenerate_points(A, B);
    std::vector<RootRecord> out;

    auto label_and_push = [&](Complex z, int j, double c) {
        RootRecord rec{z, m, -1, m + 1, 1, false, "curve"};
        if (std::abs(A.eval(z)) < tau_pole || detail::near_any(z, degen, 1e-9)) {
            rec.degenerate = true;
        } else if (spec) {
            double ta = double(j) / (m + 1);
            double tb = 1.0 - ta;
            double best = 1e300;
            int bestp = -1;
            for (auto [tt, pp] : {std::pair{ta, j}, std::pair{tb, m + 1 - j}}) {
                if (tt <= spec->t0 || tt >= spec->t1) continue;
                double d = std::abs(spec->f_at(tt) - z);
                if (d < best) {
                    best = d;
                    bestp = pp;
                }
            }
            if (bestp >= 0 && best < 1e-6) rec.p = bestp;
        }
        out.push_back(rec);
    };

    int half = m / 2;
    for (int j = 1; j <= half; ++j) {
        double c = 2.0 + 2.0 * std::cos(2.0 * M_PI * j / (m + 1));
        std::vector<Complex> g = detail::level_poly(A, B, c);
        if (g.empty())
            throw std::runtime_error("roots_curve: B^2 - c A identically zero");
        if (g.size() <= 1) continue;  // no roots at this level
        for (Complex z : roots_direct(g)) {
            // polish on the exact level polynomial
            if (spec) z = spec->polish(z, c);
            label_and_push(z, j, c);
        }
    }
    if ((m + 1) % 2 == 0 && !B.is_zero() && B.degree() >= 1) {
        // q = -1: distinct roots of B, emitted once each
        for (Complex z : roots_direct(square_free_part(B))) {
            RootRecord rec{z, m, -1, m + 1, 1, false, "curve"};
            if (std::abs(A.eval(z)) < tau_pole || detail::near_any(z, degen, 1e-9))
                rec.degenerate = true;
            else if (spec && spec->t0 < 0.5 && 0.5 < spec->t1 && (m + 1) / 2 >= 1) {
                double d = std::abs(spec->f_at(0.5) - z);
                if (d < 1e-6) rec.p = (m + 1) / 2;
            }
            out.push_back(rec);
        }
    }
    sort_records(out);
    return out;
}

// Roots of prod_{k=1}^{n} H_k, counting multiplicity. Without an arc the
// records concatenate roots_curve over k. With an arc, only the roots whose
// fraction p/(k+1) lies in the open parameter interval are produced, directly
// as f(p/(k+1)) polished on the level polynomial.
inline std::vector<RootRecord> product_roots(const GenTriple& t, int n,
                                             const ArcSpec* spec = nullptr) {
    if (n < 1) throw std::invalid_argument("product_roots: n < 1");
    std::vector<RootRecord> out;
    if (spec) {
        for (int k = 1; k <= n; ++k) {
            int q = k + 1;
            for (int p = 1; p < q; ++p) {
                double frac = double(p) / q;
                if (frac <= spec->t0 || frac >= spec->t1) continue;
                Complex z = spec->f_at(frac);
                out.push_back({z, k, p, q, 1, false, "curve"});
            }
        }
    } else {
        for (int k = 1; k <= n; ++k)
            for (RootRecord& rec : roots_curve(t, k)) out.push_back(rec);
    }
    sort_records(out);
    return out;
}

// Fibers of h over an n_c-point grid of c in [0, 4].
inline std::vector<CurveSample> sample_curve(const GenTriple& t, int n_c) {
    if (!t.standard) throw InvalidTriple("sample_curve: triple not in standard form");
    if (n_c < 2) throw std::invalid_argument("sample_curve: n_c < 2");
    const Poly& A = t.A.as_poly();
    const Poly& B = t.B.as_poly();
    std::vector<CurveSample> out;
    for (int i = 0; i < n_c; ++i) {
        double c = 4.0 * i / (n_c - 1);
        std::vector<Complex> g = detail::level_poly(A, B, c);
        CurveSample s{c, {}};
        if (g.size() > 1) s.points = roots_direct(g);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace rootcorr

#endif
