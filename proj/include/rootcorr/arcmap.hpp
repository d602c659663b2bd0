#ifndef ROOTCORR_ARCMAP_HPP
#define ROOTCORR_ARCMAP_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "rootcorr/polyroots.hpp"
#include "rootcorr/triple.hpp"

namespace rootcorr {

struct ArcTolerances {
    double tau_curve = 1e-8;
    double tau_seed = 1e-6;
    double eps_deriv = 1e-6;
    double tau_pole = 1e-12;
    double tau_sep = 1e-6;
};

class ArcError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// h(z) = B(z)^2 / A(z) evaluated in floating point.
inline Complex h_eval(const GenTriple& t, Complex z, double tau_pole = 1e-12) {
    Complex a = t.A.eval(z);
    Complex b = t.B.eval(z);
    if (std::abs(a) < tau_pole) throw ArcError("h_eval: pole of h (A(z) ~ 0)");
    return b * b / a;
}

// c(t) = 4 cos^2(pi t), the level of h along the parametrization.
inline double arc_level(double t) {
    double c = std::cos(M_PI * t);
    return 4.0 * c * c;
}

// Single-sheet parametrization f : [t0, t1] -> J of a subarc of the carrier
// curve, f(t) = h^{-1}(4 cos^2 pi t), built by root continuation. Grid nodes
// carry f(t), |f'(t)| and cumulative arclength.
class ArcSpec {
public:
    GenTriple triple;
    double t0 = 0, t1 = 0;
    ArcTolerances tol;
    std::vector<double> ts;
    std::vector<Complex> zs;
    std::vector<double> fps;   // |f'(t)| at nodes
    std::vector<double> cum;   // arclength from t0 to node

    double interval_length() const { return t1 - t0; }
    double arc_length() const { return cum.back(); }

    // |f'(t)| by the chain rule |c'(t)| / |h'(f(t))|, falling back to a
    // finite difference near branch points where both vanish.
    double fprime_at(double t) const {
        Complex z = f_at(t);
        double cp = std::abs(-4.0 * M_PI * std::sin(2.0 * M_PI * t));
        Complex hp = h_prime(z);
        double ahp = std::abs(hp);
        if (ahp > 1e-7 && cp > 1e-7) return cp / ahp;
        // 0/0 at c' = 0 branch points: centered finite difference
        double dt = 1e-6 * std::max(1.0, t1 - t0);
        double lo = std::max(t - dt, t0), hi = std::min(t + dt, t1);
        return std::abs(f_at(hi) - f_at(lo)) / (hi - lo);
    }

    // f(t): grid interpolation polished by Newton on B^2 - c(t) A.
    Complex f_at(double t) const {
        if (t < t0 - 1e-12 || t > t1 + 1e-12)
            throw ArcError("f_at: parameter outside I");
        t = std::clamp(t, t0, t1);
        size_t i = locate(t);
        double w = (ts[i + 1] == ts[i]) ? 0.0 : (t - ts[i]) / (ts[i + 1] - ts[i]);
        Complex z = (1.0 - w) * zs[i] + w * zs[i + 1];
        return polish(z, arc_level(t));
    }

    // arclength from t0 to t along J (pullback of |f'|)
    double arclen_at(double t) const {
        if (t <= t0) return 0.0;
        if (t >= t1) return cum.back();
        size_t i = locate(t);
        // Simpson on the partial interval
        double a = ts[i], fa = fps[i];
        double fm = fprime_at(0.5 * (a + t));
        double fb = fprime_at(t);
        return cum[i] + (t - a) / 6.0 * (fa + 4.0 * fm + fb);
    }

    Complex h_prime(Complex z) const {
        Complex a = triple.A.eval(z);
        Complex b = triple.B.eval(z);
        Complex ap = triple.A.as_poly().derivative().eval(z);
        Complex bp = triple.B.as_poly().derivative().eval(z);
        return (2.0 * b * bp * a - b * b * ap) / (a * a);
    }

    // Newton-refine z as a root of G(z) = B(z)^2 - c A(z). Near c = 0 the
    // root collapses onto a root of B; refine on B there instead.
    Complex polish(Complex z, double c) const {
        const Poly& A = triple.A.as_poly();
        const Poly& B = triple.B.as_poly();
        if (c < 1e-13) {
            for (int it = 0; it < 50; ++it) {
                Complex b = B.eval(z), bp = B.derivative().eval(z);
                if (std::abs(bp) < 1e-300) break;
                Complex step = b / bp;
                z -= step;
                if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
            }
            return z;
        }
        Poly Bd = B.derivative();
        Poly Ad = A.derivative();
        for (int it = 0; it < 50; ++it) {
            Complex b = B.eval(z), a = A.eval(z);
            Complex g = b * b - c * a;
            Complex gp = 2.0 * b * Bd.eval(z) - c * Ad.eval(z);
            if (std::abs(gp) < 1e-300) break;
            Complex step = g / gp;
            z -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
        }
        return z;
    }

private:
    size_t locate(double t) const {
        auto it = std::upper_bound(ts.begin(), ts.end(), t);
        size_t i = static_cast<size_t>(std::max<ptrdiff_t>(0, it - ts.begin() - 1));
        return std::min(i, ts.size() - 2);
    }
};

// Predictor-corrector continuation of the root z(t) of B^2 - c(t) A from a
// seed in the fiber over t0. At each node every root of B^2 - c A is computed
// and the one nearest the extrapolated trajectory is kept; at t = 1/2 (c = 0)
// the node is glued to the nearest root of B.
inline ArcSpec build_arc(const GenTriple& t, double t0, double t1, Complex seed,
                         int n_grid = 2048, ArcTolerances tol = {}) {
    if (!t.standard) throw InvalidTriple("build_arc: triple not in standard form");
    if (!(0.0 < t0 && t0 < t1 && t1 < 1.0))
        throw ArcError("build_arc: need 0 < t0 < t1 < 1");
    if (n_grid < 2) throw ArcError("build_arc: n_grid < 2");

    const Poly& A = t.A.as_poly();
    const Poly& B = t.B.as_poly();

    ArcSpec spec;
    spec.triple = t;
    spec.t0 = t0;
    spec.t1 = t1;
    spec.tol = tol;

    // uniform grid; insert the branch point t = 1/2 if it is interior
    std::vector<double>& ts = spec.ts;
    for (int i = 0; i < n_grid; ++i)
        ts.push_back(t0 + (t1 - t0) * i / (n_grid - 1));
    if (t0 < 0.5 && 0.5 < t1) ts.push_back(0.5);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    double c0 = arc_level(t0);
    {
        Complex h0;
        try {
            h0 = h_eval(t, seed, tol.tau_pole);
        } catch (const ArcError&) {
            throw ArcError("build_arc: seed at a pole of h");
        }
        if (std::abs(h0 - c0) > tol.tau_seed)
            throw ArcError("build_arc: seed off-curve (|h(seed) - c(t0)| > tau_seed)");
    }

    std::vector<Complex>& zs = spec.zs;
    for (size_t i = 0; i < ts.size(); ++i) {
        double c = arc_level(ts[i]);
        Complex pred;
        if (i == 0) {
            pred = seed;
        } else if (i == 1) {
            pred = zs[0];
        } else {
            pred = 2.0 * zs[i - 1] - zs[i - 2];  // linear extrapolation
        }
        Complex z;
        if (std::abs(ts[i] - 0.5) < 1e-14) {
            // branch gluing: the tracked root collides with its sibling at a
            // root of B; take the root of B nearest the incoming trajectory
            std::vector<Complex> rb = roots_direct(B);
            z = rb[0];
            for (Complex r : rb)
                if (std::abs(r - pred) < std::abs(z - pred)) z = r;
            z = spec.polish(z, 0.0);
        } else {
            std::vector<Complex> cand;
            {
                // roots of B^2 - c A in double arithmetic
                std::vector<Complex> cb = (B * B).to_complex_coeffs();
                std::vector<Complex> ca = A.to_complex_coeffs();
                std::vector<Complex> gc(std::max(cb.size(), ca.size()));
                for (size_t k = 0; k < cb.size(); ++k) gc[k] += cb[k];
                for (size_t k = 0; k < ca.size(); ++k) gc[k] -= c * ca[k];
                cand = roots_direct(gc);
            }
            z = cand[0];
            for (Complex r : cand)
                if (std::abs(r - pred) < std::abs(z - pred)) z = r;
            z = spec.polish(z, c);
        }
        zs.push_back(z);
        if (i > 1 && std::abs(ts[i] - 0.5) < 1e-14) {
            // the two one-sided continuations must join smoothly
            if (std::abs(zs[i] - zs[i - 1]) >
                tol.tau_sep + 4.0 * std::abs(zs[i - 1] - zs[i - 2]) + 1e-3)
                throw ArcError("build_arc: one-sided continuations fail to join at t = 1/2");
        }
    }

    // curve membership and derivative checks
    spec.fps.resize(ts.size());
    for (size_t i = 0; i < ts.size(); ++i) {
        Complex h = h_eval(t, zs[i], tol.tau_pole);
        if (std::abs(h.imag()) > tol.tau_curve || h.real() < -tol.tau_curve ||
            h.real() > 4.0 + tol.tau_curve)
            throw ArcError("build_arc: node off the carrier curve");
        spec.fps[i] = spec.fprime_at(ts[i]);
        if (!(spec.fps[i] >= tol.eps_deriv))
            throw ArcError("build_arc: |f'| below eps_deriv (f' = 0 hypothesis violated)");
    }

    // injectivity on the grid: non-adjacent nodes must stay separated. The
    // threshold scales with the local node spacing so that densely sampled
    // (or very short) arcs are not flagged spuriously.
    {
        std::vector<double> adj(ts.size(), 0.0);
        for (size_t i = 0; i + 1 < ts.size(); ++i)
            adj[i] = std::abs(zs[i + 1] - zs[i]);
        if (ts.size() >= 2) adj[ts.size() - 1] = adj[ts.size() - 2];
        for (size_t i = 0; i + 2 < ts.size(); ++i)
            for (size_t j = i + 2; j < ts.size(); ++j) {
                double thr = std::min(tol.tau_sep, 0.25 * (adj[i] + adj[j]));
                if (std::abs(zs[i] - zs[j]) < thr)
                    throw ArcError("build_arc: grid not injective (sheet collision)");
            }
    }

    // cumulative arclength, Simpson per interval
    spec.cum.resize(ts.size());
    spec.cum[0] = 0.0;
    for (size_t i = 0; i + 1 < ts.size(); ++i) {
        double mid = 0.5 * (ts[i] + ts[i + 1]);
        double fm = spec.fprime_at(mid);
        spec.cum[i + 1] = spec.cum[i] +
            (ts[i + 1] - ts[i]) / 6.0 * (spec.fps[i] + 4.0 * fm + spec.fps[i + 1]);
    }
    return spec;
}

// l(J) = int_I |f'| dt; already accumulated on the grid.
inline double arc_length(const ArcSpec& spec) { return spec.arc_length(); }

inline double f_prime_mag(const ArcSpec& spec, double t) { return spec.fprime_at(t); }

}  // namespace rootcorr

#endif
