#ifndef ROOTCORR_CLOSEDFORM_HPP
#define ROOTCORR_CLOSEDFORM_HPP

#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "rootcorr/arcmap.hpp"

namespace rootcorr {

// sigma(k) = sum of positive divisors, by linear-cost sieve, grown lazily.
class DivisorTable {
public:
    explicit DivisorTable(int k_max = 0) { ensure(k_max); }

    void ensure(int k_max) {
        if (k_max <= static_cast<int>(sigma_.size()) - 1) return;
        int n = std::max(k_max, 64);
        sigma_.assign(n + 1, 0);
        for (int d = 1; d <= n; ++d)
            for (int k = d; k <= n; k += d) sigma_[k] += d;
    }

    long long sigma(int k) const {
        if (k < 1) throw std::invalid_argument("sigma: k < 1");
        if (k >= static_cast<int>(sigma_.size()))
            throw std::out_of_range("sigma: beyond table, call ensure()");
        return sigma_[k];
    }

    int size() const { return static_cast<int>(sigma_.size()) - 1; }

private:
    std::vector<long long> sigma_;
};

namespace detail {

inline DivisorTable& shared_sigma_table(int k_max) {
    static DivisorTable table(4096);
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    table.ensure(k_max);
    return table;
}

// 20-point Gauss-Legendre nodes/weights on [-1, 1]
inline const std::vector<std::pair<double, double>>& gl20() {
    static const std::vector<std::pair<double, double>> nw = [] {
        // Newton on Legendre P20 from Chebyshev initial guesses
        std::vector<std::pair<double, double>> out;
        const int n = 20;
        for (int i = 0; i < n; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            out.emplace_back(x, 2.0 / ((1.0 - x * x) * dp * dp));
        }
        return out;
    }();
    return nw;
}

inline double gl_integrate(const std::function<double(double)>& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a), acc = 0.0;
    for (auto [x, w] : gl20()) acc += w * f(mid + half * x);
    return acc * half;
}

}  // namespace detail

inline long long sigma(int k) {
    return detail::shared_sigma_table(k).sigma(k);
}

// g_I(x) = (6 / pi^2 x^2) sum_{1 <= k <= 2x} sigma(k) log(2x / k); the
// limiting pair correlation density of the Farey-like fractions.
inline double g_I(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("g_I: x <= 0");
    int kmax = static_cast<int>(std::floor(2.0 * x));
    if (kmax < 1) return 0.0;
    const DivisorTable& tbl = detail::shared_sigma_table(kmax);
    double s = 0.0;
    for (int k = 1; k <= kmax; ++k) s += double(tbl.sigma(k)) * std::log(2.0 * x / k);
    return 6.0 / (M_PI * M_PI * x * x) * s;
}

// R_I(lambda) = int_0^lambda g_I. The integrand is analytic between
// consecutive half-integers (a new summand enters with log factor 0 at each
// k/2), so panels are pinned there and each is handled by Gauss-Legendre.
inline double R_I(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("R_I: lambda <= 0");
    if (lambda <= 0.5) return 0.0;
    double acc = 0.0;
    double a = 0.5;
    while (a < lambda) {
        double b = std::min(lambda, 0.5 * (std::floor(2.0 * a + 1e-12) + 1.0));
        if (b <= a) break;
        acc += detail::gl_integrate([](double x) { return g_I(x); }, a, b);
        a = b;
    }
    return acc;
}

// g_J via Eq-style quadrature against an arbitrary |f'|:
//   g_J(x) = l(J)/|I|^2 * int_I g_I( l(J) x / (|I| |f'(t)|) ) dt / |f'(t)|.
// The integrand kinks wherever the g_I argument crosses a half-integer;
// those t are located by bisection and registered as panel boundaries.
inline double g_J_quadrature(const std::function<double(double)>& fprime_mag,
                             double t0, double t1, double l_j, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("g_J: x <= 0");
    double len_i = t1 - t0;
    auto u = [&](double t) { return l_j * x / (len_i * fprime_mag(t)); };
    auto integrand = [&](double t) {
        double ut = u(t);
        double g = ut > 0.0 ? g_I(ut) : 0.0;
        return g / fprime_mag(t);
    };

    // dense scan for kink registration: 2 u(t) crossing integers
    const int n_scan = 4096;
    std::vector<double> cuts{t0, t1};
    double prev_t = t0, prev_v = 2.0 * u(t0);
    for (int i = 1; i <= n_scan; ++i) {
        double t = t0 + len_i * i / n_scan;
        double v = 2.0 * u(t);
        int lo = static_cast<int>(std::floor(std::min(prev_v, v)));
        int hi = static_cast<int>(std::floor(std::max(prev_v, v)));
        for (int k = lo + 1; k <= hi; ++k) {
            if (k < 1) continue;
            // bisect 2u(t) = k on [prev_t, t]
            double a = prev_t, b = t;
            double fa = 2.0 * u(a) - k;
            for (int it = 0; it < 80; ++it) {
                double m = 0.5 * (a + b);
                double fm = 2.0 * u(m) - k;
                if ((fa <= 0) == (fm <= 0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            cuts.push_back(0.5 * (a + b));
        }
        prev_t = t;
        prev_v = v;
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-14; }),
               cuts.end());

    double acc = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        acc += detail::gl_integrate(integrand, cuts[i], cuts[i + 1]);
    return l_j / (len_i * len_i) * acc;
}

inline double g_J(const ArcSpec& spec, double x) {
    return g_J_quadrature([&](double t) { return spec.fprime_at(t); }, spec.t0,
                          spec.t1, spec.arc_length(), x);
}

// Closed form for the quadratic-family example with h(z) = (z-2)^2,
// J = [2 - 2 cos pi a, 2 + 2 cos pi a], I = (a, 1-a), f(t) = 2 + 2 cos pi t.
// The default variant uses sin(pi a) in the summation bounds and carries the
// 1/pi of the antiderivative into the prefactor; `literal` evaluates the
// published rendering (sin a in the bounds, prefactor 6 / (pi lambda^2
// cos pi a)) for comparison.
inline double example_gJ(double a, double lambda, bool literal = false) {
    if (!(0.0 < a && a < 0.5)) throw std::invalid_argument("example_gJ: a outside (0, 1/2)");
    if (!(lambda > 0.0)) throw std::invalid_argument("example_gJ: lambda <= 0");
    double cpa = std::cos(M_PI * a);
    double L = 4.0 * lambda * cpa / (M_PI * (1.0 - 2.0 * a));  // |J| lambda / (pi |I|)
    double sin_bound = literal ? std::sin(a) : std::sin(M_PI * a);
    double upper = L / sin_bound;
    int k_hi = static_cast<int>(std::floor(upper));
    if (k_hi < 1) return 0.0;
    const DivisorTable& tbl = detail::shared_sigma_table(k_hi);

    double spa = std::sin(M_PI * a);
    double const_term = -0.5 * std::log((1.0 + cpa) / (1.0 - cpa)) - cpa * std::log(spa);

    double sum = 0.0;
    for (int k = 1; k <= k_hi; ++k) {
        double lg = std::log(L / k);
        // -F(a): full contribution of the lower endpoint
        sum += double(tbl.sigma(k)) * ((1.0 + lg) * cpa + const_term);
        if (double(k) > L) {
            // F(t_k) at the interior cutoff sin(pi t_k) = L/k
            double s = std::sqrt(std::max(0.0, 1.0 - (L / k) * (L / k)));
            sum += double(tbl.sigma(k)) * (-s + std::log1p(s) - lg);
        }
    }
    double pref = literal ? 6.0 / (M_PI * lambda * lambda * cpa)
                          : 6.0 / (M_PI * M_PI * lambda * lambda * cpa);
    return pref * sum;
}

// Partial sums of sum sigma(k)/k^2, the divergent series governing the
// endpoint behavior.
inline double divergence_partial(long long K) {
    if (K < 1) throw std::invalid_argument("divergence_partial: K < 1");
    const DivisorTable& tbl = detail::shared_sigma_table(static_cast<int>(K));
    double acc = 0.0;
    for (long long k = 1; k <= K; ++k)
        acc += double(tbl.sigma(static_cast<int>(k))) / (double(k) * double(k));
    return acc;
}

}  // namespace rootcorr

#endif
