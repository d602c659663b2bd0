#ifndef ROOTCORR_PAIRCORR_HPP
#define ROOTCORR_PAIRCORR_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "rootcorr/arcmap.hpp"
#include "rootcorr/rootfind.hpp"

namespace rootcorr {

// Multiset of points in (0,1). n_total is the size of the full ambient set
// (the normalization N of the statistic), which may exceed the number of
// points kept after windowing.
struct PointSet1D {
    std::vector<double> points;
    long long n_total = 0;
};

// M(Q) = { p/q : 1 <= p < q <= Q }, non-reduced fractions kept.
inline PointSet1D farey_like(int Q) {
    if (Q < 2) throw std::invalid_argument("farey_like: Q < 2");
    PointSet1D s;
    s.n_total = static_cast<long long>(Q) * (Q - 1) / 2;
    s.points.reserve(s.n_total);
    for (int q = 2; q <= Q; ++q)
        for (int p = 1; p < q; ++p) s.points.push_back(double(p) / q);
    return s;
}

namespace detail {

// ordered pairs (i != j) with 0 < |x_i - x_j| <= thr, by sort + sweep
inline long long count_close_ordered_pairs(std::vector<double> x, double thr) {
    std::sort(x.begin(), x.end());
    long long count = 0;
    size_t lo = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        while (x[i] - x[lo] > thr) ++lo;
        // pairs (j, i) with lo <= j < i, minus exact ties
        long long within = static_cast<long long>(i - lo);
        size_t e = i;
        while (e > lo && x[e - 1] == x[i]) --e;
        count += within - static_cast<long long>(i - e);
    }
    return 2 * count;
}

}  // namespace detail

// R_{M_I(Q)}(lambda): pairs in the window [a, b] at distance <= lambda / N,
// normalized by 1 / (2 N (b - a)) with N the full-set size.
inline double empirical_R_interval(const PointSet1D& s, double a, double b,
                                   double lambda) {
    if (!(0.0 < a && a < b && b < 1.0))
        throw std::invalid_argument("empirical_R_interval: need 0 < a < b < 1");
    if (!(lambda > 0.0)) throw std::invalid_argument("empirical_R_interval: lambda <= 0");
    if (s.n_total <= 0) throw std::invalid_argument("empirical_R_interval: N not set");
    std::vector<double> in;
    for (double x : s.points)
        if (a <= x && x <= b) in.push_back(x);
    if (in.empty()) throw std::invalid_argument("empirical_R_interval: empty window");
    double thr = lambda / double(s.n_total);
    long long ordered = detail::count_close_ordered_pairs(std::move(in), thr);
    return double(ordered) / (2.0 * double(s.n_total) * (b - a));
}

// Curve-side statistic: N_J points on the arc, mean spacing l(J)/N_J,
// threshold lambda * l(J) / N_J, prefactor 1/(2 N_J). Distance is arclength
// along J via the parameter pullback (chord distance optional).
inline double empirical_R_arc(const std::vector<RootRecord>& records,
                              const ArcSpec& spec, double lambda,
                              bool chord_distance = false) {
    if (!(lambda > 0.0)) throw std::invalid_argument("empirical_R_arc: lambda <= 0");
    std::vector<double> coord;
    for (const RootRecord& r : records) {
        if (r.degenerate) continue;
        if (r.p >= 1 && r.q > r.p) {
            coord.push_back(spec.arclen_at(double(r.p) / r.q));
        } else {
            throw std::invalid_argument(
                "empirical_R_arc: record without fraction label on the arc");
        }
    }
    if (coord.size() < 2)
        throw std::invalid_argument("empirical_R_arc: fewer than 2 points");
    long long n_j = static_cast<long long>(coord.size());
    double l_j = spec.arc_length();
    double thr = lambda * l_j / double(n_j);

    long long ordered;
    if (chord_distance) {
        // chord metric |z_i - z_j|; O(N^2), intended for cross-checks
        std::vector<Complex> zs;
        for (const RootRecord& r : records)
            if (!r.degenerate) zs.push_back(r.z);
        ordered = 0;
        for (size_t i = 0; i < zs.size(); ++i)
            for (size_t j = 0; j < zs.size(); ++j) {
                if (i == j) continue;
                double d = std::abs(zs[i] - zs[j]);
                if (d > 0.0 && d <= thr) ++ordered;
            }
    } else {
        ordered = detail::count_close_ordered_pairs(std::move(coord), thr);
    }
    return double(ordered) / (2.0 * double(n_j));
}

// A pair-correlation curve on a lambda grid.
struct PairCorrCurve {
    std::vector<double> lambdas;
    std::vector<double> values;
    std::string kind;  // empirical_R | closed_R | empirical_g | closed_g
};

// dR/dlambda by centered differences (one-sided at the ends).
inline PairCorrCurve estimate_g(const PairCorrCurve& r) {
    if (r.lambdas.size() < 2) throw std::invalid_argument("estimate_g: need >= 2 nodes");
    for (size_t i = 1; i < r.values.size(); ++i)
        if (r.values[i] < r.values[i - 1] - 1e-12)
            throw std::invalid_argument("estimate_g: input R not nondecreasing");
    PairCorrCurve g;
    g.kind = r.kind == "closed_R" ? "closed_g" : "empirical_g";
    g.lambdas = r.lambdas;
    g.values.resize(r.lambdas.size());
    size_t n = r.lambdas.size();
    for (size_t i = 0; i < n; ++i) {
        size_t lo = i == 0 ? 0 : i - 1;
        size_t hi = i + 1 == n ? i : i + 1;
        g.values[i] = (r.values[hi] - r.values[lo]) / (r.lambdas[hi] - r.lambdas[lo]);
    }
    return g;
}

}  // namespace rootcorr

#endif
