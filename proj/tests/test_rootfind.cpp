#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "rootcorr/genseq.hpp"
#include "rootcorr/parse.hpp"
#include "rootcorr/rootfind.hpp"

using namespace rootcorr;

namespace {

GenTriple T(const std::string& a, const std::string& b) {
    return make_triple(parse_expression(a), parse_expression(b), RatFunc::one());
}

GenTriple segment_triple() { return T("1", "z-2"); }

std::vector<Complex> positions(const std::vector<RootRecord>& recs) {
    std::vector<Complex> out;
    for (const RootRecord& r : recs)
        if (!r.degenerate) out.push_back(r.z);
    return out;
}

// greedy multiset matching; returns the largest matching distance
double match_distance(std::vector<Complex> a, std::vector<Complex> b) {
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (Complex w : b) {
        auto it = std::min_element(a.begin(), a.end(), [&](Complex x, Complex y) {
            return std::abs(x - w) < std::abs(y - w);
        });
        worst = std::max(worst, std::abs(*it - w));
        a.erase(it);
    }
    return worst;
}

}  // namespace

TEST_CASE("curve-method roots for small m on the segment family") {
    GenTriple t = segment_triple();
    // m = 1: only q = -1, the root of B
    auto r1 = positions(roots_curve(t, 1));
    REQUIRE(r1.size() == 1);
    REQUIRE(std::abs(r1[0] - Complex(2.0, 0.0)) < 1e-12);
    // m = 2: c_1 = 1 gives (z-2)^2 = 1
    auto r2 = positions(roots_curve(t, 2));
    REQUIRE(match_distance(r2, {{1, 0}, {3, 0}}) < 1e-10);
    // m = 3: {2 - sqrt2, 2, 2 + sqrt2}
    auto r3 = positions(roots_curve(t, 3));
    double s2 = std::sqrt(2.0);
    REQUIRE(match_distance(r3, {{2 - s2, 0}, {2, 0}, {2 + s2, 0}}) < 1e-10);
}

TEST_CASE("curve method agrees with direct roots of H_m") {
    for (GenTriple t : {segment_triple(), T("z^2", "z^2-2*z+3")}) {
        PolySequence seq = generate(t, 12);
        for (int m = 1; m <= 12; ++m) {
            auto curve = positions(roots_curve(t, m));
            auto direct = roots_direct(seq.items[m]);
            REQUIRE(curve.size() == direct.size());
            REQUIRE(match_distance(curve, direct) < 1e-8);
        }
    }
}

TEST_CASE("every curve-method root lies on the carrier curve") {
    GenTriple t = T("z^2", "z^2-2*z+5");
    for (const RootRecord& r : roots_curve(t, 9)) {
        if (r.degenerate) continue;
        Complex h = h_eval(t, r.z);
        REQUIRE(std::abs(h.imag()) <= 1e-8);
        REQUIRE(h.real() >= -1e-8);
        REQUIRE(h.real() <= 4.0 + 1e-8);
    }
}

TEST_CASE("degenerate common zero of A and B is flagged and excluded") {
    // A = z^2(z-1), B = (z-1)(z-3): z = 1 is a simple common root, standard form
    GenTriple t = T("z^2*(z-1)", "(z-1)*(z-3)");
    REQUIRE(t.standard);
    auto recs = roots_curve(t, 4);
    bool found_degenerate = false;
    for (const RootRecord& r : recs)
        if (r.degenerate) {
            found_degenerate = true;
            REQUIRE(std::abs(r.z - Complex(1.0, 0.0)) < 1e-8);
        }
    REQUIRE(found_degenerate);
}

TEST_CASE("product over the full curve has triangular count") {
    GenTriple t = segment_triple();
    for (int Q : {5, 12, 30}) {
        auto recs = product_roots(t, Q - 1);
        long long n = 0;
        for (const RootRecord& r : recs)
            if (!r.degenerate) ++n;
        REQUIRE(n == static_cast<long long>(Q) * (Q - 1) / 2);
    }
}

TEST_CASE("arc-restricted product gives labeled fraction roots") {
    GenTriple t = segment_triple();
    double seed = 2.0 + 2.0 * std::cos(M_PI * 0.25);
    ArcSpec spec = build_arc(t, 0.25, 0.75, {seed, 0.0}, 512);
    auto recs = product_roots(t, 3, &spec);
    // fractions {1/2, 1/3, 2/3, 2/4} -> roots {2, 3, 1, 2}
    REQUIRE(recs.size() == 4);
    REQUIRE(match_distance(positions(recs), {{2, 0}, {3, 0}, {1, 0}, {2, 0}}) < 1e-9);
    for (const RootRecord& r : recs) {
        REQUIRE(r.p >= 1);
        REQUIRE(r.q == r.m + 1);
        double frac = double(r.p) / r.q;
        REQUIRE(frac > 0.25);
        REQUIRE(frac < 0.75);
    }
    // n = 1: single record at f(1/2)
    auto one = product_roots(t, 1, &spec);
    REQUIRE(one.size() == 1);
    REQUIRE(std::abs(one[0].z - Complex(2.0, 0.0)) < 1e-10);
}

TEST_CASE("arc labels are ordered along the arc") {
    GenTriple t = segment_triple();
    double seed = 2.0 + 2.0 * std::cos(M_PI * 0.25);
    ArcSpec spec = build_arc(t, 0.25, 0.75, {seed, 0.0}, 512);
    auto recs = roots_curve(t, 8, &spec);
    // labeled roots: fraction order matches arclength order (f decreasing)
    std::vector<std::pair<double, double>> labeled;  // (fraction, re z)
    for (const RootRecord& r : recs)
        if (r.p >= 1) labeled.emplace_back(double(r.p) / r.q, r.z.real());
    std::sort(labeled.begin(), labeled.end());
    for (size_t i = 0; i + 1 < labeled.size(); ++i)
        REQUIRE(labeled[i + 1].second < labeled[i].second);
}

TEST_CASE("curve samples satisfy the defining conditions") {
    GenTriple t = segment_triple();
    auto samples = sample_curve(t, 41);
    for (const CurveSample& s : samples)
        for (Complex z : s.points) {
            // 2 +- sqrt(c), real; c = 0 is a double root (sqrt(eps) accuracy)
            REQUIRE(std::abs(z.imag()) < 1e-7);
            REQUIRE(std::abs(std::abs(z.real() - 2.0) - std::sqrt(s.c)) < 1e-7);
        }
    // c = 4 fiber solves B^2 = 4A (discriminant vanishing)
    const CurveSample& last = samples.back();
    REQUIRE(last.c == 4.0);
    for (Complex z : last.points) {
        Complex b = t.B.eval(z), a = t.A.eval(z);
        REQUIRE(std::abs(b * b - 4.0 * a) < 1e-8);
    }
}

TEST_CASE("reduced real-segment family stays on [0,4] and on P(x,y)=0 or y=0") {
    // the figure triple (z^2, z^2-2z, 1) reduces to the segment family
    auto [std_t, e] = to_standard_form(make_triple(
        parse_expression("z^2"), parse_expression("z^2-2*z"), RatFunc::one()));
    auto samples = sample_curve(std_t, 21);
    for (const CurveSample& s : samples)
        for (Complex z : s.points) {
            double x = z.real(), y = z.imag();
            double P = 2 * x * x + x * x * x - 2 * y * y + x * y * y;
            REQUIRE((std::abs(y) < 1e-7 || std::abs(P) < 1e-6));
            REQUIRE(x > -1e-8);
            REQUIRE(x < 4.0 + 1e-8);
        }
}
