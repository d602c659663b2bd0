#ifndef ROOTCORR_GENSEQ_HPP
#define ROOTCORR_GENSEQ_HPP

#include <stdexcept>
#include <vector>

#include "rootcorr/triple.hpp"

namespace rootcorr {

// H_0 .. H_{m_max} for a standard triple, exact coefficients.
struct PolySequence {
    GenTriple triple;
    std::vector<Poly> items;  // items[m] = H_m
};

// Three-term recurrence H_m = -B H_{m-1} - A H_{m-2}, H_0 = 1, H_1 = -B,
// obtained from (A t^2 + B t + 1) * sum H_m t^m = 1.
inline PolySequence generate(const GenTriple& t, int m_max) {
    if (!t.standard)
        throw InvalidTriple("generate: triple not in standard form (reduce first)");
    if (m_max < 0) throw std::invalid_argument("generate: m_max < 0");
    const Poly& A = t.A.as_poly();
    const Poly& B = t.B.as_poly();

    PolySequence seq{t, {}};
    seq.items.reserve(m_max + 1);
    seq.items.push_back(Poly::one());
    if (m_max >= 1) seq.items.push_back(-B);
    for (int m = 2; m <= m_max; ++m)
        seq.items.push_back(-(B * seq.items[m - 1]) - A * seq.items[m - 2]);
    return seq;
}

// Truncated power-series division num(t)/den(t) where the t-coefficients are
// polynomials in z. Generic long division, independent of the recurrence.
inline std::vector<Poly> series_divide(const std::vector<Poly>& num,
                                       const std::vector<Poly>& den, int m_max) {
    if (den.empty() || den[0].is_zero())
        throw std::domain_error("series_divide: denominator has no constant term");
    if (!den[0].is_constant())
        throw std::domain_error("series_divide: constant term must be a scalar");
    GaussianRational d0_inv = den[0][0].inverse();

    std::vector<Poly> out(m_max + 1);
    for (int m = 0; m <= m_max; ++m) {
        Poly acc = m < static_cast<int>(num.size()) ? num[m] : Poly();
        for (int j = 1; j <= m && j < static_cast<int>(den.size()); ++j)
            acc -= den[j] * out[m - j];
        out[m] = d0_inv * acc;
    }
    return out;
}

// Checks generate() against the series-division oracle, coefficient for
// coefficient, through m_max.
inline bool series_oracle_check(const GenTriple& t, int m_max) {
    PolySequence seq = generate(t, m_max);
    std::vector<Poly> den = {Poly::one(), t.B.as_poly(), t.A.as_poly()};
    std::vector<Poly> oracle = series_divide({Poly::one()}, den, m_max);
    for (int m = 0; m <= m_max; ++m)
        if (seq.items[m] != oracle[m]) return false;
    return true;
}

}  // namespace rootcorr

#endif
