#ifndef ROOTCORR_TRIPLE_HPP
#define ROOTCORR_TRIPLE_HPP

#include <stdexcept>
#include <string>
#include <utility>

#include "rootcorr/ratfunc.hpp"

namespace rootcorr {

// Generating triple (A, B, C): coefficients of the t-quadratic whose
// reciprocal generates the H_m sequence. A and C must not be identically
// zero. `standard` means C = 1, A and B polynomials, and gcd(B^2, A)
// square free.
struct GenTriple {
    RatFunc A;
    RatFunc B;
    RatFunc C;
    bool standard = false;
};

class InvalidTriple : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline bool check_standard(const RatFunc& A, const RatFunc& B, const RatFunc& C) {
    if (!C.is_one() || !A.is_poly() || !B.is_poly()) return false;
    if (B.is_zero()) return is_square_free(A.num());
    Poly g = poly_gcd(B.num() * B.num(), A.num());
    return is_square_free(g);
}

inline GenTriple make_triple(RatFunc A, RatFunc B, RatFunc C) {
    if (A.is_zero()) throw InvalidTriple("GenTriple: A is identically zero");
    if (C.is_zero()) throw InvalidTriple("GenTriple: C is identically zero");
    GenTriple t{std::move(A), std::move(B), std::move(C), false};
    t.standard = check_standard(t.A, t.B, t.C);
    return t;
}

// The class invariant B^2 / (A C), constant on equivalence classes.
inline RatFunc class_invariant(const GenTriple& t) {
    return t.B * t.B / (t.A * t.C);
}

struct StandardFormResult {
    GenTriple triple;     // the unique standard-form representative
    RatFunc multiplier;   // E with triple = (E^2 A / C, E B / C, 1)
};

// Reduce to the unique standard-form representative of the class.
// First clear denominators with a polynomial E, then repeatedly strip
// common factors where a root of the B-candidate is a multiple root of the
// A-candidate. Overlap is detected by gcd against the repeated part of A,
// so no root isolation is needed.
inline StandardFormResult to_standard_form(const GenTriple& t) {
    if (t.A.is_zero() || t.C.is_zero())
        throw InvalidTriple("to_standard_form: A or C identically zero");

    RatFunc a1 = t.A / t.C;
    RatFunc b1 = t.B / t.C;

    Poly e = a1.den() * b1.den();
    Poly a2 = (RatFunc(e * e) * a1).as_poly();
    Poly b2 = (RatFunc(e) * b1).as_poly();
    RatFunc mult(e);

    for (;;) {
        if (b2.is_zero()) {
            // strip all repeated factors of a2
            Poly rep = poly_gcd(a2, a2.derivative());
            if (rep.is_constant()) break;
            Poly g = square_free_part(rep);
            a2 = a2 / (g * g);
            mult = mult / RatFunc(g);
            continue;
        }
        if (a2.is_constant()) break;
        Poly rep = poly_gcd(a2, a2.derivative());
        if (rep.is_constant()) break;
        Poly g0 = poly_gcd(b2, rep);
        if (g0.is_constant()) break;
        Poly g = square_free_part(g0);
        b2 = b2 / g;
        a2 = a2 / (g * g);
        mult = mult / RatFunc(g);
    }

    // (u^2 A, u B, 1) is standard for any constant u; fix the unit by making
    // B monic so the representative is canonical.
    if (!b2.is_zero() && !(b2.leading() == GaussianRational(1))) {
        GaussianRational u = b2.leading().inverse();
        b2 = u * b2;
        a2 = (u * u) * a2;
        mult = mult * RatFunc(u);
    }

    GenTriple out{RatFunc(a2), RatFunc(b2), RatFunc::one(), true};
    if (!check_standard(out.A, out.B, out.C))
        throw std::logic_error("to_standard_form: reduction did not reach standard form");
    return {std::move(out), std::move(mult)};
}

inline std::string to_string(const GenTriple& t) {
    return to_string(t.A) + " ; " + to_string(t.B) + " ; " + to_string(t.C);
}

}  // namespace rootcorr

#endif
