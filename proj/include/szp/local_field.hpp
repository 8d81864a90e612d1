#pragma once

#include "szp/numeric.hpp"

namespace szp {

// Symbolic invariants of a finite extension K/Q_p.
struct LocalFieldData {
    long p = 2;
    long e = 1;  // ramification index
    long f = 1;  // inertia degree
    Rational diff_exp;  // ord_p Diff(K/Q_p)
    bool wild = false;  // p | e

    static LocalFieldData make(long p, long e, long f);
    // Same, but with a caller-supplied different exponent overriding the
    // Eisenstein default (wild descriptors may carry sharper data).
    static LocalFieldData make_with_diff(long p, long e, long f,
                                         Rational diff_exp);
    long degree() const { return e * f; }
};

// ord_p(e) + (e-1)/e, the exponent of Diff = (e * pi^(e-1)).
Rational diff_exponent_eisenstein(long e, long p);

// e < p - 1. Small implies tame; vacuous at p = 2.
bool is_small(const LocalFieldData& field);

// ln(b_p) = -1 - ln(ln p) where b_p = c_p = 1/(e^1 * ln p); the two names
// are aliases for the same constant.
LogValue ln_bp(long p);

// ln of the radius R with log(O_K^x) contained in D_K(0, R):
// small fields get the uniformizer radius -(1/e) ln p, the rest get
// ln(e) + ln(b_p).
LogValue log_image_radius(const LocalFieldData& field);

// ln of the log-shell radius: |2p|_p^{-1} scaling on top of the log image.
LogValue log_shell_radius(const LocalFieldData& field);

}  // namespace szp
