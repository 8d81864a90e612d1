#pragma once

#include "szp/global_model.hpp"

#include <functional>

namespace szp {

// Per-prime averages over a fiber: P_unr (probability a single draw is
// unramified, eK = 1), ebar (average eK), and the average different order
// diffbar = log_p E(p^diffK).
struct FiberStatistics {
    Rational P_unr;
    Rational ebar;
    Real avg_p_diff;      // E(p^diffK)
    LogValue ln_avg_p_diff;  // = diffbar * ln p
    LogValue diffbar;
};

FiberStatistics fiber_statistics(const Fiber& fiber, long d0);

// Exact expectation over j uniform in 1..(l-1)/2 and (j+1)-tuples of places
// drawn i.i.d. with Pr(v) = e0 f0 / d0. The callback receives j and the
// tuple of place indices. Throws ResourceError (with the required count in
// the message) when the enumeration would exceed the budget.
Rational iterated_expectation_bruteforce(
    const Fiber& fiber, long d0, long l,
    const std::function<Rational(long, const std::vector<size_t>&)>& quantity,
    unsigned long budget = 10000000);

LogValue iterated_expectation_bruteforce_log(
    const Fiber& fiber, long d0, long l,
    const std::function<LogValue(long, const std::vector<size_t>&)>& quantity,
    unsigned long budget = 10000000);

// E_p^2(ord_p(q_{v_j}^{j^2/2l})) ln p, the fiber's contribution to the
// lgp-degree of the theta-pilot. Exact rational times ln p.
LogValue term_I(const Fiber& fiber, long d0, long l);
Rational term_I_coefficient(const Fiber& fiber, long d0, long l);  // of ln p

// (l+1)/4 * diffbar * ln p.
LogValue term_II_bound(const FiberStatistics& stats, long l);

struct TermIII {
    Rational exact;  // 1 - (2/(l-1)) sum_j P^(j+1)
    Rational bound;  // 1 - P^((l+1)/2)
};
TermIII term_III(const FiberStatistics& stats, long l);

// exact = ln(b_p) (2/(l-1)) sum (j+1)(1 - P^(j+1));
// quoted_bound = (l+5)/4 ln(b_p) (1 - P^((l+1)/2)).
// ln(b_p) < 0 for every prime, so the direction of the claimed bound is
// checked, not assumed; quoted_direction records whether exact <= quoted_bound.
struct TermIV {
    LogValue exact;
    LogValue quoted_bound;
    Verdict quoted_direction;
};
TermIV term_IV(const FiberStatistics& stats, long l, long p);

// (l+5)/4 * ln(ebar).
LogValue term_V_bound(const FiberStatistics& stats, long l);

// (l+5)/4 * ln(pi).
LogValue arch_contribution(long l);

// ln(pi) + sum_p (1 - P_unr^((l+1)/2)) (ln b_p + 5/(l+4)).
LogValue A_l_V(const ThetaDataDescriptor& d);

// exp(E(ln X)) <= E(X) <= ln(E(exp X)), both checked literally on a
// weighted positive sample. The right-hand form is checked as printed even
// though the standard Jensen consequence is exp(E X) <= E(exp X).
struct JensenResult {
    Verdict left;
    Verdict right;
    std::string note;
};
JensenResult jensen_check(
    const std::vector<std::pair<Rational, Rational>>& weighted_samples);

// Assembled per-fiber bounds for reports.
struct FiberTerms {
    long p;
    FiberStatistics stats;
    LogValue I;           // positive lgp-theta contribution
    LogValue II;          // bound
    Rational III_exact;
    Rational III_bound;
    TermIV IV;
    LogValue V;           // bound
};
struct TermBreakdown {
    std::vector<FiberTerms> per_prime;
    LogValue arch;
};
TermBreakdown term_breakdown(const ThetaDataDescriptor& d);

}  // namespace szp
