#pragma once

#include "szp/expectation.hpp"

namespace szp {

enum class InequalityKind { tautological, probabilistic, baby, explicit_szpiro };

const char* to_string(InequalityKind k);

// eps in the 6+eps normalization (probabilistic/baby) or the 24+eps one
// (explicit).
enum class EpsKind { probabilistic, explicit_szpiro };
Rational eps_l(long l, EpsKind kind);

struct InequalityReport {
    InequalityKind kind;
    LogValue lhs;
    LogValue rhs;
    Verdict verdict = Verdict::within_error;
    TermBreakdown breakdown;              // populated for tautological/probabilistic
    // named components of the right-hand side, in display order
    std::vector<std::pair<std::string, LogValue>> components;
    std::vector<std::string> notes;
};

struct ConstantSet {
    Rational eps_prob;
    Rational eps_explicit;
    Integer B;             // 276480 * l^4 * d0
    Integer A0 = Integer("84372107405");
    Integer B0 = 316495;
    Integer d1 = 276480;   // = 23040 * 12
    Integer A0_candidate;  // ceil of d1^2 (1 + 1.3/ln d1)
    Integer B0_candidate;  // ceil of ln(pi) d1
    Real A0_relative_deviation;
    std::vector<std::string> trace;
};
ConstantSet derive_constants(long l, long d0);

// The tautological inequality: -deg(P_q) <= sum_p E_p^2(ln R). The RHS is
// assembled from the per-term bounds; when the tuple budget allows, the
// exact brute-force E_p^2(ln R) per fiber is added to the components.
InequalityReport tautological_report(const ThetaDataDescriptor& d,
                                     unsigned long budget = 10000000);

// 1/(6+eps) ln|Dmin|/[F:Q] <= ln Diffbar + sum ln ebar_p + A_{l,V}.
InequalityReport probabilistic_report(const ThetaDataDescriptor& d);

// 1/(6+eps) ln|Dmin|/[F:Q] <= (25/16) ln[K:Q] ln|Disc K| + ln(pi),
// with the proof-chain bounds checked on the descriptor when the exact
// disc_K integer is available.
InequalityReport baby_report(const ThetaDataDescriptor& d);

// ln|Dmin| <= A0 d0^2 l^4 + B0 d0 + (24+eps)(ln|Cond| + ln|Disc F|),
// with the infinite/large/small prime-case split in the components.
InequalityReport explicit_report(const ThetaDataDescriptor& d);

// Every eK <= B_{l,d0}; every place over p > B_{l,d0} is small (eK < p-1).
CheckResult ramification_ceiling_check(const ThetaDataDescriptor& d);

// 2 sum f0 (e0 - 1 + c) / d0 >= 1 per fiber carrying a bad place
// (c = 1 at bad places).
CheckResult bigger_than_one_check(const ThetaDataDescriptor& d);

// (l+3) ln(B) pi(B), exact sieve when B fits under the sieve ceiling,
// Dusart otherwise.
LogValue small_place_estimate(long l, long d0);

}  // namespace szp
