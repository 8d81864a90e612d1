#include "szp/szpiro.hpp"

#include "szp/arith.hpp"
#include "szp/local_field.hpp"
#include "szp/tensor_packet.hpp"

#include <sstream>

namespace szp {

const char* to_string(InequalityKind k) {
    switch (k) {
        case InequalityKind::tautological: return "tautological";
        case InequalityKind::probabilistic: return "probabilistic";
        case InequalityKind::baby: return "baby";
        default: return "explicit";
    }
}

Rational eps_l(long l, EpsKind kind) {
    if (l <= 3)
        throw std::domain_error(
            "eps_l: denominator l^2 + l - 12 vanishes at l = 3 (need l > 3)");
    Rational den = Rational(Integer(l) * l + l - 12);
    Rational eps = Rational(24 * (l + 3)) / den;
    if (kind == EpsKind::explicit_szpiro) eps *= 4;  // 96(l+3)/(l^2+l-12)
    // generating identities, kept as hard internal checks
    Rational lhs1 = (Rational(Integer(l) * (l + 1), 12) - 1) *
                    Rational(1, 2 * l) * Rational(4, l + 5);
    if (lhs1 != 1 / (6 + Rational(24 * (l + 3)) / den))
        throw std::logic_error("eps identity (6+eps) failed");
    Rational lhs2 = den / (Rational(24) * l * (l + 5));
    if (lhs2 != 1 / (24 + Rational(96 * (l + 3)) / den))
        throw std::logic_error("eps identity (24+eps) failed");
    return eps;
}

ConstantSet derive_constants(long l, long d0) {
    ConstantSet c;
    c.eps_prob = eps_l(l, EpsKind::probabilistic);
    c.eps_explicit = eps_l(l, EpsKind::explicit_szpiro);
    c.B = Integer(276480) * pow_integer(Integer(l), 4) * d0;

    Real ln_d1 = ln_real(c.d1).value;
    Real a0_real = Real(c.d1) * Real(c.d1) * (1 + Real("1.3") / ln_d1);
    c.A0_candidate = Integer(boost::multiprecision::ceil(a0_real));
    Real b0_real = ln_pi().value * Real(c.d1);
    c.B0_candidate = Integer(boost::multiprecision::ceil(b0_real));
    c.A0_relative_deviation =
        abs(Real(c.A0_candidate) - Real(c.A0)) / Real(c.A0);

    std::ostringstream t1, t2, t3;
    t1 << "B = 276480 l^4 d0 = " << c.B << " (tower factors 23040 * 12 * l^4 * d0)";
    t2 << "B0 candidate = ceil(ln(pi) * " << c.d1 << ") = " << c.B0_candidate
       << " vs published " << c.B0;
    t3 << "A0 candidate = ceil(d1^2 (1 + 1.3/ln d1)) = " << c.A0_candidate
       << " vs published " << c.A0 << " (relative deviation "
       << format_real(c.A0_relative_deviation, 6) << ")";
    c.trace = {t1.str(), t2.str(), t3.str()};
    return c;
}

LogValue small_place_estimate(long l, long d0) {
    Integer B = Integer(276480) * pow_integer(Integer(l), 4) * d0;
    LogValue lnB = ln_real(B);
    LogValue piB;
    if (B <= Integer(sieve_ceiling())) {
        piB = LogValue::exact(
            Real(pi_exact(static_cast<std::uint64_t>(B))));
    } else {
        piB = dusart_bound(Real(B));
    }
    Real v = Rational(l + 3).convert_to<Real>() * lnB.value * piB.value;
    Real err = Real(l + 3) * (lnB.error * piB.value + piB.error * lnB.value +
                              lnB.error * piB.error);
    return LogValue(v, Provenance::approximated, err + real_error_budget());
}

CheckResult ramification_ceiling_check(const ThetaDataDescriptor& d) {
    Integer B = Integer(276480) * pow_integer(Integer(d.l), 4) * d.d0;
    CheckResult r;
    r.pass = true;
    std::ostringstream os;
    for (const auto& f : d.fibers) {
        for (const auto& v : f.places) {
            if (Integer(v.eK) > B) {
                r.pass = false;
                os << " [p=" << f.p << ": eK=" << v.eK << " exceeds B=" << B << "]";
            }
            if (Integer(f.p) > B && v.eK >= f.p - 1) {
                r.pass = false;
                os << " [p=" << f.p << " > B but eK=" << v.eK
                   << " is not small]";
            }
        }
    }
    r.detail = r.pass ? "all ramification indices within the ceiling"
                      : "ceiling violations:" + os.str();
    return r;
}

CheckResult bigger_than_one_check(const ThetaDataDescriptor& d) {
    CheckResult r;
    r.pass = true;
    std::ostringstream os;
    for (const auto& f : d.fibers) {
        bool has_bad = false;
        Rational lhs = 0;
        for (const auto& v : f.places) {
            long c = v.bad ? 1 : 0;
            if (v.bad) has_bad = true;
            lhs += Rational(2 * v.f0 * (v.e0 - 1 + c), d.d0);
        }
        if (!has_bad) continue;
        if (lhs < 1) {
            r.pass = false;
            os << " [p=" << f.p << ": 2 sum f(e-1+c)/d0 = "
               << rational_to_string(lhs) << " < 1]";
        }
    }
    r.detail = r.pass ? "conductor-discriminant lower bound >= 1 at bad fibers"
                      : "violations:" + os.str();
    return r;
}

namespace {

LogValue mul_logvalues(const LogValue& a, const LogValue& b) {
    Real av = a.value < 0 ? -a.value : a.value;
    Real bv = b.value < 0 ? -b.value : b.value;
    return LogValue(a.value * b.value, Provenance::approximated,
                    av * b.error + bv * a.error + a.error * b.error +
                        real_error_budget());
}

LogValue probabilistic_lhs(const ThetaDataDescriptor& d) {
    Rational scale = 1 / ((6 + eps_l(d.l, EpsKind::probabilistic)) * d.deg_F);
    return d.inv.ln_delta_min * scale;
}

}  // namespace

InequalityReport tautological_report(const ThetaDataDescriptor& d,
                                     unsigned long budget) {
    InequalityReport rep;
    rep.kind = InequalityKind::tautological;
    rep.breakdown = term_breakdown(d);
    rep.lhs = normalized_degree(q_pilot(d), d.d0) * Rational(-1);

    LogValue rhs = rep.breakdown.arch;
    rep.components.emplace_back("arch (l+5)/4 ln(pi)", rep.breakdown.arch);
    for (const auto& t : rep.breakdown.per_prime) {
        LogValue fiber_sum = t.I * Rational(-1);
        fiber_sum += t.II;
        fiber_sum += to_logvalue(t.III_bound);
        fiber_sum += t.IV.quoted_bound;
        fiber_sum += t.V;
        rhs += fiber_sum;
        rep.components.emplace_back("p=" + std::to_string(t.p) + " term-sum bound",
                                    fiber_sum);
        if (t.IV.quoted_direction == Verdict::fails)
            rep.notes.push_back(
                "p=" + std::to_string(t.p) +
                ": term-IV quoted bound is below the exact value (ln b_p < 0); "
                "reported, not assumed");
    }
    rep.rhs = rhs;
    rep.verdict = compare_leq(rep.lhs, rep.rhs);

    // exact per-fiber E_p^2(ln R) when the enumeration fits the budget
    for (const auto& f : d.fibers) {
        try {
            LogValue exact = iterated_expectation_bruteforce_log(
                f, d.d0, d.l,
                [&](long j, const std::vector<size_t>& tuple) {
                    std::vector<LocalFieldData> fields;
                    for (size_t i : tuple) {
                        const auto& v = f.places[i];
                        fields.push_back(
                            LocalFieldData{f.p, v.eK, v.fK, v.diffK,
                                           v.eK % f.p == 0});
                    }
                    const auto& last = f.places[tuple.back()];
                    Rational a_ord = 0;
                    if (last.bad)
                        a_ord = Rational(last.bad->ord_q * j * j,
                                         Integer(2) * d.l * last.e0);
                    auto hull = hull_radius(
                        TensorFactorList::make(std::move(fields)), a_ord, false);
                    return hull.bound.ln_radius;
                },
                budget);
            rep.components.emplace_back(
                "p=" + std::to_string(f.p) + " exact E_p^2(ln R)", exact);
        } catch (const ResourceError& e) {
            rep.notes.push_back("p=" + std::to_string(f.p) +
                                ": exact enumeration skipped (" + e.what() + ")");
        }
    }
    return rep;
}

InequalityReport probabilistic_report(const ThetaDataDescriptor& d) {
    InequalityReport rep;
    rep.kind = InequalityKind::probabilistic;
    rep.breakdown = term_breakdown(d);
    rep.lhs = probabilistic_lhs(d);

    LogValue ln_diffbar = LogValue::exact(Real(0));
    LogValue sum_ln_ebar = LogValue::exact(Real(0));
    for (const auto& t : rep.breakdown.per_prime) {
        ln_diffbar += t.stats.ln_avg_p_diff;
        sum_ln_ebar += ln_rational(t.stats.ebar);
    }
    LogValue a = A_l_V(d);
    rep.components.emplace_back("ln Diffbar(V/Q)", ln_diffbar);
    rep.components.emplace_back("sum_p ln(ebar_p)", sum_ln_ebar);
    rep.components.emplace_back("A_{l,V}", a);
    rep.rhs = ln_diffbar + sum_ln_ebar + a;
    rep.verdict = compare_leq(rep.lhs, rep.rhs);
    return rep;
}

InequalityReport baby_report(const ThetaDataDescriptor& d) {
    if (!d.inv.deg_K || !d.inv.ln_disc_K)
        throw ValidationError("baby inequality needs deg_K and disc_K (or ln_disc_K)");
    InequalityReport rep;
    rep.kind = InequalityKind::baby;
    rep.lhs = probabilistic_lhs(d);

    LogValue ln_deg_K = ln_real(*d.inv.deg_K);
    LogValue main = mul_logvalues(ln_deg_K, *d.inv.ln_disc_K) * Rational(25, 16);
    rep.components.emplace_back("(25/16) ln[K:Q] ln|Disc K|", main);
    rep.components.emplace_back("ln(pi)", ln_pi());
    rep.rhs = main + ln_pi();
    rep.verdict = compare_leq(rep.lhs, rep.rhs);

    // proof-chain checks
    if (*d.inv.deg_K < 6840)
        rep.notes.push_back(
            "deg_K < 6840: the 5/4-exponent step's hypothesis is unmet");
    {
        // 2/ln(6840) + 1 <= 5/4
        LogValue thr = LogValue::approx(2 / ln_real(Integer(6840)).value + 1);
        Verdict v = compare_leq(thr, to_logvalue(Rational(5, 4)));
        rep.notes.push_back(std::string("5/4 threshold 2/ln(6840)+1: ") +
                            to_string(v));
    }
    if (d.inv.disc_K) {
        auto breakdown = term_breakdown(d);
        LogValue ln_diffbar = LogValue::exact(Real(0));
        LogValue sum_ln_ebar = LogValue::exact(Real(0));
        for (const auto& t : breakdown.per_prime) {
            ln_diffbar += t.stats.ln_avg_p_diff;
            sum_ln_ebar += ln_rational(t.stats.ebar);
        }
        LogValue diff_cap = ln_real(rad(*d.inv.disc_K)) + ln_deg_K;
        rep.notes.push_back(
            std::string("Diff bound ln Diffbar <= ln(rad|Disc K| [K:Q]): ") +
            to_string(compare_leq(ln_diffbar, diff_cap)));
        LogValue ebar_cap =
            ln_deg_K * Rational(omega_distinct(*d.inv.disc_K));
        rep.notes.push_back(
            std::string("sum ln ebar_p <= ln[K:Q] omega(|Disc K|): ") +
            to_string(compare_leq(sum_ln_ebar, ebar_cap)));
        if (*d.inv.deg_K >= 6840 && *d.inv.disc_K >= 6840) {
            LogValue lnD = ln_real(*d.inv.disc_K);
            LogValue lhs2 = mul_logvalues(lnD + to_logvalue(Rational(2)),
                                          ln_deg_K + to_logvalue(Rational(2)));
            LogValue rhs2 = mul_logvalues(lnD, ln_deg_K) * Rational(25, 16);
            rep.notes.push_back(
                std::string("(ln D+2)(ln d+2) <= (25/16) ln D ln d: ") +
                to_string(compare_leq(lhs2, rhs2)));
        }
    } else {
        rep.notes.push_back(
            "disc_K given only as a log: rad/omega proof-chain checks skipped");
    }
    return rep;
}

InequalityReport explicit_report(const ThetaDataDescriptor& d) {
    InequalityReport rep;
    rep.kind = InequalityKind::explicit_szpiro;
    rep.lhs = d.inv.ln_delta_min;

    auto consts = derive_constants(d.l, d.d0);
    LogValue constant = to_logvalue(
        Rational(consts.A0 * d.d0 * d.d0 * pow_integer(Integer(d.l), 4) +
                 consts.B0 * d.d0));
    LogValue scaled =
        (d.inv.ln_cond + d.inv.ln_disc_F) * (24 + consts.eps_explicit);
    rep.components.emplace_back("A0 d0^2 l^4 + B0 d0", constant);
    rep.components.emplace_back("(24+eps)(ln|Cond| + ln|Disc F|)", scaled);
    rep.rhs = constant + scaled;
    rep.verdict = compare_leq(rep.lhs, rep.rhs);

    // the three-way prime-case split behind the constants
    rep.components.emplace_back("split: infinite (l+5)/4 ln(pi)",
                                arch_contribution(d.l));
    rep.components.emplace_back(
        "split: large (l+5) (ln|Disc F| + ln|Cond|)/[F:Q]",
        (d.inv.ln_disc_F + d.inv.ln_cond) * Rational(d.l + 5, d.deg_F));
    rep.components.emplace_back("split: small (l+3) ln(B) pi(B)",
                                small_place_estimate(d.l, d.d0));

    auto ceil_check = ramification_ceiling_check(d);
    rep.notes.push_back("ramification ceiling: " + ceil_check.detail);
    auto big_check = bigger_than_one_check(d);
    rep.notes.push_back("conductor-discriminant bound: " + big_check.detail);
    return rep;
}

}  // namespace szp
