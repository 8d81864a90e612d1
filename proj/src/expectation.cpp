#include "szp/expectation.hpp"

#include "szp/arith.hpp"
#include "szp/local_field.hpp"

#include <sstream>

namespace szp {

FiberStatistics fiber_statistics(const Fiber& fiber, long d0) {
    FiberStatistics s;
    s.P_unr = 0;
    s.ebar = 0;
    s.avg_p_diff = 0;
    bool all_integral = true;
    for (const auto& v : fiber.places) {
        Rational pr = place_probability(v, d0);
        if (v.eK == 1) s.P_unr += pr;
        s.ebar += Rational(v.eK) * pr;
        s.avg_p_diff += to_real(pr) * pow_real_rational(fiber.p, v.diffK);
        if (boost::multiprecision::denominator(v.diffK) != 1)
            all_integral = false;
    }
    if (s.avg_p_diff == 1) {
        s.ln_avg_p_diff = LogValue::exact(Real(0));
    } else {
        s.ln_avg_p_diff = LogValue::approx(log(s.avg_p_diff));
    }
    (void)all_integral;
    Real lnp = ln_real(Integer(fiber.p)).value;
    s.diffbar = LogValue(s.ln_avg_p_diff.value / lnp,
                         s.ln_avg_p_diff.provenance,
                         s.ln_avg_p_diff.error / lnp + real_error_budget());
    return s;
}

namespace {

unsigned long required_tuples(size_t m, long l) {
    unsigned long total = 0;
    for (long j = 1; j <= (l - 1) / 2; ++j) {
        unsigned long block = 1;
        for (long i = 0; i <= j; ++i) {
            if (block > (1UL << 62) / m) return ~0UL;  // saturate
            block *= m;
        }
        total += block;
        if (total > (1UL << 62)) return ~0UL;
    }
    return total;
}

template <typename Value, typename Zero>
Value enumerate(const Fiber& fiber, long d0, long l,
                const std::function<Value(long, const std::vector<size_t>&)>& q,
                unsigned long budget, Zero zero) {
    size_t m = fiber.places.size();
    unsigned long need = required_tuples(m, l);
    if (need > budget) {
        std::ostringstream os;
        os << "brute-force enumeration needs " << need
           << " tuple evaluations, budget is " << budget;
        throw ResourceError(os.str());
    }
    std::vector<Rational> prob(m);
    for (size_t i = 0; i < m; ++i)
        prob[i] = place_probability(fiber.places[i], d0);

    Value total = zero;
    for (long j = 1; j <= (l - 1) / 2; ++j) {
        std::vector<size_t> tuple(static_cast<size_t>(j + 1), 0);
        Value ej = zero;
        while (true) {
            Rational w = 1;
            for (size_t i : tuple) w *= prob[i];
            ej = ej + q(j, tuple) * w;
            size_t k = tuple.size();
            while (k > 0) {
                --k;
                if (++tuple[k] < m) break;
                tuple[k] = 0;
                if (k == 0) goto next_j;
            }
        }
    next_j:
        total = total + ej;
    }
    return total * Rational(2, l - 1);
}

}  // namespace

Rational iterated_expectation_bruteforce(
    const Fiber& fiber, long d0, long l,
    const std::function<Rational(long, const std::vector<size_t>&)>& quantity,
    unsigned long budget) {
    return enumerate<Rational>(fiber, d0, l, quantity, budget, Rational(0));
}

LogValue iterated_expectation_bruteforce_log(
    const Fiber& fiber, long d0, long l,
    const std::function<LogValue(long, const std::vector<size_t>&)>& quantity,
    unsigned long budget) {
    return enumerate<LogValue>(fiber, d0, l, quantity, budget,
                               LogValue::exact(Real(0)));
}

Rational term_I_coefficient(const Fiber& fiber, long d0, long l) {
    // (2/(l-1)) sum_j j^2/2l * sum_bad f0 ord_q / d0
    Rational fiber_mass = 0;
    for (const auto& v : fiber.places)
        if (v.bad) fiber_mass += Rational(Integer(v.f0) * v.bad->ord_q, d0);
    Rational jsum = 0;
    for (long j = 1; j <= (l - 1) / 2; ++j) jsum += Rational(j) * j;
    return fiber_mass * jsum * Rational(2, l - 1) / (2 * l);
}

LogValue term_I(const Fiber& fiber, long d0, long l) {
    return ln_real(Integer(fiber.p)) * term_I_coefficient(fiber, d0, l);
}

LogValue term_II_bound(const FiberStatistics& stats, long l) {
    return stats.ln_avg_p_diff * Rational(l + 1, 4);
}

TermIII term_III(const FiberStatistics& stats, long l) {
    TermIII t;
    Rational sum = 0;
    for (long j = 1; j <= (l - 1) / 2; ++j)
        sum += pow_rational(stats.P_unr, static_cast<unsigned long>(j + 1));
    t.exact = 1 - sum * Rational(2, l - 1);
    t.bound = 1 - pow_rational(stats.P_unr,
                               static_cast<unsigned long>((l + 1) / 2));
    return t;
}

TermIV term_IV(const FiberStatistics& stats, long l, long p) {
    TermIV t;
    Rational sum = 0;
    for (long j = 1; j <= (l - 1) / 2; ++j)
        sum += Rational(j + 1) *
               (1 - pow_rational(stats.P_unr, static_cast<unsigned long>(j + 1)));
    LogValue lb = ln_bp(p);
    t.exact = lb * (sum * Rational(2, l - 1));
    t.quoted_bound =
        lb * (Rational(l + 5, 4) *
              (1 - pow_rational(stats.P_unr,
                                static_cast<unsigned long>((l + 1) / 2))));
    t.quoted_direction = compare_leq(t.exact, t.quoted_bound);
    return t;
}

LogValue term_V_bound(const FiberStatistics& stats, long l) {
    return ln_rational(stats.ebar) * Rational(l + 5, 4);
}

LogValue arch_contribution(long l) {
    if (l <= 3) throw std::domain_error("arch_contribution requires l > 3");
    return ln_pi() * Rational(l + 5, 4);
}

LogValue A_l_V(const ThetaDataDescriptor& d) {
    LogValue out = ln_pi();
    for (const auto& f : d.fibers) {
        auto stats = fiber_statistics(f, d.d0);
        if (stats.P_unr == 1) continue;  // term vanishes exactly
        Rational w = 1 - pow_rational(stats.P_unr,
                                      static_cast<unsigned long>((d.l + 1) / 2));
        out += (ln_bp(f.p) + to_logvalue(Rational(5, d.l + 4))) * w;
    }
    return out;
}

JensenResult jensen_check(
    const std::vector<std::pair<Rational, Rational>>& weighted_samples) {
    if (weighted_samples.empty())
        throw std::domain_error("jensen_check needs samples");
    Rational wsum = 0;
    for (const auto& [w, x] : weighted_samples) {
        if (w < 0 || x <= 0)
            throw std::domain_error("jensen_check: weights >= 0, samples > 0");
        wsum += w;
    }
    if (wsum == 0) throw std::domain_error("jensen_check: zero total weight");

    Rational ex = 0;       // E(X), exact
    Real e_ln = 0;         // E(ln X)
    Real e_exp = 0;        // E(exp X)
    for (const auto& [w, x] : weighted_samples) {
        Rational nw = w / wsum;
        ex += nw * x;
        e_ln += to_real(nw) * log(to_real(x));
        e_exp += to_real(nw) * exp(to_real(x));
    }
    JensenResult r;
    r.left = compare_leq(LogValue::approx(exp(e_ln)), to_logvalue(ex));
    r.right = compare_leq(to_logvalue(ex), LogValue::approx(log(e_exp)));
    r.note =
        "right-hand side checked literally as E(X) <= ln(E(exp X)); the "
        "standard Jensen consequence is exp(E X) <= E(exp X)";
    return r;
}

TermBreakdown term_breakdown(const ThetaDataDescriptor& d) {
    TermBreakdown out;
    for (const auto& f : d.fibers) {
        FiberTerms t;
        t.p = f.p;
        t.stats = fiber_statistics(f, d.d0);
        t.I = term_I(f, d.d0, d.l);
        t.II = term_II_bound(t.stats, d.l);
        auto t3 = term_III(t.stats, d.l);
        t.III_exact = t3.exact;
        t.III_bound = t3.bound;
        t.IV = term_IV(t.stats, d.l, f.p);
        t.V = term_V_bound(t.stats, d.l);
        out.per_prime.push_back(std::move(t));
    }
    out.arch = arch_contribution(d.l);
    return out;
}

}  // namespace szp
