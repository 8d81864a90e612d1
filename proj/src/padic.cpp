#include "szp/padic.hpp"

#include "szp/arith.hpp"

#include <cmath>

namespace szp {

TruncatedEisensteinRing::TruncatedEisensteinRing(long p, long ram_index,
                                                 long precision)
    : p_(p), ram_(ram_index), prec_(precision) {
    if (!is_prime(static_cast<std::uint64_t>(p)))
        throw std::domain_error("ring characteristic must be prime");
    if (ram_ < 1 || (p_ - 1) % ram_ != 0)
        throw std::domain_error(
            "unsupported ramification index: E must divide p-1");
    if (prec_ < 4) throw std::domain_error("precision must be >= 4");
    pN_ = pow_integer(Integer(p_), static_cast<unsigned long>(prec_));
}

Integer TruncatedEisensteinRing::reduce(Integer v) const {
    v %= pN_;
    if (v < 0) v += pN_;
    return v;
}

RingElement TruncatedEisensteinRing::zero() const {
    return RingElement{std::vector<Integer>(ram_, Integer(0))};
}

RingElement TruncatedEisensteinRing::one() const {
    auto e = zero();
    e.coeff[0] = 1;
    return e;
}

RingElement TruncatedEisensteinRing::from_integer(Integer n) const {
    auto e = zero();
    e.coeff[0] = reduce(std::move(n));
    return e;
}

RingElement TruncatedEisensteinRing::uniformizer() const {
    auto e = zero();
    if (ram_ == 1) {
        e.coeff[0] = reduce(Integer(p_));
    } else {
        e.coeff[1] = 1;
    }
    return e;
}

RingElement TruncatedEisensteinRing::element(std::vector<Integer> coeffs) const {
    if (coeffs.size() != static_cast<size_t>(ram_))
        throw std::invalid_argument("coefficient vector must have length E");
    for (auto& c : coeffs) c = reduce(std::move(c));
    return RingElement{std::move(coeffs)};
}

RingElement TruncatedEisensteinRing::add(const RingElement& a,
                                         const RingElement& b) const {
    auto out = a;
    for (long i = 0; i < ram_; ++i) out.coeff[i] = reduce(out.coeff[i] + b.coeff[i]);
    return out;
}

RingElement TruncatedEisensteinRing::sub(const RingElement& a,
                                         const RingElement& b) const {
    auto out = a;
    for (long i = 0; i < ram_; ++i) out.coeff[i] = reduce(out.coeff[i] - b.coeff[i]);
    return out;
}

RingElement TruncatedEisensteinRing::neg(const RingElement& a) const {
    auto out = a;
    for (auto& c : out.coeff) c = reduce(-c);
    return out;
}

RingElement TruncatedEisensteinRing::mul(const RingElement& a,
                                         const RingElement& b) const {
    std::vector<Integer> conv(2 * ram_ - 1, Integer(0));
    for (long i = 0; i < ram_; ++i) {
        if (a.coeff[i] == 0) continue;
        for (long j = 0; j < ram_; ++j)
            conv[i + j] += a.coeff[i] * b.coeff[j];
    }
    auto out = zero();
    for (long k = 0; k < ram_; ++k) out.coeff[k] = conv[k];
    // x^E = p
    for (long k = ram_; k < 2 * ram_ - 1; ++k)
        out.coeff[k - ram_] += conv[k] * p_;
    for (auto& c : out.coeff) c = reduce(std::move(c));
    return out;
}

RingElement TruncatedEisensteinRing::mul_scalar(const RingElement& a,
                                                const Integer& s) const {
    auto out = a;
    for (auto& c : out.coeff) c = reduce(c * s);
    return out;
}

RingElement TruncatedEisensteinRing::pow(RingElement base,
                                         unsigned long exp) const {
    RingElement out = one();
    while (exp) {
        if (exp & 1) out = mul(out, base);
        base = mul(base, base);
        exp >>= 1;
    }
    return out;
}

bool TruncatedEisensteinRing::is_zero(const RingElement& a) const {
    for (const auto& c : a.coeff)
        if (c != 0) return false;
    return true;
}

bool TruncatedEisensteinRing::congruent(const RingElement& a,
                                        const RingElement& b,
                                        const Rational& min_valuation) const {
    auto d = sub(a, b);
    auto v = valuation(d);
    return !v.has_value() || *v >= min_valuation;
}

std::optional<Rational> TruncatedEisensteinRing::valuation(
    const RingElement& a) const {
    std::optional<Rational> best;
    for (long i = 0; i < ram_; ++i) {
        if (a.coeff[i] == 0) continue;
        long o = ord_p(a.coeff[i], Integer(p_));
        Rational v(Integer(o) * ram_ + i, Integer(ram_));
        if (!best || v < *best) best = v;
    }
    return best;
}

RingElement TruncatedEisensteinRing::teichmuller_root(long k) const {
    if (k < 0 || k >= ram_)
        throw std::domain_error("teichmuller_root requires 0 <= k < E");
    return root_of_unity(ram_, k);
}

RingElement TruncatedEisensteinRing::root_of_unity(long order,
                                                   long power) const {
    if (order < 1 || (p_ - 1) % order != 0)
        throw std::domain_error("root order must divide p-1");
    // Smallest generator of (Z/p)^x.
    long g = 0;
    for (long cand = 2; cand < p_; ++cand) {
        bool generates = true;
        for (long q = 2; q <= p_ - 1; ++q) {
            if ((p_ - 1) % q != 0 || !is_prime(static_cast<std::uint64_t>(q)))
                continue;
            Integer e = boost::multiprecision::powm(Integer(cand),
                                                    Integer((p_ - 1) / q),
                                                    Integer(p_));
            if (e == 1) { generates = false; break; }
        }
        if (generates) { g = cand; break; }
    }
    Integer r = boost::multiprecision::powm(
        Integer(g), Integer(((p_ - 1) / order) * power), Integer(p_));
    // Teichmuller lift: iterate x -> x^p, quadratic convergence to the
    // (p-1)-th root of unity congruent to r mod p.
    Integer x = r;
    for (long i = 0; i < prec_; ++i)
        x = boost::multiprecision::powm(x, Integer(p_), pN_);
    return from_integer(x);
}

RingElement TruncatedEisensteinRing::invert_unit(const RingElement& a) const {
    if (a.coeff[0] % p_ == 0)
        throw std::domain_error("invert_unit: element is not a unit");
    // Newton iteration z <- z(2 - a z) starting from the residue inverse.
    Integer z0;
    {
        // Inverse of a.coeff[0] mod p via Fermat.
        z0 = boost::multiprecision::powm(a.coeff[0] % p_, Integer(p_ - 2),
                                         Integer(p_));
    }
    RingElement z = from_integer(z0);
    for (int it = 0; it < 64; ++it) {
        RingElement r = sub(one(), mul(a, z));
        if (is_zero(r)) return z;
        z = mul(z, add(one(), r));  // z(1 + r) = z(2 - a z)
    }
    throw std::runtime_error("invert_unit failed to converge");
}

RingElement TruncatedEisensteinRing::divide_by_x(const RingElement& a) const {
    if (a.coeff[0] % p_ != 0)
        throw PrecisionError("divide_by_x: constant term not divisible by p",
                             prec_ + 1);
    auto out = zero();
    for (long i = 0; i + 1 < ram_; ++i) out.coeff[i] = a.coeff[i + 1];
    out.coeff[ram_ - 1] = a.coeff[0] / p_;
    return out;
}

RingElement TruncatedEisensteinRing::divide(const RingElement& a,
                                            const RingElement& b) const {
    auto vb = valuation(b);
    if (!vb) throw PrecisionError("divide: divisor valuation exhausted", prec_ + 1);
    // b = x^s * unit with s = E * val(b).
    Rational sv = *vb * ram_;
    Integer s_int = boost::multiprecision::numerator(sv);
    if (boost::multiprecision::denominator(sv) != 1)
        throw std::domain_error("divide: divisor valuation not in (1/E)Z");
    long s = static_cast<long>(s_int);
    RingElement u = b;
    for (long i = 0; i < s; ++i) u = divide_by_x(u);
    RingElement q = a;
    for (long i = 0; i < s; ++i) q = divide_by_x(q);
    return mul(q, invert_unit(u));
}

LogSeriesResult TruncatedEisensteinRing::log_series(const RingElement& u) const {
    RingElement a = sub(one(), u);  // log u = -sum a^n/n
    if (is_zero(a))
        return {zero(), 0, Rational(prec_)};
    Rational v = *valuation(a);
    if (v <= Rational(1, p_ - 1))
        throw std::domain_error(
            "log_series requires val(u-1) > 1/(p-1)");

    // Find T with n*v - log_p(n) >= N for all n > T. The map is increasing
    // past the analytic minimizer 1/(v ln p); doubles with a safety margin.
    double vd =
        static_cast<double>(boost::multiprecision::numerator(v)) /
            static_cast<double>(boost::multiprecision::denominator(v)) -
        1e-9;
    double lnp = std::log(static_cast<double>(p_));
    unsigned long n0 =
        static_cast<unsigned long>(std::ceil(1.0 / (vd * lnp))) + 1;
    unsigned long T = n0;
    while (T * vd - std::log(static_cast<double>(T + 1)) / lnp <
           static_cast<double>(prec_) + 1.0) {
        ++T;
        if (T > 4000000UL)
            throw PrecisionError("log_series: tail not certifiable", prec_ + 8);
    }

    RingElement sum = zero();
    RingElement power = one();
    for (unsigned long n = 1; n <= T; ++n) {
        power = mul(power, a);
        if (is_zero(power)) break;
        long j = (n % p_ == 0) ? ord_p(Integer(n), Integer(p_)) : 0;
        RingElement term = power;
        if (j > 0) {
            Integer pj = pow_integer(Integer(p_), static_cast<unsigned long>(j));
            for (auto& c : term.coeff) {
                if (c % pj != 0)
                    throw PrecisionError(
                        "log_series: term n=" + std::to_string(n) +
                            " not divisible by p^ord(n); raise precision",
                        prec_ + j);
                c /= pj;
            }
        }
        Integer m = Integer(n) / pow_integer(Integer(p_),
                                             static_cast<unsigned long>(j));
        Integer minv = boost::multiprecision::powm(
            m % pN_, pN_ / p_ * (p_ - 1) - 1, pN_);  // Euler inverse mod p^N
        term = mul_scalar(term, minv);
        sum = sub(sum, term);
    }
    return {sum, static_cast<long>(T), Rational(prec_)};
}

Rational crude_min_term(const Rational& v, long p, unsigned long n_max) {
    if (v <= 0) throw std::domain_error("crude_min_term requires v > 0");
    if (!is_prime(static_cast<std::uint64_t>(p)))
        throw std::domain_error("crude_min_term requires prime p");
    // n_max must exceed the analytic minimizer 1/(v ln p).
    Real threshold = to_real(v) * log(Real(p)) * Real(n_max);
    if (threshold <= 1)
        throw std::domain_error(
            "crude_min_term: n_max below the analytic minimizer; widen window");
    Rational best;
    bool have = false;
    for (unsigned long n = 1; n <= n_max; ++n) {
        long o = (n % static_cast<unsigned long>(p) == 0)
                     ? ord_p(Integer(n), Integer(p))
                     : 0;
        Rational cand = v * Integer(n) - o;
        if (!have || cand < best) { best = cand; have = true; }
    }
    return best;
}

}  // namespace szp
