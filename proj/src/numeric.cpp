#include "szp/numeric.hpp"

#include <boost/math/constants/constants.hpp>

#include <map>
#include <mutex>
#include <sstream>

namespace szp {

LogValue LogValue::operator*(const Rational& q) const {
    Real f = to_real(q);
    Real af = f < 0 ? -f : f;
    return LogValue(value * f, provenance, error * af);
}

Real to_real(const Rational& q) {
    return Real(boost::multiprecision::numerator(q)) /
           Real(boost::multiprecision::denominator(q));
}

Real to_real(const Integer& n) { return Real(n); }

LogValue to_logvalue(const Rational& q) {
    // A single division at 50 digits; rounding is below the budget.
    return LogValue::exact(to_real(q));
}

Verdict compare_leq(const LogValue& lhs, const LogValue& rhs) {
    Real margin = lhs.error + rhs.error;
    if (lhs.provenance == Provenance::exact &&
        rhs.provenance == Provenance::exact && margin == 0) {
        return lhs.value <= rhs.value ? Verdict::holds : Verdict::fails;
    }
    if (lhs.value <= rhs.value - margin) return Verdict::holds;
    if (lhs.value > rhs.value + margin) return Verdict::fails;
    return Verdict::within_error;
}

Integer floor_rational(const Rational& q) {
    Integer num = boost::multiprecision::numerator(q);
    Integer den = boost::multiprecision::denominator(q);
    Integer quo = num / den;
    if (num < 0 && quo * den != num) --quo;
    return quo;
}

long ord_p(Integer n, const Integer& p) {
    if (n == 0) throw std::domain_error("ord_p of zero");
    if (n < 0) n = -n;
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rational(num, den);
}

std::string rational_to_string(const Rational& q) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(q);
    if (boost::multiprecision::denominator(q) != 1)
        os << "/" << boost::multiprecision::denominator(q);
    return os.str();
}

Integer pow_integer(Integer base, unsigned long exp) {
    Integer out = 1;
    while (exp) {
        if (exp & 1) out *= base;
        base *= base;
        exp >>= 1;
    }
    return out;
}

Rational pow_rational(const Rational& base, unsigned long exp) {
    return Rational(pow_integer(boost::multiprecision::numerator(base), exp),
                    pow_integer(boost::multiprecision::denominator(base), exp));
}

LogValue ln_real(const Integer& n) {
    if (n <= 0) throw std::domain_error("ln of non-positive integer");
    if (n == 1) return LogValue::exact(Real(0));
    static std::map<Integer, Real> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, log(Real(n))).first;
    return LogValue::approx(it->second);
}

LogValue ln_rational(const Rational& q) {
    if (q <= 0) throw std::domain_error("ln of non-positive rational");
    return ln_real(boost::multiprecision::numerator(q)) -
           ln_real(boost::multiprecision::denominator(q));
}

Real pow_real_rational(long p, const Rational& exp) {
    Integer num = boost::multiprecision::numerator(exp);
    Integer den = boost::multiprecision::denominator(exp);
    if (den == 1 && num >= 0)
        return Real(pow_integer(Integer(p),
                                static_cast<unsigned long>(num)));
    return boost::multiprecision::exp(to_real(exp) * log(Real(p)));
}

LogValue ln_pi() {
    static const Real v = log(boost::math::constants::pi<Real>());
    return LogValue::approx(v);
}

std::string format_real(const Real& x, int digits) {
    return x.str(digits, std::ios_base::scientific);
}

}  // namespace szp
