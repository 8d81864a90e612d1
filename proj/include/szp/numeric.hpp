#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace szp {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// All real-valued quantities (ln p, ln pi, ...) are carried at a fixed
// 50-decimal-digit working precision.
inline constexpr int kRealDigits = 50;
using Real = boost::multiprecision::number<
    boost::multiprecision::cpp_dec_float<kRealDigits>>;

// Error budget for any value that went through a transcendental function.
// The last ~5 digits of the 50 are treated as unreliable.
inline Real real_error_budget() { return Real("1e-45"); }

enum class Provenance { exact, approximated };

// A real number tagged with how it was produced and an absolute error bound.
// Exact values (integers, rationals promoted to Real without rounding loss
// beyond the budget) carry err = 0 conceptually; anything that touched a log
// or exp carries the working budget scaled by magnitude.
struct LogValue {
    Real value{};
    Provenance provenance = Provenance::exact;
    Real error{};

    LogValue() = default;
    explicit LogValue(Real v) : value(std::move(v)) {}
    LogValue(Real v, Provenance p, Real e)
        : value(std::move(v)), provenance(p), error(std::move(e)) {}

    static LogValue exact(Real v) { return LogValue(std::move(v)); }
    static LogValue approx(Real v) {
        Real e = (v < 0 ? -v : v) * real_error_budget() + real_error_budget();
        return LogValue(std::move(v), Provenance::approximated, std::move(e));
    }

    LogValue operator+(const LogValue& o) const {
        return LogValue(value + o.value,
                        (provenance == Provenance::exact &&
                         o.provenance == Provenance::exact)
                            ? Provenance::exact
                            : Provenance::approximated,
                        error + o.error);
    }
    LogValue operator-(const LogValue& o) const {
        return LogValue(value - o.value,
                        (provenance == Provenance::exact &&
                         o.provenance == Provenance::exact)
                            ? Provenance::exact
                            : Provenance::approximated,
                        error + o.error);
    }
    LogValue operator*(const Rational& q) const;
    LogValue& operator+=(const LogValue& o) { return *this = *this + o; }
};

// Tri-state verdict for comparisons of real quantities: the contract of every
// inequality check is "holds / fails / within-error-margin".
enum class Verdict { holds, fails, within_error };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        default: return "within-error";
    }
}

Real to_real(const Rational& q);
Real to_real(const Integer& n);
LogValue to_logvalue(const Rational& q);

// Verdict for "lhs <= rhs" given the combined error bound of both sides.
Verdict compare_leq(const LogValue& lhs, const LogValue& rhs);

// Exact integer floor of a rational (rounds toward minus infinity).
Integer floor_rational(const Rational& q);

// p-adic valuation of a nonzero integer.
long ord_p(Integer n, const Integer& p);

// Parses "a", "-a", or "a/b" with b > 0 after normalization.
Rational parse_rational(const std::string& s);
std::string rational_to_string(const Rational& q);

Integer pow_integer(Integer base, unsigned long exp);
Rational pow_rational(const Rational& base, unsigned long exp);

// Natural logs used throughout; cached per prime.
LogValue ln_real(const Integer& n);
LogValue ln_rational(const Rational& q);  // q > 0
LogValue ln_pi();

// p^(a/b) as a Real (exact integer power when b = 1).
Real pow_real_rational(long p, const Rational& exp);

// Fixed-format decimal rendering (deterministic across runs/platforms).
std::string format_real(const Real& x, int digits = 30);

}  // namespace szp
