#pragma once

#include "szp/numeric.hpp"

#include <optional>
#include <vector>

namespace szp {

struct PrecisionError : std::runtime_error {
    long required_precision;
    PrecisionError(const std::string& msg, long required)
        : std::runtime_error(msg), required_precision(required) {}
};

// Element of Z/p^N[x]/(x^E - p): coefficient vector of length E, entries
// canonical residues in [0, p^N).
struct RingElement {
    std::vector<Integer> coeff;
};

struct LogSeriesResult {
    RingElement value;
    long terms_used;
    // Valuation below which the truncated tail is certified to vanish.
    Rational tail_valuation;
};

// Truncated arithmetic in Z/p^N[x]/(x^E - p) for tame Kummer extensions.
// Requires E | p-1 so that the E-th roots of unity live in the base and the
// tensor CRT splits inside this single ring.
class TruncatedEisensteinRing {
public:
    TruncatedEisensteinRing(long p, long ram_index, long precision);

    long p() const { return p_; }
    long ram_index() const { return ram_; }
    long precision() const { return prec_; }
    const Integer& modulus() const { return pN_; }

    RingElement zero() const;
    RingElement one() const;
    RingElement from_integer(Integer n) const;
    RingElement uniformizer() const;  // the class of x
    RingElement element(std::vector<Integer> coeffs) const;

    RingElement add(const RingElement& a, const RingElement& b) const;
    RingElement sub(const RingElement& a, const RingElement& b) const;
    RingElement neg(const RingElement& a) const;
    RingElement mul(const RingElement& a, const RingElement& b) const;
    RingElement mul_scalar(const RingElement& a, const Integer& s) const;
    RingElement pow(RingElement base, unsigned long exp) const;

    bool is_zero(const RingElement& a) const;
    // True when val(a - b) >= prec_units (in units of 1/E) or a == b exactly.
    bool congruent(const RingElement& a, const RingElement& b,
                   const Rational& min_valuation) const;

    // min_i (ord_p(c_i) + i/E); nullopt when every coefficient vanishes
    // mod p^N (precision exhausted).
    std::optional<Rational> valuation(const RingElement& a) const;

    // The Teichmuller lift w with w^E = 1 and w = g^{k(p-1)/E} mod p for the
    // smallest generator g of (Z/p)^x. 0 <= k < E.
    RingElement teichmuller_root(long k) const;

    // Teichmuller lift of g^{power*(p-1)/order}; order must divide p-1.
    RingElement root_of_unity(long order, long power) const;

    // Multiplicative inverse of a unit (valuation 0) element.
    RingElement invert_unit(const RingElement& a) const;

    // Exact division by the uniformizer class; requires x | a.
    RingElement divide_by_x(const RingElement& a) const;

    // a / b for b with determinable valuation <= val(a). The quotient's top
    // E*val(b) valuation-units are uncertified; callers pad precision.
    RingElement divide(const RingElement& a, const RingElement& b) const;

    // Truncated p-adic logarithm -sum (1-u)^n/n. Requires
    // val(u-1) > 1/(p-1). The term count is derived from the precision, not
    // guessed.
    LogSeriesResult log_series(const RingElement& u) const;

private:
    long p_, ram_, prec_;
    Integer pN_;
    Integer reduce(Integer v) const;
};

// Exact min over 1 <= n <= n_max of (n*v - ord_p(n)). n_max must exceed the
// analytic minimizer 1/(v ln p).
Rational crude_min_term(const Rational& v, long p, unsigned long n_max);

}  // namespace szp
