#pragma once

#include "szp/local_field.hpp"
#include "szp/padic.hpp"

#include <string>
#include <vector>

namespace szp {

// K_1, ..., K_m over a common residue characteristic.
struct TensorFactorList {
    std::vector<LocalFieldData> factors;

    static TensorFactorList make(std::vector<LocalFieldData> factors);
    long p() const { return factors.front().p; }
    size_t size() const { return factors.size(); }
};

enum class RadiusCase { unramified, small, general, archimedean };

const char* to_string(RadiusCase c);

struct PolyRadiusBound {
    LogValue ln_radius;
    RadiusCase case_tag = RadiusCase::general;
};

struct DiffNorms {
    Rational l1;    // sum of different exponents
    Rational linf;  // max different exponent
};

DiffNorms diff_norms(const TensorFactorList& factors);

// ord_p of the descent multiplier beta: ||diff||_1 - ||diff||_inf >= 0.
Rational beta_order(const TensorFactorList& factors);

// ln R = -floor(a_ord + ||diff||_inf - ||diff||_1) ln p + m ln(c_p)
//        + sum ln(e_i), the single-case hull bound.
PolyRadiusBound worst_case_radius(const TensorFactorList& factors,
                                  const Rational& a_ord);

// Four-case hull radius. `arch` selects the archimedean case, where the
// factor count alone matters ((j+1) ln pi). At unramified nonarchimedean
// tuples the radius is 0 regardless of a_ord (bad reduction at an
// unramified place is contradictory input; `contradiction_warning` is set).
struct HullRadius {
    PolyRadiusBound bound;
    bool contradiction_warning = false;
};
HullRadius hull_radius(const TensorFactorList& factors, const Rational& a_ord,
                       bool arch);

// ---------------------------------------------------------------------------
// Brute-force CRT/idempotent oracle in the Kummer family x^e - p, e | p-1.
// Elements of O_{K_1} (x) ... (x) O_{K_m} are represented base-changed to
// R = Z/p^N[x]/(x^E - p) with E = lcm(e_i): polynomials in the variables
// x_2..x_m (x_i^{e_i} = p) with coefficients in R; the first factor embeds
// into R as x^(E/e_1). Factors are sorted by descending e so the excluded
// first different is the sup-norm one.
// ---------------------------------------------------------------------------

class KummerTensorOracle {
public:
    // e_list entries must divide p-1, as must their lcm.
    KummerTensorOracle(std::vector<long> e_list, long p, long precision = 8);

    const TruncatedEisensteinRing& base() const { return ring_; }
    const std::vector<long>& sorted_e() const { return e_; }
    long component_count() const;  // prod_{i>=2} e_i

    // Tensor element: coefficients indexed by mixed-radix exponents of
    // x_2..x_m (innermost index varies fastest).
    struct Element {
        std::vector<RingElement> coeff;
    };

    Element tensor_zero() const;
    Element tensor_one() const;
    Element tensor_scalar(const RingElement& r) const;
    Element tensor_add(const Element& a, const Element& b) const;
    Element tensor_sub(const Element& a, const Element& b) const;
    Element tensor_mul(const Element& a, const Element& b) const;

    // The idempotents of K_1 (x) ... (x) K_m, one per CRT component. They
    // are not integral: each is numerators[k] / x^shift with the shared
    // denominator x^shift, shift = E * (||diff||_1 - ||diff||_inf). The unit
    // parts of the f_i'(alpha_i) denominators are inverted in-ring (exact).
    struct IdempotentSystem {
        std::vector<Element> numerators;
        long shift = 0;
    };
    IdempotentSystem idempotents() const;

    // beta = 1 (x) f_2'(alpha_2) (x) ... (x) f_m'(alpha_m).
    Element beta_element() const;

    Rational check_precision() const;  // valuation level of all congruences

    struct IdempotentCheck {
        bool idempotent = false;   // g^2 = g for each g
        bool orthogonal = false;   // g_a g_b = 0 for a != b
        bool partition = false;    // sum g = 1
    };
    IdempotentCheck check_idempotents() const;

    struct DescentReport {
        bool pass = false;
        // min over generators/coefficients of val(coeff) - val(denominator);
        // membership in the coefficient lattice needs this >= 0.
        Rational min_slack;
        Rational denominator_valuation;
        std::string detail;
    };
    // Checks beta * (every idempotent-basis generator of O_L) lies in the
    // coefficient lattice T = O_{K_1} (x) ... (x) O_{K_m}.
    DescentReport verify_descent() const;

private:
    std::vector<long> e_;    // sorted descending; e_[0] is the base factor
    long p_;
    long big_e_;             // lcm of e_
    long target_prec_;
    TruncatedEisensteinRing ring_;  // working ring, padded precision

    std::vector<long> var_e_;  // e_2..e_m
    size_t tensor_size_;

    RingElement root(long i, long j) const;  // zeta_{e_i}^j * x^(E/e_i)
    // f_i(X)/(X - alpha) = X^{e_i-1} + alpha X^{e_i-2} + ... + alpha^{e_i-1}
    Element lagrange_numerator(const std::vector<long>& js) const;
    RingElement denominator(const std::vector<long>& js) const;
    std::vector<std::vector<long>> component_indices() const;
};

struct DescentVerdict {
    bool pass = false;
    Rational denominator_valuation;
    Rational expected_beta_order;
    Rational min_slack;
    std::string detail;
};

// Full oracle run: descent membership plus the idempotent algebra
// (orthogonality, idempotency, partition of unity) for one Kummer tower.
DescentVerdict verify_descent(const std::vector<long>& e_list, long p,
                              long precision = 8);

KummerTensorOracle::IdempotentSystem idempotent_set(
    const std::vector<long>& e_list, long p, long precision = 8);

}  // namespace szp
