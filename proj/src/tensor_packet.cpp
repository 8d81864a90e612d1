#include "szp/tensor_packet.hpp"

#include <algorithm>
#include <numeric>

namespace szp {

TensorFactorList TensorFactorList::make(std::vector<LocalFieldData> factors) {
    if (factors.empty())
        throw std::invalid_argument("tensor factor list must be nonempty");
    long p = factors.front().p;
    for (const auto& f : factors)
        if (f.p != p)
            throw std::invalid_argument(
                "tensor factors must share the residue characteristic");
    return TensorFactorList{std::move(factors)};
}

const char* to_string(RadiusCase c) {
    switch (c) {
        case RadiusCase::unramified: return "unramified";
        case RadiusCase::small: return "small";
        case RadiusCase::general: return "general";
        default: return "archimedean";
    }
}

DiffNorms diff_norms(const TensorFactorList& factors) {
    DiffNorms n{Rational(0), Rational(0)};
    for (const auto& f : factors.factors) {
        n.l1 += f.diff_exp;
        if (f.diff_exp > n.linf) n.linf = f.diff_exp;
    }
    return n;
}

Rational beta_order(const TensorFactorList& factors) {
    auto n = diff_norms(factors);
    return n.l1 - n.linf;
}

PolyRadiusBound worst_case_radius(const TensorFactorList& factors,
                                  const Rational& a_ord) {
    if (a_ord < 0) throw std::domain_error("a_ord must be >= 0");
    auto n = diff_norms(factors);
    long p = factors.p();
    Integer fl = floor_rational(a_ord + n.linf - n.l1);
    LogValue r = ln_real(Integer(p)) * Rational(-fl);
    r += ln_bp(p) * Rational(static_cast<long>(factors.size()));
    for (const auto& f : factors.factors) r += ln_real(Integer(f.e));
    return PolyRadiusBound{r, RadiusCase::general};
}

HullRadius hull_radius(const TensorFactorList& factors, const Rational& a_ord,
                       bool arch) {
    HullRadius out;
    long m = static_cast<long>(factors.size());
    if (arch) {
        out.bound = {ln_pi() * Rational(m), RadiusCase::archimedean};
        return out;
    }
    if (a_ord < 0) throw std::domain_error("a_ord must be >= 0");
    bool unram = std::all_of(factors.factors.begin(), factors.factors.end(),
                             [](const LocalFieldData& f) { return f.e == 1; });
    if (unram) {
        // a_{j,v} = 1 at unramified places by Neron-Ogg-Shafarevich; a
        // positive a_ord here means contradictory descriptor input.
        out.contradiction_warning = (a_ord > 0);
        out.bound = {LogValue::exact(Real(0)), RadiusCase::unramified};
        return out;
    }
    Rational b = beta_order(factors);
    Integer fl = floor_rational(a_ord - b);
    LogValue r = ln_real(Integer(factors.p())) * Rational(-fl);
    bool small = std::all_of(factors.factors.begin(), factors.factors.end(),
                             [](const LocalFieldData& f) { return is_small(f); });
    if (small) {
        out.bound = {r, RadiusCase::small};
        return out;
    }
    r += ln_bp(factors.p()) * Rational(m);
    for (const auto& f : factors.factors) r += ln_real(Integer(f.e));
    out.bound = {r, RadiusCase::general};
    return out;
}

// ---------------------------------------------------------------------------
// Kummer tensor oracle
// ---------------------------------------------------------------------------

namespace {
long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }
}  // namespace

KummerTensorOracle::KummerTensorOracle(std::vector<long> e_list, long p,
                                       long precision)
    : e_(std::move(e_list)),
      p_(p),
      big_e_(1),
      target_prec_(precision),
      ring_(2, 1, 4) {  // placeholder, rebuilt below
    if (e_.empty()) throw std::invalid_argument("empty tower");
    std::sort(e_.begin(), e_.end(), std::greater<long>());
    for (long e : e_) {
        if (e < 1 || (p_ - 1) % e != 0)
            throw std::domain_error("unsupported tower: each e must divide p-1");
        big_e_ = lcm_long(big_e_, e);
    }
    if ((p_ - 1) % big_e_ != 0)
        throw std::domain_error("unsupported tower: lcm(e) must divide p-1");
    var_e_.assign(e_.begin() + 1, e_.end());
    tensor_size_ = 1;
    long shift = 0;
    for (long e : var_e_) {
        tensor_size_ *= static_cast<size_t>(e);
        shift += (big_e_ / e) * (e - 1);
    }
    // Pad precision: divisions by x^shift (twice, in cleared congruences)
    // lose up to ceil(2*shift/E) p-digits.
    long pad = (2 * shift + big_e_ - 1) / big_e_ + 2;
    ring_ = TruncatedEisensteinRing(p_, big_e_, target_prec_ + pad);
}

long KummerTensorOracle::component_count() const {
    return static_cast<long>(tensor_size_);
}

KummerTensorOracle::Element KummerTensorOracle::tensor_zero() const {
    return Element{std::vector<RingElement>(tensor_size_, ring_.zero())};
}

KummerTensorOracle::Element KummerTensorOracle::tensor_one() const {
    auto e = tensor_zero();
    e.coeff[0] = ring_.one();
    return e;
}

KummerTensorOracle::Element KummerTensorOracle::tensor_scalar(
    const RingElement& r) const {
    auto e = tensor_zero();
    e.coeff[0] = r;
    return e;
}

KummerTensorOracle::Element KummerTensorOracle::tensor_add(
    const Element& a, const Element& b) const {
    auto out = a;
    for (size_t i = 0; i < tensor_size_; ++i)
        out.coeff[i] = ring_.add(out.coeff[i], b.coeff[i]);
    return out;
}

KummerTensorOracle::Element KummerTensorOracle::tensor_sub(
    const Element& a, const Element& b) const {
    auto out = a;
    for (size_t i = 0; i < tensor_size_; ++i)
        out.coeff[i] = ring_.sub(out.coeff[i], b.coeff[i]);
    return out;
}

KummerTensorOracle::Element KummerTensorOracle::tensor_mul(
    const Element& a, const Element& b) const {
    auto decompose = [&](size_t idx) {
        std::vector<long> js(var_e_.size());
        for (size_t k = var_e_.size(); k-- > 0;) {
            js[k] = static_cast<long>(idx % var_e_[k]);
            idx /= var_e_[k];
        }
        return js;
    };
    auto compose = [&](const std::vector<long>& js) {
        size_t idx = 0;
        for (size_t k = 0; k < var_e_.size(); ++k)
            idx = idx * var_e_[k] + static_cast<size_t>(js[k]);
        return idx;
    };
    auto out = tensor_zero();
    for (size_t i = 0; i < tensor_size_; ++i) {
        if (ring_.is_zero(a.coeff[i])) continue;
        auto ji = decompose(i);
        for (size_t j = 0; j < tensor_size_; ++j) {
            if (ring_.is_zero(b.coeff[j])) continue;
            auto jj = decompose(j);
            long pfactor = 0;
            std::vector<long> jt(var_e_.size());
            for (size_t k = 0; k < var_e_.size(); ++k) {
                long sum = ji[k] + jj[k];
                pfactor += sum / var_e_[k];  // x_k^{e_k} = p
                jt[k] = sum % var_e_[k];
            }
            RingElement c = ring_.mul(a.coeff[i], b.coeff[j]);
            if (pfactor > 0)
                c = ring_.mul_scalar(
                    c, pow_integer(Integer(p_),
                                   static_cast<unsigned long>(pfactor)));
            size_t t = compose(jt);
            out.coeff[t] = ring_.add(out.coeff[t], c);
        }
    }
    return out;
}

RingElement KummerTensorOracle::root(long var_k, long j) const {
    long e = var_e_[static_cast<size_t>(var_k)];
    RingElement zeta = ring_.root_of_unity(e, j);
    RingElement radical =
        ring_.pow(ring_.uniformizer(),
                  static_cast<unsigned long>(big_e_ / e));
    return ring_.mul(zeta, radical);
}

KummerTensorOracle::Element KummerTensorOracle::lagrange_numerator(
    const std::vector<long>& js) const {
    // prod over variables of (X^{e-1} + alpha X^{e-2} + ... + alpha^{e-1}).
    Element out = tensor_one();
    for (size_t k = 0; k < var_e_.size(); ++k) {
        long e = var_e_[k];
        RingElement alpha = root(static_cast<long>(k), js[k]);
        Element q = tensor_zero();
        RingElement apow = ring_.one();
        for (long t = e - 1; t >= 0; --t) {
            // coefficient alpha^{e-1-t} on x_k^t
            std::vector<long> mono(var_e_.size(), 0);
            mono[k] = t;
            size_t idx = 0;
            for (size_t kk = 0; kk < var_e_.size(); ++kk)
                idx = idx * var_e_[kk] + static_cast<size_t>(mono[kk]);
            q.coeff[idx] = apow;
            apow = ring_.mul(apow, alpha);
        }
        out = tensor_mul(out, q);
    }
    return out;
}

RingElement KummerTensorOracle::denominator(const std::vector<long>& js) const {
    RingElement d = ring_.one();
    for (size_t k = 0; k < var_e_.size(); ++k) {
        long e = var_e_[k];
        RingElement alpha = root(static_cast<long>(k), js[k]);
        RingElement fp = ring_.mul_scalar(
            ring_.pow(alpha, static_cast<unsigned long>(e - 1)), Integer(e));
        d = ring_.mul(d, fp);
    }
    return d;
}

std::vector<std::vector<long>> KummerTensorOracle::component_indices() const {
    std::vector<std::vector<long>> out;
    std::vector<long> js(var_e_.size(), 0);
    while (true) {
        out.push_back(js);
        size_t k = var_e_.size();
        while (k > 0) {
            --k;
            if (++js[k] < var_e_[k]) break;
            js[k] = 0;
            if (k == 0) return out;
        }
        if (var_e_.empty()) return out;
    }
}

KummerTensorOracle::IdempotentSystem KummerTensorOracle::idempotents() const {
    IdempotentSystem sys;
    long shift = 0;
    for (long e : var_e_) shift += (big_e_ / e) * (e - 1);
    sys.shift = shift;
    for (const auto& js : component_indices()) {
        Element n = lagrange_numerator(js);
        RingElement d = denominator(js);
        // d = x^shift * unit; strip the uniformizer power, invert the unit.
        RingElement u = d;
        for (long i = 0; i < shift; ++i) u = ring_.divide_by_x(u);
        RingElement uinv = ring_.invert_unit(u);
        Element m = n;
        for (auto& c : m.coeff) c = ring_.mul(c, uinv);
        sys.numerators.push_back(std::move(m));
    }
    return sys;
}

KummerTensorOracle::Element KummerTensorOracle::beta_element() const {
    Element b = tensor_zero();
    std::vector<long> mono(var_e_.size());
    Integer scale = 1;
    for (size_t k = 0; k < var_e_.size(); ++k) {
        mono[k] = var_e_[k] - 1;
        scale *= var_e_[k];
    }
    size_t idx = 0;
    for (size_t kk = 0; kk < var_e_.size(); ++kk)
        idx = idx * var_e_[kk] + static_cast<size_t>(mono[kk]);
    b.coeff[idx] = ring_.from_integer(scale);
    return b;
}

Rational KummerTensorOracle::check_precision() const {
    return Rational(target_prec_);
}

KummerTensorOracle::IdempotentCheck KummerTensorOracle::check_idempotents()
    const {
    IdempotentCheck chk;
    auto sys = idempotents();
    RingElement xs =
        ring_.pow(ring_.uniformizer(), static_cast<unsigned long>(sys.shift));
    Rational level = check_precision();

    auto congruent_elems = [&](const Element& a, const Element& b) {
        for (size_t i = 0; i < tensor_size_; ++i)
            if (!ring_.congruent(a.coeff[i], b.coeff[i], level)) return false;
        return true;
    };

    chk.idempotent = chk.orthogonal = true;
    for (size_t a = 0; a < sys.numerators.size(); ++a) {
        for (size_t b = a; b < sys.numerators.size(); ++b) {
            Element prod = tensor_mul(sys.numerators[a], sys.numerators[b]);
            if (a == b) {
                // cleared form of g^2 = g: m*m = x^shift * m
                Element rhs = sys.numerators[a];
                for (auto& c : rhs.coeff) c = ring_.mul(c, xs);
                if (!congruent_elems(prod, rhs)) chk.idempotent = false;
            } else {
                if (!congruent_elems(prod, tensor_zero())) chk.orthogonal = false;
            }
        }
    }
    Element total = tensor_zero();
    for (const auto& m : sys.numerators) total = tensor_add(total, m);
    chk.partition = congruent_elems(total, tensor_scalar(xs));
    return chk;
}

KummerTensorOracle::DescentReport KummerTensorOracle::verify_descent() const {
    DescentReport rep;
    auto sys = idempotents();
    rep.denominator_valuation = Rational(sys.shift, big_e_);
    Element beta = beta_element();
    bool first = true;
    for (const auto& m : sys.numerators) {
        Element bm = tensor_mul(beta, m);
        for (long t = 0; t < big_e_; ++t) {
            // generator x^t * g_psi of the component; membership in the
            // coefficient lattice means every coefficient of beta*x^t*m
            // is divisible by x^shift.
            Element w = bm;
            if (t > 0) {
                RingElement xt = ring_.pow(ring_.uniformizer(),
                                           static_cast<unsigned long>(t));
                for (auto& c : w.coeff) c = ring_.mul(c, xt);
            }
            for (const auto& c : w.coeff) {
                auto v = ring_.valuation(c);
                Rational slack = v ? (*v - rep.denominator_valuation)
                                   : (check_precision());
                if (first || slack < rep.min_slack) {
                    rep.min_slack = slack;
                    first = false;
                }
            }
        }
    }
    rep.pass = !first && rep.min_slack >= 0;
    if (first) {  // m == 1 tower: T = O_L, trivially inside
        rep.pass = true;
        rep.min_slack = 0;
    }
    rep.detail = rep.pass ? "beta * O_L inside coefficient lattice"
                          : "membership failed";
    return rep;
}

DescentVerdict verify_descent(const std::vector<long>& e_list, long p,
                              long precision) {
    KummerTensorOracle oracle(e_list, p, precision);
    DescentVerdict v;
    std::vector<LocalFieldData> fields;
    for (long e : e_list) fields.push_back(LocalFieldData::make(p, e, 1));
    v.expected_beta_order = beta_order(TensorFactorList::make(fields));

    auto chk = oracle.check_idempotents();
    auto rep = oracle.verify_descent();
    v.denominator_valuation = rep.denominator_valuation;
    v.min_slack = rep.min_slack;
    v.pass = rep.pass && chk.idempotent && chk.orthogonal && chk.partition &&
             v.denominator_valuation == v.expected_beta_order;
    v.detail = rep.detail;
    if (!chk.idempotent) v.detail += "; idempotency failed";
    if (!chk.orthogonal) v.detail += "; orthogonality failed";
    if (!chk.partition) v.detail += "; partition of unity failed";
    if (v.denominator_valuation != v.expected_beta_order)
        v.detail += "; denominator valuation != ||diff||_1 - ||diff||_inf";
    return v;
}

KummerTensorOracle::IdempotentSystem idempotent_set(
    const std::vector<long>& e_list, long p, long precision) {
    return KummerTensorOracle(e_list, p, precision).idempotents();
}

}  // namespace szp
