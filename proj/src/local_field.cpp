#include "szp/local_field.hpp"

#include "szp/arith.hpp"

namespace szp {

LocalFieldData LocalFieldData::make(long p, long e, long f) {
    return make_with_diff(p, e, f, diff_exponent_eisenstein(e, p));
}

LocalFieldData LocalFieldData::make_with_diff(long p, long e, long f,
                                              Rational diff_exp) {
    if (!is_prime(static_cast<std::uint64_t>(p)))
        throw std::domain_error("residue characteristic must be prime");
    if (e < 1 || f < 1) throw std::domain_error("e and f must be >= 1");
    if (diff_exp < Rational(e - 1, e))
        throw std::domain_error("diff exponent below the tame floor (e-1)/e");
    LocalFieldData d;
    d.p = p;
    d.e = e;
    d.f = f;
    d.diff_exp = std::move(diff_exp);
    d.wild = (e % p == 0);
    return d;
}

Rational diff_exponent_eisenstein(long e, long p) {
    if (e < 1) throw std::domain_error("e must be >= 1");
    long o = (e % p == 0) ? ord_p(Integer(e), Integer(p)) : 0;
    return Rational(o) + Rational(e - 1, e);
}

bool is_small(const LocalFieldData& field) { return field.e < field.p - 1; }

LogValue ln_bp(long p) {
    LogValue lnp = ln_real(Integer(p));
    Real v = -1 - log(lnp.value);
    return LogValue::approx(v);
}

LogValue log_image_radius(const LocalFieldData& field) {
    if (is_small(field)) {
        // log(O_K^x) = pi O_K: radius p^(-1/e).
        return ln_real(Integer(field.p)) * Rational(-1, field.e);
    }
    return ln_real(Integer(field.e)) + ln_bp(field.p);
}

LogValue log_shell_radius(const LocalFieldData& field) {
    long ord2p = (field.p == 2) ? 2 : 1;  // ord_p(2p)
    return ln_real(Integer(field.p)) * Rational(ord2p) +
           log_image_radius(field);
}

}  // namespace szp
