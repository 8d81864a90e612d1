#include "szp/global_model.hpp"

#include "szp/arith.hpp"
#include "szp/local_field.hpp"

#include <json.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace szp {

using json = nlohmann::ordered_json;

namespace {

Integer json_integer(const json& j, const std::string& key) {
    const auto& v = j.at(key);
    if (v.is_string()) return Integer(v.get<std::string>());
    if (v.is_number_integer()) return Integer(v.get<long long>());
    throw ValidationError("field '" + key + "' must be an integer or integer string");
}

long json_long(const json& j, const std::string& key) {
    Integer n = json_integer(j, key);
    if (n > std::numeric_limits<long>::max() || n < std::numeric_limits<long>::min())
        throw ValidationError("field '" + key + "' out of range");
    return static_cast<long>(n);
}

// Invariants arrive either as an exact integer ("delta_min") or as a
// pre-taken log ("ln_delta_min", decimal string).
LogValue read_log_invariant(const json& inv, const std::string& ln_key,
                            const std::string& exact_key,
                            std::optional<Integer>& exact_out) {
    if (inv.contains(exact_key)) {
        Integer n = json_integer(inv, exact_key);
        if (n < 1)
            throw ValidationError("field '" + exact_key + "' must be >= 1");
        exact_out = n;
        return ln_real(n);
    }
    if (inv.contains(ln_key)) {
        const auto& v = inv.at(ln_key);
        if (v.is_string()) return LogValue::approx(Real(v.get<std::string>()));
        if (v.is_number()) return LogValue::approx(Real(v.dump()));
        throw ValidationError("field '" + ln_key + "' must be a decimal string");
    }
    throw ValidationError("invariants must supply '" + ln_key + "' or '" +
                          exact_key + "'");
}

}  // namespace

ThetaDataDescriptor parse_descriptor(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("descriptor parse error: ") + e.what());
    }
    if (!j.contains("schema") || j.at("schema") != 1)
        throw ValidationError("unsupported descriptor schema (expected \"schema\": 1)");

    ThetaDataDescriptor d;
    d.l = json_long(j, "l");
    d.d0 = json_long(j, "d0");
    d.deg_F = json_long(j, "deg_F");

    if (!j.contains("fibers") || !j.at("fibers").is_array())
        throw ValidationError("'fibers' must be an array");
    for (const auto& jf : j.at("fibers")) {
        Fiber f;
        f.p = json_long(jf, "p");
        if (!jf.contains("places") || !jf.at("places").is_array())
            throw ValidationError("fiber missing 'places' array");
        for (const auto& jp : jf.at("places")) {
            PlaceRecord v;
            v.e0 = json_long(jp, "e0");
            v.f0 = json_long(jp, "f0");
            v.eK = json_long(jp, "eK");
            v.fK = json_long(jp, "fK");
            if (jp.contains("diffK")) {
                const auto& dv = jp.at("diffK");
                v.diffK = dv.is_string() ? parse_rational(dv.get<std::string>())
                                         : Rational(dv.get<long long>());
            }
            if (jp.contains("bad")) {
                BadData b;
                b.ord_q = json_integer(jp.at("bad"), "ord_q");
                if (jp.at("bad").contains("ord_delta_min"))
                    b.ord_delta_min = json_integer(jp.at("bad"), "ord_delta_min");
                v.bad = std::move(b);
            }
            f.places.push_back(std::move(v));
        }
        d.fibers.push_back(std::move(f));
    }

    if (!j.contains("invariants"))
        throw ValidationError("descriptor missing 'invariants'");
    const auto& inv = j.at("invariants");
    d.inv.ln_delta_min =
        read_log_invariant(inv, "ln_delta_min", "delta_min", d.inv.delta_min);
    d.inv.ln_cond = read_log_invariant(inv, "ln_cond", "cond", d.inv.cond);
    d.inv.ln_disc_F =
        read_log_invariant(inv, "ln_disc_F", "disc_F", d.inv.disc_F);
    if (inv.contains("deg_K")) d.inv.deg_K = json_integer(inv, "deg_K");
    if (inv.contains("disc_K") || inv.contains("ln_disc_K"))
        d.inv.ln_disc_K =
            read_log_invariant(inv, "ln_disc_K", "disc_K", d.inv.disc_K);

    validate_descriptor(d);
    return d;
}

std::string serialize_descriptor(const ThetaDataDescriptor& d) {
    json j;
    j["schema"] = 1;
    j["l"] = d.l;
    j["d0"] = d.d0;
    j["deg_F"] = d.deg_F;
    j["fibers"] = json::array();
    for (const auto& f : d.fibers) {
        json jf;
        jf["p"] = f.p;
        jf["places"] = json::array();
        for (const auto& v : f.places) {
            json jp;
            jp["e0"] = v.e0;
            jp["f0"] = v.f0;
            jp["eK"] = v.eK;
            jp["fK"] = v.fK;
            jp["diffK"] = rational_to_string(v.diffK);
            if (v.bad) {
                json jb;
                jb["ord_q"] = v.bad->ord_q.str();
                if (v.bad->ord_delta_min)
                    jb["ord_delta_min"] = v.bad->ord_delta_min->str();
                jp["bad"] = std::move(jb);
            }
            jf["places"].push_back(std::move(jp));
        }
        j["fibers"].push_back(std::move(jf));
    }
    json inv;
    if (d.inv.delta_min) inv["delta_min"] = d.inv.delta_min->str();
    else inv["ln_delta_min"] = format_real(d.inv.ln_delta_min.value, 45);
    if (d.inv.cond) inv["cond"] = d.inv.cond->str();
    else inv["ln_cond"] = format_real(d.inv.ln_cond.value, 45);
    if (d.inv.disc_F) inv["disc_F"] = d.inv.disc_F->str();
    else inv["ln_disc_F"] = format_real(d.inv.ln_disc_F.value, 45);
    if (d.inv.deg_K) inv["deg_K"] = d.inv.deg_K->str();
    if (d.inv.disc_K) inv["disc_K"] = d.inv.disc_K->str();
    else if (d.inv.ln_disc_K)
        inv["ln_disc_K"] = format_real(d.inv.ln_disc_K->value, 45);
    j["invariants"] = std::move(inv);
    return j.dump(2) + "\n";
}

void validate_descriptor(ThetaDataDescriptor& d) {
    if (d.l == 2)
        throw ValidationError(
            "l = 2 rejected: the theta-data hypothesis requires an odd prime l > 3");
    if (d.l == 3)
        throw ValidationError(
            "l = 3 rejected: epsilon_l has a pole (denominator l^2 + l - 12 vanishes)");
    if (d.l < 5 || !is_prime(static_cast<std::uint64_t>(d.l)))
        throw ValidationError("l must be a prime > 3");
    if (d.d0 < 1) throw ValidationError("d0 must be >= 1");
    if (d.deg_F < 1) throw ValidationError("deg_F must be >= 1");
    if (d.fibers.empty()) throw ValidationError("at least one fiber required");

    std::sort(d.fibers.begin(), d.fibers.end(),
              [](const Fiber& a, const Fiber& b) { return a.p < b.p; });
    long bad_count = 0;
    long prev_p = 0;
    for (const auto& f : d.fibers) {
        if (!is_prime(static_cast<std::uint64_t>(f.p)))
            throw ValidationError("fiber prime " + std::to_string(f.p) +
                                  " is not prime");
        if (f.p == prev_p)
            throw ValidationError("duplicate fiber at p = " + std::to_string(f.p));
        prev_p = f.p;
        if (f.places.empty())
            throw ValidationError("fiber at p = " + std::to_string(f.p) +
                                  " has no places");
        long mass = 0;
        for (const auto& v : f.places) {
            if (v.e0 < 1 || v.f0 < 1 || v.eK < 1 || v.fK < 1)
                throw ValidationError("place invariants e0,f0,eK,fK must be >= 1");
            mass += v.e0 * v.f0;
            if (v.diffK < 0)
                throw ValidationError("diffK must be >= 0");
            if (v.eK < v.e0)
                d.warnings.push_back("p=" + std::to_string(f.p) +
                                     ": lift ramification eK < e0 (synthetic data?)");
            if (v.eK > 1 && v.diffK < Rational(v.eK - 1, v.eK))
                d.warnings.push_back("p=" + std::to_string(f.p) +
                                     ": diffK below the tame floor (eK-1)/eK");
            if (v.bad) {
                ++bad_count;
                if (v.bad->ord_q < 1)
                    throw ValidationError("bad place needs ord_q >= 1");
                // Ogg/Tate: ord_v of the minimal discriminant equals ord_v(q).
                if (v.bad->ord_delta_min && *v.bad->ord_delta_min != v.bad->ord_q)
                    throw ValidationError(
                        "Ogg/Tate violation at p=" + std::to_string(f.p) +
                        ": ord_delta_min != ord_q");
            }
        }
        if (mass != d.d0)
            throw ValidationError(
                "fiber at p = " + std::to_string(f.p) +
                ": sum of e0*f0 = " + std::to_string(mass) +
                " != d0 (places must map bijectively onto V(F0)_p)");
    }
    if (bad_count == 0)
        throw ValidationError(
            "non-empty set of bad multiplicative places required");
    if (d.deg_F % d.d0 != 0)
        d.warnings.push_back("deg_F is not a multiple of d0 (F does not contain F0?)");
}

Rational place_probability(const PlaceRecord& v, long d0) {
    return Rational(v.e0 * v.f0, d0);
}

LogValue normalized_degree(const PilotDivisor& divisor, long d0) {
    // Group by prime so the rational coefficient of each ln p is exact.
    std::map<long, Rational> per_prime;
    for (const auto& c : divisor.coefficients)
        per_prime[c.p] += c.coeff * c.f0;
    LogValue out = LogValue::exact(Real(0));
    for (const auto& [p, coeff] : per_prime)
        out += ln_real(Integer(p)) * (coeff / d0);
    return out;
}

PilotDivisor q_pilot(const ThetaDataDescriptor& d) {
    PilotDivisor out;
    for (const auto& f : d.fibers)
        for (const auto& v : f.places)
            if (v.bad)
                out.coefficients.push_back(
                    {f.p, v.f0, Rational(v.bad->ord_q, 2 * d.l)});
    if (out.coefficients.empty())
        throw ValidationError("q-pilot needs a bad multiplicative place");
    return out;
}

std::vector<PilotDivisor> theta_pilot(const ThetaDataDescriptor& d) {
    std::vector<PilotDivisor> out;
    for (long j = 1; j <= (d.l - 1) / 2; ++j) {
        PilotDivisor pj;
        for (const auto& f : d.fibers)
            for (const auto& v : f.places)
                if (v.bad)
                    pj.coefficients.push_back(
                        {f.p, v.f0,
                         Rational(v.bad->ord_q * j * j, 2 * d.l)});
        if (pj.coefficients.empty())
            throw ValidationError("theta-pilot needs a bad multiplicative place");
        out.push_back(std::move(pj));
    }
    return out;
}

LogValue lgp_theta_degree(const ThetaDataDescriptor& d) {
    LogValue sum = LogValue::exact(Real(0));
    for (const auto& pj : theta_pilot(d))
        sum += normalized_degree(pj, d.d0);
    return sum * Rational(2, d.l - 1);
}

CheckResult pilot_degree_relation_check(const ThetaDataDescriptor& d) {
    // Both degrees are sums over primes of (rational) * ln p; comparing the
    // rational coefficients prime by prime makes the check exact.
    std::map<long, Rational> lhs;  // lgp theta degree coefficients
    for (const auto& pj : theta_pilot(d))
        for (const auto& c : pj.coefficients)
            lhs[c.p] += c.coeff * c.f0 * Rational(2, d.l - 1);
    std::map<long, Rational> rhs;  // l(l+1)/12 * q-pilot coefficients
    for (const auto& c : q_pilot(d).coefficients)
        rhs[c.p] += c.coeff * c.f0 * Rational(Integer(d.l) * (d.l + 1), 12);
    CheckResult r;
    r.pass = (lhs == rhs);
    std::ostringstream os;
    os << "deg_lgp(P_theta) vs (l(l+1)/12) deg(P_q): "
       << (r.pass ? "exact rational match" : "MISMATCH");
    for (const auto& [p, c] : lhs)
        if (!r.pass)
            os << " [p=" << p << ": " << rational_to_string(c) << " vs "
               << rational_to_string(rhs[p]) << "]";
    r.detail = os.str();
    return r;
}

DiscriminantCheck qpilot_discriminant_check(const ThetaDataDescriptor& d) {
    LogValue lhs = normalized_degree(q_pilot(d), d.d0);
    LogValue rhs = d.inv.ln_delta_min * Rational(1, Integer(2) * d.l * d.deg_F);
    DiscriminantCheck out;
    out.residual = lhs - rhs;
    Real mag = out.residual.value < 0 ? -out.residual.value : out.residual.value;
    out.verdict = (mag <= out.residual.error) ? Verdict::holds : Verdict::fails;
    return out;
}

CheckResult base_change_check(const std::vector<BaseChangePlace>& places,
                              long deg_KF) {
    if (deg_KF < 1) throw std::domain_error("base_change_check: [K:F] >= 1");
    // [K:F] ln|Dmin_F| vs ln|Dmin_K|, per-prime rational coefficients of ln p.
    std::map<long, Rational> lhs, rhs;
    for (const auto& v : places) {
        long mass = 0;
        for (const auto& w : v.lifts) {
            if (w.e < 1 || w.f < 1)
                throw std::domain_error("base_change_check: e,f >= 1");
            mass += w.e * w.f;
        }
        if (mass != deg_KF)
            throw std::domain_error(
                "base_change_check: sum e(w/v) f(w/v) != [K:F]");
        lhs[v.p] += Rational(Integer(deg_KF) * v.ord_q * v.f_abs);
        for (const auto& w : v.lifts)
            rhs[v.p] += Rational(Integer(w.e) * v.ord_q * w.f * v.f_abs);
    }
    CheckResult r;
    r.pass = (lhs == rhs);
    r.detail = r.pass ? "[K:F] ln|Dmin_F| = ln|Dmin_K| exactly"
                      : "base-change identity failed";
    return r;
}

bool nos_ramified_consistent(long eK, bool divides_l, bool divides_cond,
                             bool divides_diffF) {
    return (eK > 1) == (divides_l || divides_cond || divides_diffF);
}

// ---------------------------------------------------------------------------
// Synthetic generator
// ---------------------------------------------------------------------------

ThetaDataDescriptor generate_descriptor(std::uint64_t seed, long d0, long l,
                                        long fiber_count) {
    if (d0 < 1 || fiber_count < 1)
        throw std::domain_error("generate: d0 and fiber count must be >= 1");
    if (l < 5 || !is_prime(static_cast<std::uint64_t>(l)))
        throw std::domain_error("generate: l must be a prime > 3");
    std::mt19937_64 rng(seed);
    auto pick = [&rng](long n) { return static_cast<long>(rng() % n); };

    ThetaDataDescriptor d;
    d.l = l;
    d.d0 = d0;
    d.deg_F = d0 * (1 + pick(4));

    auto primes = prime_sieve(200);
    std::set<long> used;
    for (long i = 0; i < fiber_count; ++i) {
        long p;
        do {
            p = static_cast<long>(primes[pick(static_cast<long>(primes.size()))]);
        } while (used.count(p));
        used.insert(p);

        Fiber f;
        f.p = p;
        long rem = d0;
        while (rem > 0) {
            long deg = 1 + pick(rem);
            // factor deg = e0 * f0 through a random divisor
            std::vector<long> divs;
            for (long t = 1; t <= deg; ++t)
                if (deg % t == 0) divs.push_back(t);
            PlaceRecord v;
            v.e0 = divs[pick(static_cast<long>(divs.size()))];
            v.f0 = deg / v.e0;
            // the lift ramifies a bit more, keeping the data plausible
            v.eK = v.e0 * (1 + pick(3));
            v.fK = v.f0;
            v.diffK = (v.eK > 1) ? diff_exponent_eisenstein(v.eK, p) : Rational(0);
            if (rng() % 3 == 0) {
                BadData b;
                b.ord_q = 1 + pick(5);
                b.ord_delta_min = b.ord_q;
                v.bad = std::move(b);
            }
            rem -= deg;
            f.places.push_back(std::move(v));
        }
        d.fibers.push_back(std::move(f));
    }
    // guarantee the non-empty bad-place hypothesis
    if (![&] {
            for (const auto& f : d.fibers)
                for (const auto& v : f.places)
                    if (v.bad) return true;
            return false;
        }()) {
        BadData b;
        b.ord_q = 1 + pick(5);
        b.ord_delta_min = b.ord_q;
        d.fibers.front().places.front().bad = std::move(b);
    }
    // ... and at least one ramified lift, so disc_K stays nontrivial
    if (![&] {
            for (const auto& f : d.fibers)
                for (const auto& v : f.places)
                    if (v.eK > 1) return true;
            return false;
        }()) {
        auto& v = d.fibers.front().places.front();
        v.eK = 2 * v.e0;
        v.diffK = diff_exponent_eisenstein(v.eK, d.fibers.front().p);
    }

    // Invariants constructed for consistency:
    //   ln|Dmin| = (deg_F/d0) * sum_bad ord_q * f0 * ln p   (zero q-pilot residual)
    //   conductor exponent 1 at each bad (multiplicative) place
    //   disc_F supported on the base-ramified places, exponent e0 - 1
    long ext = d.deg_F / d.d0;
    LogValue ln_dmin = LogValue::exact(Real(0));
    LogValue ln_cond = LogValue::exact(Real(0));
    LogValue ln_disc_F = LogValue::exact(Real(0));
    Integer disc_K = 1;
    std::map<long, long> max_wild;  // p -> max ord_p(eK)
    for (const auto& f : d.fibers) {
        Integer disc_exp = 0;
        for (const auto& v : f.places) {
            if (v.bad) {
                ln_dmin += ln_real(Integer(f.p)) *
                           Rational(v.bad->ord_q * v.f0 * ext);
                ln_cond += ln_real(Integer(f.p)) * Rational(v.f0 * ext);
            }
            if (v.e0 > 1)
                ln_disc_F += ln_real(Integer(f.p)) *
                             Rational((v.e0 - 1) * v.f0 * ext);
            if (v.eK > 1) disc_exp += Integer(v.eK - 1) * v.f0 + 1;
            if (v.eK % f.p == 0) {
                long w = ord_p(Integer(v.eK), Integer(f.p));
                auto& slot = max_wild[f.p];
                if (w > slot) slot = w;
            }
        }
        if (disc_exp > 0)
            disc_K *= pow_integer(Integer(f.p),
                                  static_cast<unsigned long>(disc_exp));
    }
    d.inv.ln_delta_min = ln_dmin;
    d.inv.ln_cond = ln_cond;
    d.inv.ln_disc_F = ln_disc_F;
    // deg_K >= #SL2(F_l) >= 6840 with enough wild part that every place's
    // different stays under 1 + ord_p(deg_K).
    Integer deg_K = 6840;
    for (const auto& [p, w] : max_wild)
        deg_K *= pow_integer(Integer(p), static_cast<unsigned long>(w));
    d.inv.deg_K = deg_K;
    d.inv.disc_K = disc_K;
    d.inv.ln_disc_K = ln_real(disc_K);

    validate_descriptor(d);
    return d;
}

}  // namespace szp
