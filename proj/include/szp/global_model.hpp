#pragma once

#include "szp/numeric.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace szp {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BadData {
    Integer ord_q;  // ord_v(q_v), v-adically normalized, > 0
    // Optional minimal-discriminant exponent at this place; when supplied it
    // must equal ord_q (Ogg/Tate).
    std::optional<Integer> ord_delta_min;
};

// A place v of the base field F0 over p, together with its chosen lift to K.
struct PlaceRecord {
    long e0 = 1, f0 = 1;  // of F0_v / Q_p
    long eK = 1, fK = 1;  // of K_v / Q_p
    Rational diffK;       // ord_p Diff(K_v / Q_p)
    std::optional<BadData> bad;
};

struct Fiber {
    long p = 2;
    std::vector<PlaceRecord> places;
};

struct GlobalInvariants {
    LogValue ln_delta_min;  // ln |minimal discriminant of E/F|
    LogValue ln_cond;       // ln |conductor of E/F|
    LogValue ln_disc_F;     // ln |Disc(F/Q)|
    std::optional<Integer> deg_K;
    std::optional<LogValue> ln_disc_K;
    // Exact-integer originals kept when the input supplied them.
    std::optional<Integer> delta_min, cond, disc_F, disc_K;
};

struct ThetaDataDescriptor {
    long l = 5;       // odd prime > 3
    long d0 = 1;      // [F0:Q]
    long deg_F = 1;   // [F:Q]
    std::vector<Fiber> fibers;  // sorted by p, unique p
    GlobalInvariants inv;
    std::vector<std::string> warnings;  // filled by validation
};

// Parse/serialize the versioned descriptor format ("schema": 1). Parsing
// validates eagerly and throws ValidationError with the violated invariant
// named. Serialization is canonical: fixed key order, fibers sorted by p.
ThetaDataDescriptor parse_descriptor(const std::string& json_text);
std::string serialize_descriptor(const ThetaDataDescriptor& d);
void validate_descriptor(ThetaDataDescriptor& d);  // appends warnings

Rational place_probability(const PlaceRecord& v, long d0);

// A divisor supported on bad places: one (p, f0, coefficient) entry per
// bad place, in descriptor order.
struct PilotCoefficient {
    long p;
    long f0;
    Rational coeff;
};
struct PilotDivisor {
    std::vector<PilotCoefficient> coefficients;
};

// (1/d0) * sum of c_v * f0(v) * ln(p_v).
LogValue normalized_degree(const PilotDivisor& divisor, long d0);

// P_q: coefficients ord_v(q)/2l. P_theta[j-1]: ord_v(q) j^2/2l, j = 1..(l-1)/2.
PilotDivisor q_pilot(const ThetaDataDescriptor& d);
std::vector<PilotDivisor> theta_pilot(const ThetaDataDescriptor& d);

// (2/(l-1)) * sum_j normalized_degree(P_theta_j).
LogValue lgp_theta_degree(const ThetaDataDescriptor& d);

struct CheckResult {
    bool pass = false;
    std::string detail;
};

// deg_lgp(P_theta) = l(l+1)/12 * deg(P_q), checked per prime in exact
// rationals (both sides are rational multiples of ln p).
CheckResult pilot_degree_relation_check(const ThetaDataDescriptor& d);

// Compares normalized_degree(P_q) to (1/2l) * ln_delta_min / deg_F.
struct DiscriminantCheck {
    Verdict verdict = Verdict::fails;
    LogValue residual;  // lhs - rhs
};
DiscriminantCheck qpilot_discriminant_check(const ThetaDataDescriptor& d);

// Synthetic base-change data: a place v of F with its lifts to K.
struct BaseChangeLift {
    long e = 1, f = 1;  // e(w/v), f(w/v)
};
struct BaseChangePlace {
    long p;
    long f_abs;     // f(v/p)
    Integer ord_q;  // ord_v(q) = ord_v of the minimal discriminant
    std::vector<BaseChangeLift> lifts;
};
// Verifies [K:F] ln|Dmin_{E/F}| = ln|Dmin_{E_K/K}| exactly in rationals
// (coefficient of ln p per prime). Requires sum e*f = deg_KF per place.
CheckResult base_change_check(const std::vector<BaseChangePlace>& places,
                              long deg_KF);

// e(w/p) > 1 iff w | l or w | Cond or w | Diff(L/Q), evaluated as a
// consistency predicate on supplied flags.
bool nos_ramified_consistent(long eK, bool divides_l, bool divides_cond,
                             bool divides_diffF);

// Synthetic descriptor generator: seeded, deterministic, and constructed so
// that the generated descriptor validates, its q-pilot matches ln_delta_min
// (zero residual), and the Baby-step hypotheses (deg_K >= 6840, discriminant
// support = ramified primes) hold.
ThetaDataDescriptor generate_descriptor(std::uint64_t seed, long d0, long l,
                                        long fiber_count);

}  // namespace szp
