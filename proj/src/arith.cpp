#include "szp/arith.hpp"

#include <cstdlib>

namespace szp {

std::uint64_t sieve_ceiling() {
    if (const char* env = std::getenv("SZP_SIEVE_CEILING")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 100000000ULL;  // 10^8
}

std::vector<std::uint64_t> prime_sieve(std::uint64_t n) {
    if (n < 2) throw std::domain_error("prime_sieve requires n >= 2");
    if (n > sieve_ceiling())
        throw ResourceError("prime_sieve: n exceeds sieve ceiling " +
                            std::to_string(sieve_ceiling()));
    std::vector<bool> composite(n + 1, false);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return primes;
}

std::uint64_t pi_exact(std::uint64_t x) {
    if (x < 1) throw std::domain_error("pi_exact requires x >= 1");
    if (x < 2) return 0;
    if (x > sieve_ceiling())
        throw ResourceError("pi_exact: x exceeds sieve ceiling");
    std::vector<bool> composite(x + 1, false);
    std::uint64_t count = 0;
    for (std::uint64_t i = 2; i <= x; ++i) {
        if (composite[i]) continue;
        ++count;
        for (std::uint64_t j = i * i; j <= x; j += i) composite[j] = true;
    }
    return count;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

LogValue dusart_bound(const Real& x) {
    if (x <= 1) throw std::domain_error("dusart_bound requires x > 1");
    Real lnx = log(x);
    Real v = x / lnx * (1 + Real("1.3") / lnx);
    return LogValue::approx(v);
}

Integer rad(Integer n) {
    if (n < 1) throw std::domain_error("rad requires n >= 1");
    Integer out = 1;
    for (Integer d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out *= d;
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out *= n;
    return out;
}

unsigned omega_distinct(Integer n) {
    if (n < 1) throw std::domain_error("omega_distinct requires n >= 1");
    unsigned count = 0;
    for (Integer d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            ++count;
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) ++count;
    return count;
}

Integer gl2_order(const Integer& q) {
    if (q < 2) throw std::domain_error("gl2_order requires q >= 2");
    return q * (q - 1) * (q * q - 1);
}

Integer gl2_order_squarefree_modulus(const Integer& m) {
    if (m < 2) throw std::domain_error("gl2_order modulus must be >= 2");
    Integer n = m, out = 1;
    for (Integer d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out *= gl2_order(d);
            n /= d;
            if (n % d == 0)
                throw std::domain_error("gl2_order modulus must be squarefree");
        }
    }
    if (n > 1) out *= gl2_order(n);
    return out;
}

}  // namespace szp
