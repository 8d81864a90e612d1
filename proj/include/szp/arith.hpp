#pragma once

#include "szp/numeric.hpp"

#include <cstdint>
#include <vector>

namespace szp {

// Resource limit for exact prime counting. Overridable via the
// SZP_SIEVE_CEILING environment variable; above the ceiling only the
// Dusart bound is available.
std::uint64_t sieve_ceiling();

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Primes <= n in increasing order. n >= 2.
std::vector<std::uint64_t> prime_sieve(std::uint64_t n);

// Exact count of primes <= x. x >= 1.
std::uint64_t pi_exact(std::uint64_t x);

bool is_prime(std::uint64_t n);

// x/ln(x) * (1 + 1.3/ln(x)) for x > 1; an upper bound on pi(x).
LogValue dusart_bound(const Real& x);

// Product of the distinct prime divisors; rad(1) = 1.
Integer rad(Integer n);

// Number of distinct prime divisors; omega(1) = 0.
unsigned omega_distinct(Integer n);

// #GL_2(F_q) = q(q-1)(q^2-1) for a prime power q.
Integer gl2_order(const Integer& q);

// #GL_2(Z/m) for squarefree m: product of gl2_order over the prime factors.
Integer gl2_order_squarefree_modulus(const Integer& m);

}  // namespace szp
