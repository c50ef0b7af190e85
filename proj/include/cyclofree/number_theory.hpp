#pragma once

// Rational-integer number theory: primality, factorization, modular
// arithmetic on machine words and multiplicative orders.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace cyclofree {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Thrown when an input exceeds the factoring capacity of this library.
class FactoringCapacityExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string to_decimal(const BigInt& x);
BigInt from_decimal(const std::string& s);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::int64_t gcd_i64(std::int64_t a, std::int64_t b);

/// Deterministic for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// Deterministic Miller-Rabin below 3.3e24 (first 13 prime bases); above
/// that, Baillie-PSW as implemented by GMP.
bool is_prime(const BigInt& n);

std::vector<std::uint32_t> primes_up_to(std::uint32_t bound);

std::uint64_t euler_phi(std::uint64_t n);

/// Prime factorization of n >= 1 as (prime, exponent) pairs, ascending.
std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n);

/// Prime factorization of |n| for n != 0, ascending. Trial division,
/// Miller-Rabin and Brent-Pollard rho; throws FactoringCapacityExceeded
/// beyond 2^128 or when rho does not split a cofactor within its budget.
std::vector<std::pair<BigInt, unsigned>> factor(const BigInt& n);

/// Multiplicative order of a modulo m; requires gcd(a, m) = 1, m >= 1.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

}  // namespace cyclofree
