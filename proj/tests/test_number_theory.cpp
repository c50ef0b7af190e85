#include <doctest.h>

#include <random>

#include "cyclofree/number_theory.hpp"

using namespace cyclofree;

namespace {

bool trial_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("is_prime_u64 agrees with trial division") {
    for (std::uint64_t n = 0; n < 20000; ++n) CHECK(is_prime_u64(n) == trial_prime(n));
    CHECK(is_prime_u64(18446744073709551557ULL));
    CHECK_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to 2, 3, 5, 7
    CHECK_FALSE(is_prime_u64(3825123056546413051ULL));
}

TEST_CASE("is_prime on big integers") {
    CHECK(is_prime(BigInt("170141183460469231731687303715884105727")));  // 2^127 - 1
    CHECK_FALSE(is_prime(BigInt("3317044064679887385961981")));  // psi_12
    CHECK_FALSE(is_prime(BigInt(1)));
    CHECK(is_prime(BigInt(2)));
}

TEST_CASE("primes_up_to") {
    const auto ps = primes_up_to(100);
    CHECK(ps.size() == 25);
    CHECK(ps.front() == 2);
    CHECK(ps.back() == 97);
    CHECK(primes_up_to(1).empty());
    CHECK(primes_up_to(1000000).size() == 78498);
}

TEST_CASE("factorization round trips") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        const std::uint64_t n = (rng() >> 4) | 1U;
        std::uint64_t prod = 1;
        for (const auto& [p, e] : factor_u64(n)) {
            CHECK(is_prime_u64(p));
            for (unsigned j = 0; j < e; ++j) prod *= p;
        }
        CHECK(prod == n);
    }
    // beyond 64 bits: a Mersenne prime times two six-digit primes
    const BigInt big = ((BigInt(1) << 61) - 1) * 1000003 * 1000033 * 12;
    const auto f = factor(big);
    REQUIRE(f.size() == 5);
    CHECK(f[0] == std::pair<BigInt, unsigned>(2, 2));
    CHECK(f[1] == std::pair<BigInt, unsigned>(3, 1));
    CHECK(f[2].first == 1000003);
    CHECK(f[4].first == (BigInt(1) << 61) - 1);
    CHECK(factor(BigInt(-1)).empty());
    CHECK_THROWS_AS(factor(BigInt(1) << 200), FactoringCapacityExceeded);
}

TEST_CASE("euler_phi and multiplicative_order") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(12) == 4);
    CHECK(euler_phi(97) == 96);
    CHECK(euler_phi(1U << 20U) == (1U << 19U));
    CHECK(multiplicative_order(2, 7) == 3);
    CHECK(multiplicative_order(10, 13 * 13) == 78);
    CHECK(multiplicative_order(1, 1) == 1);
    for (std::uint64_t m = 2; m < 200; ++m) {
        for (std::uint64_t a = 1; a < m; ++a) {
            if (std::gcd(a, m) != 1) continue;
            const auto ord = multiplicative_order(a, m);
            CHECK(euler_phi(m) % ord == 0);
            CHECK(powmod(a, ord, m) == 1);
        }
    }
}

TEST_CASE("decimal conversion") {
    CHECK(to_decimal(BigInt(-12345)) == "-12345");
    CHECK(from_decimal("98765432109876543210") == BigInt("98765432109876543210"));
    CHECK_THROWS(from_decimal("12a"));
}
