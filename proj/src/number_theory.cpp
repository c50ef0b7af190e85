#include "cyclofree/number_theory.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace cyclofree {

std::string to_decimal(const BigInt& x) { return x.get_str(10); }

BigInt from_decimal(const std::string& s) {
    BigInt out;
    if (s.empty() || out.set_str(s, 10) != 0) {
        throw std::invalid_argument("not a decimal integer: '" + s + "'");
    }
    return out;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exp != 0) {
        if (exp & 1U) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

std::int64_t gcd_i64(std::int64_t a, std::int64_t b) {
    return std::gcd(a, b);
}

namespace {

bool miller_rabin_u64(std::uint64_t n, std::uint64_t a) {
    if (a % n == 0) return true;
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

bool miller_rabin_big(const BigInt& n, unsigned long a) {
    BigInt nm1 = n - 1;
    BigInt d = nm1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    BigInt base = a;
    BigInt x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == nm1) return true;
    }
    return false;
}

constexpr unsigned long kSmallPrimeBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

bool fits_u64(const BigInt& n) {
    return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const BigInt& n) {
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
    return out;
}

BigInt from_u64(std::uint64_t v) {
    BigInt out;
    mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return out;
}

std::uint64_t rho_u64(std::uint64_t n, std::uint64_t seed) {
    if (n % 2 == 0) return 2;
    std::mt19937_64 rng(seed);
    while (true) {
        const std::uint64_t c = rng() % (n - 1) + 1;
        std::uint64_t y = rng() % n;
        std::uint64_t g = 1;
        std::uint64_t q = 1;
        std::uint64_t x = 0;
        std::uint64_t ys = 0;
        const std::uint64_t m = 128;
        std::uint64_t r = 1;
        auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1U;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_u64_into(std::uint64_t n, std::map<std::uint64_t, unsigned>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        ++out[n];
        return;
    }
    const std::uint64_t d = rho_u64(n, n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

// Brent-Pollard rho over GMP integers; returns 0 when the budget runs out.
BigInt rho_big(const BigInt& n, unsigned long seed, unsigned long budget) {
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 8; ++attempt) {
        const BigInt c = BigInt(static_cast<unsigned long>(rng() % 1000003UL + 1));
        BigInt y = BigInt(static_cast<unsigned long>(rng() % 1000003UL));
        BigInt x, ys, g = 1, q = 1;
        unsigned long r = 1;
        unsigned long steps = 0;
        auto f = [&](const BigInt& v) -> BigInt { return (v * v + c) % n; };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(128UL, r - k); ++i) {
                    y = f(y);
                    q = (q * abs(x - y)) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += 128;
                steps += 128;
            } while (k < r && g == 1);
            r <<= 1U;
        } while (g == 1 && steps < budget);
        if (g == 1) continue;
        if (g == n) {
            do {
                ys = f(ys);
                BigInt diff = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
    return 0;
}

void factor_big_into(const BigInt& n, std::map<BigInt, unsigned>& out) {
    if (n == 1) return;
    if (fits_u64(n)) {
        std::map<std::uint64_t, unsigned> small;
        factor_u64_into(to_u64(n), small);
        for (const auto& [p, e] : small) out[from_u64(p)] += e;
        return;
    }
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    const BigInt d = rho_big(n, mpz_get_ui(n.get_mpz_t()), 1UL << 24U);
    if (d == 0) {
        throw FactoringCapacityExceeded("unable to split composite cofactor " + to_decimal(n));
    }
    factor_big_into(d, out);
    factor_big_into(n / d, out);
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
        if (!miller_rabin_u64(n, a)) return false;
    }
    return true;
}

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    if (fits_u64(n)) return is_prime_u64(to_u64(n));
    for (unsigned long p : kSmallPrimeBases) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) return false;
    }
    static const BigInt kPsi13("3317044064679887385961981");
    if (n < kPsi13) {
        return std::all_of(std::begin(kSmallPrimeBases), std::end(kSmallPrimeBases),
                           [&](unsigned long a) { return miller_rabin_big(n, a); });
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t bound) {
    std::vector<std::uint32_t> primes;
    if (bound < 2) return primes;
    std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return primes;
}

std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factor_u64: zero has no factorization");
    std::map<std::uint64_t, unsigned> acc;
    for (std::uint64_t p = 2; p < 1000 && p * p <= n; ++p) {
        while (n % p == 0) {
            ++acc[p];
            n /= p;
        }
    }
    factor_u64_into(n, acc);
    return {acc.begin(), acc.end()};
}

std::vector<std::pair<BigInt, unsigned>> factor(const BigInt& value) {
    if (value == 0) throw std::invalid_argument("factor: zero has no factorization");
    BigInt n = abs(value);
    if (mpz_sizeinbase(n.get_mpz_t(), 2) > 128) {
        throw FactoringCapacityExceeded("integer exceeds 128-bit factoring capacity: " + to_decimal(n));
    }
    std::map<BigInt, unsigned> acc;
    if (!fits_u64(n)) {
        static const std::vector<std::uint32_t> trial = primes_up_to(100000);
        for (std::uint32_t p : trial) {
            if (mpz_divisible_ui_p(n.get_mpz_t(), p) == 0) continue;
            unsigned e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++e;
            }
            acc[BigInt(static_cast<unsigned long>(p))] += e;
            if (fits_u64(n)) break;
        }
    }
    factor_big_into(n, acc);
    return {acc.begin(), acc.end()};
}

std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t result = n;
    for (const auto& [p, e] : factor_u64(n)) {
        (void)e;
        result = result / p * (p - 1);
    }
    return result;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    if (n <= 1) return out;
    for (const auto& [p, e] : factor_u64(n)) {
        (void)e;
        out.push_back(p);
    }
    return out;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("multiplicative_order: modulus 0");
    if (m == 1) return 1;
    a %= m;
    if (std::gcd(a, m) != 1) throw std::invalid_argument("multiplicative_order: a not invertible");
    std::uint64_t order = euler_phi(m);
    for (const auto& [p, e] : factor_u64(order)) {
        for (unsigned i = 0; i < e; ++i) {
            if (powmod(a, order / p, m) == 1) {
                order /= p;
            } else {
                break;
            }
        }
    }
    return order;
}

}  // namespace cyclofree
