#pragma once

// Prime ideals of Z[xi_n] read off the factorization of Phi_n mod ell,
// exact valuations by lattice membership, and the k-free and W_k
// predicates.

#include <cstdint>
#include <vector>

#include "cyclofree/cyclotomic.hpp"
#include "cyclofree/polynomial.hpp"

namespace cyclofree {

/// The prime (ell, g(xi_n)) of Z[xi_n]; g is a monic irreducible factor
/// of Phi_n mod ell with coefficients in {0, ..., ell - 1}.
struct PrimeIdeal {
    std::uint64_t ell = 0;
    unsigned n = 0;
    unsigned e = 0;  // ramification index
    unsigned f = 0;  // residue degree
    IntPolynomial g_poly;

    [[nodiscard]] BigInt ell_big() const;
    /// Absolute norm ell^f.
    [[nodiscard]] BigInt norm() const;
    [[nodiscard]] bool ramified() const { return n % ell == 0; }
    [[nodiscard]] CycInt generator() const;

    friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) {
        return a.n == b.n && a.ell == b.ell && a.g_poly == b.g_poly;
    }
};

/// Canonical order: (norm, ell, lifted coefficients of g lowest first).
bool canonical_less(const PrimeIdeal& a, const PrimeIdeal& b);

struct SplittingType {
    unsigned e;
    unsigned f;
    unsigned g;  // number of primes above ell
};

/// (e, f, g) from the multiplicative order of ell, without factoring.
SplittingType splitting_type(std::uint64_t ell, unsigned n);

/// All primes above ell in canonical order. Throws std::invalid_argument
/// if ell is not prime.
std::vector<PrimeIdeal> split_prime(std::uint64_t ell, const Conductor& cond);

/// Every prime ideal of norm <= norm_bound, exactly once, canonical order.
std::vector<PrimeIdeal> enumerate_prime_ideals(const Conductor& cond, std::uint64_t norm_bound);

/// Largest m with x in P^m; throws std::domain_error for x = 0.
unsigned valuation(const CycInt& x, const PrimeIdeal& P);

enum class KFreeStatus { k_free, divisible, zero };

/// k-freeness of the principal ideal (x); zero is reported separately.
KFreeStatus classify_kfree(const CycInt& x, unsigned k);

/// False for x = 0 (zero is divisible by every ideal).
bool is_kfree(const CycInt& x, unsigned k);

/// k-free and divisible only by primes above divisors of n.
bool is_in_Wk(const CycInt& x, unsigned k);

}  // namespace cyclofree
