#pragma once

// Univariate polynomials over the prime field F_p, p < 2^63, and their
// complete factorization (squarefree, distinct-degree, equal-degree).

#include <cstdint>
#include <utility>
#include <vector>

#include "cyclofree/polynomial.hpp"

namespace cyclofree {

/// Coefficients in [0, p), lowest degree first, no trailing zeros.
using FpPoly = std::vector<std::uint64_t>;

struct FpFactor {
    FpPoly factor;  // monic irreducible
    unsigned multiplicity;
};

FpPoly fp_reduce(const IntPolynomial& f, std::uint64_t p);
IntPolynomial fp_lift(const FpPoly& f);

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly fp_mod(const FpPoly& a, const FpPoly& m, std::uint64_t p);
FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p);

/// Monic irreducible factors with multiplicities, sorted lexicographically
/// on coefficient vectors (lowest degree first). The leading coefficient
/// of f is dropped. Deterministic: randomized splitting uses a fixed seed.
std::vector<FpFactor> factor_poly_mod_p(const IntPolynomial& f, std::uint64_t p);

/// Lexicographic order on lifted coefficients, lowest degree first, after
/// comparing degrees.
bool fp_poly_less(const FpPoly& a, const FpPoly& b);

}  // namespace cyclofree
