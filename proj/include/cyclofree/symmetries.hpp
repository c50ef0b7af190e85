#pragma once

// Stabiliser elements x -> eps * sigma_r(x) of the k-free integers as
// integer matrices, their verification on sieved windows, and the
// auxiliary number theory behind the stabiliser theorem: splitting primes,
// the a_q search, the factor lemma and four-term vanishing sums.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclofree/cyclotomic.hpp"
#include "cyclofree/kfree_sets.hpp"
#include "cyclofree/prime_ideals.hpp"

namespace cyclofree {

using IntMatrix = std::vector<std::vector<BigInt>>;

IntMatrix matrix_multiply(const IntMatrix& a, const IntMatrix& b);
/// Exact determinant by fraction-free (Bareiss) elimination.
BigInt determinant(IntMatrix m);
std::vector<BigInt> matrix_apply(const IntMatrix& m, std::span<const BigInt> v);
std::vector<BigInt> matrix_apply(const IntMatrix& m, std::span<const std::int64_t> v);

/// Generators of a finite-index subgroup of the unit group: -1, xi_n,
/// 1 - xi_n for composite n, and for prime powers the cyclotomic units
/// (1 - xi^a)/(1 - xi), 1 < a < n/2, gcd(a, n) = 1. Each is checked to
/// have norm +-1.
std::vector<CycInt> unit_generators(const Conductor& cond);

/// The map x -> unit * sigma_r(x) and its matrix on the power basis.
struct SymmetryElement {
    CycInt unit;
    GaloisIndex galois;
    IntMatrix matrix;  // column i is embed(unit * sigma_r(xi^i))

    [[nodiscard]] CycInt apply(const CycInt& x) const;
    [[nodiscard]] SymmetryElement inverse() const;
    /// Semidirect law (e, r)(e', r') = (e sigma_r(e'), r r').
    [[nodiscard]] SymmetryElement compose(const SymmetryElement& other) const;
};

/// Throws std::invalid_argument if eps is not a unit.
SymmetryElement symmetry_matrix(const CycInt& eps, const GaloisIndex& r);

/// (u, 1) for every unit generator u and (1, r) for every r in (Z/nZ)^x.
std::vector<SymmetryElement> generator_elements(const Conductor& cond);

struct ActionFailure {
    LatticePoint point;
    bool inverse = false;  // failure occurred for the inverse element
};

struct ActionReport {
    std::uint64_t checked = 0;
    std::vector<ActionFailure> failures;
    [[nodiscard]] bool passed() const { return failures.empty(); }
};

/// Maps sampled k-free points of the window by the element and by its
/// inverse and checks that every image is k-free.
ActionReport verify_stabiliser_action(const SymmetryElement& S, const KFreeBox& window, std::size_t sample_size,
                                      std::uint64_t seed = 0, unsigned threads = 1);

/// Scans [-r, r]^d for r = 1 .. max_radius for a k-free point whose image
/// under an integer matrix is not k-free (or zero).
std::optional<LatticePoint> find_non_stabiliser_witness(const IntMatrix& m, const Conductor& cond, unsigned k,
                                                        std::int64_t max_radius = 100);

struct WkReport {
    std::uint64_t checked = 0;
    std::vector<LatticePoint> failures;
    [[nodiscard]] bool passed() const { return failures.empty(); }
};

/// Elements of W_k with 0 < |N(x)| <= norm_bound inside [-radius, radius]^d.
std::vector<CycInt> enumerate_Wk(const Conductor& cond, unsigned k, const BigInt& norm_bound, std::int64_t radius);

/// Images and preimages of W_k elements stay in W_k.
WkReport verify_Wk_preservation(const SymmetryElement& S, unsigned k, const BigInt& norm_bound, std::int64_t radius);

/// For sampled k-free x coprime to an unramified prime ell <= ell_bound,
/// the image is coprime to ell as well.
WkReport verify_coprimality_transport(const SymmetryElement& S, const KFreeBox& window, std::size_t samples,
                                      std::uint64_t ell_bound, std::uint64_t seed = 0);

struct SplittingPrimeSet {
    unsigned m = 1;
    std::uint64_t bound = 0;
    std::vector<std::uint64_t> primes;  // ell <= bound, ell = 1 mod m
};

SplittingPrimeSet splitting_primes(unsigned m, std::uint64_t bound);

/// Divisors m of n with m > 1 and m != 2 mod 4.
std::vector<unsigned> admissible_divisors(unsigned n);

struct AqCandidate {
    unsigned n = 0;
    std::uint64_t q = 0;
    std::uint64_t a = 0;
    std::uint64_t ell_bound = 0;
};

enum class AqCheck { ok, h1_order, h2_divisibility, h3_square };

/// Re-validates (H1), (H2) and (H3) up to the stored ell_bound.
AqCheck validate_candidate(const AqCandidate& c);
bool satisfies_h1(unsigned n, std::uint64_t q, std::uint64_t a);
bool satisfies_h2(unsigned n, std::uint64_t a);
bool satisfies_h3(unsigned n, std::uint64_t a, std::uint64_t ell_bound);

/// Least a in [0, a_bound] satisfying (H1)-(H3) with (H3) checked for
/// ell <= ell_bound; nullopt if none. Requires q prime, q = 1 mod n.
std::optional<AqCandidate> aq_search(unsigned n, std::uint64_t q, std::uint64_t ell_bound, std::uint64_t a_bound,
                                     unsigned threads = 1);

struct LemmaFactorsReport {
    unsigned m = 0;
    unsigned j = 0;
    CycInt element;  // xi_m^j - a^(n/m) in Z[xi_m]
    BigInt norm;
    std::vector<std::pair<BigInt, unsigned>> norm_factorization;
    bool complete = false;   // norm fully factored
    bool in_V2 = false;      // (i)
    bool not_in_W2 = false;  // (ii)
    bool primes_split = false;    // (iii) every prime below a divisor is 1 mod m
    bool coprime_to_m = false;    // (iv) no divisor lies above a prime dividing m
    std::string note;
    [[nodiscard]] bool passed() const { return complete && in_V2 && not_in_W2 && primes_split && coprime_to_m; }
};

LemmaFactorsReport verify_lemma_factors(const AqCandidate& c, unsigned m, unsigned j);

struct VanishingSum {
    std::vector<int> coefficients;  // alpha_0..alpha_3
    std::vector<unsigned> exponents;  // 0 = n_0 <= ..., exponents mod n
    unsigned ratio = 0;  // n / gcd(n, n_1, n_2, n_3)
};

struct VanishingReport {
    unsigned n = 0;
    std::vector<int> coefficient_set;
    std::uint64_t relations = 0;  // four-term vanishing sums found
    std::vector<VanishingSum> survivors;  // no vanishing proper subsum
    std::vector<VanishingSum> violations;  // survivors with ratio not dividing 6
};

/// Exhaustive four-term relations alpha_0 + sum alpha_i xi_n^{n_i} = 0 with
/// coefficients from the set; n >= 1 (any order of root of unity).
VanishingReport vanishing_four_sums(unsigned n, const std::vector<int>& coefficient_set = {-1, 1});

struct GaloisGroupInfo {
    unsigned n = 0;
    std::vector<unsigned> elements;
    std::vector<std::vector<unsigned>> table;  // table[i][j] = index of elements[i] * elements[j]
    std::vector<std::pair<std::uint64_t, unsigned>> crt_factors;  // n = prod p^a
    std::vector<std::uint64_t> crt_orders;                         // phi(p^a) per factor
};

GaloisGroupInfo galois_group(unsigned n);

}  // namespace cyclofree
