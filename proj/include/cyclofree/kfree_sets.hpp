#pragma once

// Finite windows of the k-free integers V'_k inside centred boxes of Z^d:
// the lattice sieve, density and patch statistics, and the admissibility
// test for finite configurations.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclofree/cyclotomic.hpp"
#include "cyclofree/lattice.hpp"
#include "cyclofree/prime_ideals.hpp"
#include "cyclofree/spectral_zeta.hpp"

namespace cyclofree {

class ResourceCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// CYCLOFREE_MAX_POINTS if set, else 50'000'000.
std::uint64_t default_max_points();

enum class NormBoundMode {
    crude,  // (d r)^d
    tight,  // product of per-embedding maxima over box corners
};

struct SieveOptions {
    unsigned threads = 1;
    NormBoundMode bound_mode = NormBoundMode::crude;
    std::uint64_t max_points = default_max_points();
    /// Only remove primes with N(P) <= cap (a superset of V'_k); unset
    /// removes every prime that can occur.
    std::optional<std::uint64_t> prime_norm_cap;
};

/// Upper bound on |N(x)| for x in [-r, r]^d.
BigInt box_norm_bound(const Conductor& cond, std::int64_t r, NormBoundMode mode);

/// V'_k intersected with [-r, r]^d as a flag per box point.
struct KFreeBox {
    Conductor cond;
    unsigned k = 2;
    std::int64_t r = 0;
    unsigned d = 0;
    BigInt norm_bound;
    std::vector<std::uint8_t> flags;  // lexicographic box order
    std::vector<PrimeIdeal> prime_ideals_used;
    std::uint64_t count = 0;

    [[nodiscard]] std::uint64_t side() const { return static_cast<std::uint64_t>(2 * r + 1); }
    [[nodiscard]] std::uint64_t volume() const { return flags.size(); }
    [[nodiscard]] bool contains(std::span<const std::int64_t> z) const;
    [[nodiscard]] std::uint64_t index_of(std::span<const std::int64_t> z) const;
    [[nodiscard]] LatticePoint point_at(std::uint64_t index) const;
    [[nodiscard]] bool flagged(std::span<const std::int64_t> z) const { return flags[index_of(z)] != 0; }
    /// Flagged points in lexicographic order.
    [[nodiscard]] std::vector<LatticePoint> points() const;
};

KFreeBox sieve_box(const Conductor& cond, unsigned k, std::int64_t r, const SieveOptions& options = {});

struct DensityReport {
    std::uint64_t point_count = 0;
    std::uint64_t box_volume = 0;
    BigRational empirical_density;
    Interval reference_density;
    double relative_gap = 0.0;  // |empirical - mid| / mid
};

inline constexpr std::uint64_t kDefaultReferenceBound = 1000000;

DensityReport density_estimate(const KFreeBox& box, std::uint64_t reference_prime_bound = kDefaultReferenceBound);

/// Finite set of distinct offsets relative to an anchor cell.
class PatchShape {
public:
    explicit PatchShape(std::vector<LatticePoint> offsets);
    /// Axis-aligned block [0, extent_1) x ... x [0, extent_d).
    static PatchShape block(std::span<const std::int64_t> extents);

    [[nodiscard]] const std::vector<LatticePoint>& offsets() const { return offsets_; }
    [[nodiscard]] std::size_t size() const { return offsets_.size(); }
    [[nodiscard]] unsigned dimension() const { return static_cast<unsigned>(offsets_.front().size()); }

private:
    std::vector<LatticePoint> offsets_;
};

/// A shape with its occupancy; fill[i] refers to offsets()[i].
struct PatchConfig {
    PatchShape shape;
    std::string fill;  // '0' empty, '1' occupied
};

struct PatchCounts {
    std::map<std::string, std::uint64_t> counts;  // fill bitstring -> occurrences
    std::uint64_t anchors = 0;
};

/// Counts fill patterns at every anchor whose translate of the shape lies
/// inside the box. Throws std::invalid_argument if no anchor fits.
PatchCounts extract_patches(const KFreeBox& box, const PatchShape& shape, unsigned threads = 1);

/// log(#distinct patterns) / |shape|, a finite-size estimate of the
/// patch-counting entropy. Converges slowly in the box radius.
double patch_entropy_estimate(const KFreeBox& box, const PatchShape& shape, unsigned threads = 1);

struct AdmissibilityReport {
    bool admissible = true;
    std::optional<PrimeIdeal> violated;  // a prime whose k-th power has all cosets hit
    std::size_t primes_checked = 0;
};

/// The patch misses a coset of every Gamma_{P^k}; only primes with
/// N(P)^k <= |patch| can be violated.
AdmissibilityReport check_admissible(std::span<const LatticePoint> patch, const Conductor& cond, unsigned k);
bool is_admissible(std::span<const LatticePoint> patch, const Conductor& cond, unsigned k);

struct HeredityReport {
    unsigned trials = 0;
    unsigned failures = 0;
    [[nodiscard]] bool passed() const { return failures == 0; }
};

/// Admissibility of uniformly random subsets of the sieved window.
HeredityReport hereditary_check(const KFreeBox& box, unsigned trials, std::uint64_t seed = 0);

}  // namespace cyclofree
