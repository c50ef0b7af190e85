#pragma once

// Full-rank sublattices of Z^d in Hermite normal form and the box
// enumerations the sieve is built on.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cyclofree/number_theory.hpp"

namespace cyclofree {

class PrimeIdeal;

using LatticePoint = std::vector<std::int64_t>;
using BigVector = std::vector<BigInt>;

class RankDeficient : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Lower-triangular HNF: row i is zero beyond column i, the diagonal is
/// positive, and 0 <= basis[i][j] < basis[j][j] for j < i.
struct IdealLattice {
    unsigned n = 0;  // conductor, 0 for a bare lattice
    unsigned d = 0;
    std::vector<BigVector> basis;
    BigInt index;

    /// Machine-word copy of the basis; nullopt if an entry exceeds int64.
    [[nodiscard]] std::optional<std::vector<std::vector<std::int64_t>>> small_basis() const;
};

/// Unique HNF of the Z-span of the generators (all of length d).
IdealLattice hnf(std::span<const BigVector> generators, unsigned d);

/// HNF when D * Z^d is known to lie in the lattice; entries stay below D.
IdealLattice hnf_modular(std::span<const BigVector> generators, unsigned d, const BigInt& multiple);

/// HNF basis of the image of P^m under the Cartesian embedding.
IdealLattice ideal_lattice(const PrimeIdeal& P, unsigned m);

bool member(std::span<const BigInt> z, const IdealLattice& L);
bool member(std::span<const std::int64_t> z, const IdealLattice& L);

/// Canonical representative of z + L with 0 <= r_i < basis[i][i].
BigVector coset_id(std::span<const BigInt> z, const IdealLattice& L);
BigVector coset_id(std::span<const std::int64_t> z, const IdealLattice& L);

/// Points of [-r, r]^d in lexicographic order (first coordinate slowest).
class BoxPoints {
public:
    BoxPoints(std::int64_t r, unsigned d);

    class iterator {
    public:
        using value_type = LatticePoint;
        using difference_type = std::ptrdiff_t;
        iterator() = default;
        iterator(std::int64_t r, unsigned d, bool done);
        const LatticePoint& operator*() const { return point_; }
        iterator& operator++();
        void operator++(int) { ++*this; }
        bool operator==(const iterator& other) const { return done_ == other.done_ && (done_ || point_ == other.point_); }

    private:
        std::int64_t r_ = 0;
        LatticePoint point_;
        bool done_ = true;
    };

    [[nodiscard]] iterator begin() const { return {r_, d_, false}; }
    [[nodiscard]] iterator end() const { return {r_, d_, true}; }
    [[nodiscard]] std::uint64_t size() const;

private:
    std::int64_t r_;
    unsigned d_;
};

BoxPoints box_points(std::int64_t r, unsigned d);

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

template <typename Visit>
void lattice_box_level(const std::vector<std::vector<std::int64_t>>& basis, std::span<const std::int64_t> lo,
                       std::span<const std::int64_t> hi, int level, LatticePoint& acc, Visit& visit) {
    if (level < 0) {
        visit(std::span<const std::int64_t>(acc));
        return;
    }
    const auto j = static_cast<std::size_t>(level);
    const std::int64_t h = basis[j][j];
    const std::int64_t base = acc[j];
    const std::int64_t cmin = -floor_div(base - lo[j], h);
    const std::int64_t cmax = floor_div(hi[j] - base, h);
    if (cmin > cmax) return;
    for (std::size_t i = 0; i <= j; ++i) acc[i] += cmin * basis[j][i];
    for (std::int64_t c = cmin; c <= cmax; ++c) {
        lattice_box_level(basis, lo, hi, level - 1, acc, visit);
        for (std::size_t i = 0; i <= j; ++i) acc[i] += basis[j][i];
    }
    for (std::size_t i = 0; i <= j; ++i) acc[i] -= (cmax + 1) * basis[j][i];
}

}  // namespace detail

/// Calls visit(point) for every point of the lattice spanned by a small
/// lower-triangular HNF basis inside the box lo[i] <= z_i <= hi[i].
template <typename Visit>
void for_each_lattice_point_in_box(const std::vector<std::vector<std::int64_t>>& basis,
                                   std::span<const std::int64_t> lo, std::span<const std::int64_t> hi,
                                   Visit&& visit) {
    LatticePoint acc(basis.size(), 0);
    detail::lattice_box_level(basis, lo, hi, static_cast<int>(basis.size()) - 1, acc, visit);
}

}  // namespace cyclofree
