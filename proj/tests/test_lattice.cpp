#include <doctest.h>

#include <random>
#include <set>

#include "cyclofree/lattice.hpp"
#include "cyclofree/prime_ideals.hpp"
#include "cyclofree/symmetries.hpp"

using namespace cyclofree;

namespace {

std::vector<BigVector> random_generators(std::mt19937_64& rng, unsigned d, unsigned count, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    std::vector<BigVector> gens(count, BigVector(d));
    for (auto& g : gens) {
        for (auto& v : g) v = dist(rng);
    }
    return gens;
}

void check_hnf_shape(const IdealLattice& L) {
    for (unsigned i = 0; i < L.d; ++i) {
        CHECK(L.basis[i][i] > 0);
        for (unsigned j = i + 1; j < L.d; ++j) CHECK(L.basis[i][j] == 0);
        for (unsigned j = 0; j < i; ++j) {
            CHECK(L.basis[i][j] >= 0);
            CHECK(L.basis[i][j] < L.basis[j][j]);
        }
    }
}

}  // namespace

TEST_CASE("hnf of a simple lattice") {
    const std::vector<BigVector> gens{{2, 0}, {1, 3}, {0, 6}};
    const auto L = hnf(gens, 2);
    check_hnf_shape(L);
    CHECK(L.index == 6);
    CHECK(member(std::span<const std::int64_t>(std::vector<std::int64_t>{3, 3}), L));
    CHECK_FALSE(member(std::span<const std::int64_t>(std::vector<std::int64_t>{1, 0}), L));
    CHECK_THROWS_AS(hnf(std::vector<BigVector>{{1, 1}}, 2), RankDeficient);
    CHECK_THROWS_AS(hnf(std::vector<BigVector>{{1, 1, 1}}, 2), DimensionMismatch);
}

TEST_CASE("property: hnf is canonical under unimodular changes") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 60; ++t) {
        const unsigned d = 2 + static_cast<unsigned>(rng() % 4);
        auto gens = random_generators(rng, d, d + 2, 12);
        const auto L = hnf(gens, d);
        check_hnf_shape(L);
        // add random multiples of one generator to another, permute
        for (int s = 0; s < 10; ++s) {
            const std::size_t a = rng() % gens.size();
            const std::size_t b = rng() % gens.size();
            if (a == b) continue;
            const long c = static_cast<long>(rng() % 7) - 3;
            for (unsigned i = 0; i < d; ++i) gens[a][i] += c * gens[b][i];
        }
        std::shuffle(gens.begin(), gens.end(), rng);
        const auto L2 = hnf(gens, d);
        CHECK(L2.basis == L.basis);
        CHECK(hnf_modular(gens, d, L.index).basis == L.basis);
        for (const auto& g : gens) CHECK(member(std::span<const BigInt>(g), L));
        IntMatrix m(L.basis.begin(), L.basis.end());
        CHECK(abs(determinant(m)) == L.index);
    }
}

TEST_CASE("property: coset ids partition the box consistently") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 20; ++t) {
        const unsigned d = 2;
        const auto L = hnf(random_generators(rng, d, 3, 5), d);
        if (L.index > 40) continue;
        std::set<BigVector> ids;
        for (const auto& z : box_points(8, d)) {
            const auto id = coset_id(std::span<const std::int64_t>(z), L);
            ids.insert(id);
            std::vector<BigInt> diff(d);
            for (unsigned i = 0; i < d; ++i) diff[i] = BigInt(static_cast<long>(z[i])) - id[i];
            CHECK(member(std::span<const BigInt>(diff), L));
        }
        CHECK(BigInt(static_cast<unsigned long>(ids.size())) == L.index);
    }
}

TEST_CASE("box enumeration") {
    CHECK(box_points(10, 2).size() == 441);
    std::uint64_t count = 0;
    LatticePoint prev;
    for (const auto& z : box_points(2, 3)) {
        if (!prev.empty()) CHECK(prev < z);
        prev = z;
        ++count;
    }
    CHECK(count == 125);
    // lattice points in a box against a filter over the whole box
    const std::vector<BigVector> gens{{3, 0, 0}, {1, 2, 0}, {2, 1, 5}};
    const auto L = hnf(gens, 3);
    const auto small = *L.small_basis();
    const std::vector<std::int64_t> lo{-4, -3, -6};
    const std::vector<std::int64_t> hi{5, 4, 2};
    std::set<LatticePoint> seen;
    for_each_lattice_point_in_box(small, lo, hi, [&](std::span<const std::int64_t> z) {
        seen.insert(LatticePoint(z.begin(), z.end()));
    });
    std::set<LatticePoint> expected;
    for (const auto& z : box_points(6, 3)) {
        bool inside = true;
        for (unsigned i = 0; i < 3; ++i) inside = inside && z[i] >= lo[i] && z[i] <= hi[i];
        if (inside && member(std::span<const std::int64_t>(z), L)) expected.insert(z);
    }
    CHECK(seen == expected);
}

TEST_CASE("ideal lattices have index N(P)^m") {
    const Conductor c4(4);
    const auto above2 = split_prime(2, c4);
    REQUIRE(above2.size() == 1);
    CHECK(ideal_lattice(above2[0], 1).index == 2);
    CHECK(ideal_lattice(above2[0], 2).index == 4);
    CHECK(ideal_lattice(above2[0], 2).basis == std::vector<BigVector>{{2, 0}, {0, 2}});
    const auto above5 = split_prime(5, c4);
    REQUIRE(above5.size() == 2);
    CHECK(ideal_lattice(above5[0], 2).index == 25);
    const Conductor c12(12);
    for (const auto& P : split_prime(13, c12)) CHECK(ideal_lattice(P, 3).index == 13 * 13 * 13);
}
