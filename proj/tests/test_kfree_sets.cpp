#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "cyclofree/kfree_sets.hpp"

using namespace cyclofree;

namespace {

std::uint64_t brute_force_mismatches(const KFreeBox& box) {
    std::uint64_t bad = 0;
    for (std::uint64_t i = 0; i < box.volume(); ++i) {
        const LatticePoint z = box.point_at(i);
        const bool expected = is_kfree(unembed(std::span<const long>(z), box.cond), box.k);
        if (expected != (box.flags[i] != 0)) ++bad;
    }
    return bad;
}

}  // namespace

TEST_CASE("sieve agrees with pointwise k-freeness") {
    for (unsigned n : {3U, 4U, 8U}) {
        for (unsigned k : {2U, 3U}) {
            const auto box = sieve_box(Conductor(n), k, n == 8 ? 3 : 6);
            CHECK(brute_force_mismatches(box) == 0);
        }
    }
}

TEST_CASE("sieve box geometry") {
    const auto box = sieve_box(Conductor(4), 2, 10);
    CHECK(box.volume() == 441);
    CHECK(box.side() == 21);
    const LatticePoint origin{0, 0};
    CHECK_FALSE(box.flagged(origin));
    CHECK(box.flagged(LatticePoint{1, 0}));
    CHECK(box.flagged(LatticePoint{1, 1}));
    CHECK_FALSE(box.flagged(LatticePoint{2, 0}));
    CHECK(box.index_of(box.point_at(123)) == 123);
    CHECK(box.points().size() == box.count);
    CHECK_FALSE(box.contains(LatticePoint{11, 0}));
    CHECK_THROWS(sieve_box(Conductor(4), 1, 5));
    CHECK_THROWS(sieve_box(Conductor(4), 2, 0));
}

TEST_CASE("thread count does not change the sieve") {
    const auto one = sieve_box(Conductor(5), 2, 4);
    SieveOptions opts;
    opts.threads = 3;
    const auto three = sieve_box(Conductor(5), 2, 4, opts);
    CHECK(one.flags == three.flags);
    opts.bound_mode = NormBoundMode::tight;
    const auto tight = sieve_box(Conductor(5), 2, 4, opts);
    CHECK(tight.flags == one.flags);
    CHECK(tight.norm_bound <= one.norm_bound);
}

TEST_CASE("resource cap") {
    SieveOptions opts;
    opts.max_points = 100;
    CHECK_THROWS_AS(sieve_box(Conductor(4), 2, 10, opts), ResourceCapExceeded);
}

TEST_CASE("truncated prime set gives a superset") {
    SieveOptions opts;
    opts.prime_norm_cap = 5;
    const auto partial = sieve_box(Conductor(4), 2, 12, opts);
    const auto full = sieve_box(Conductor(4), 2, 12);
    for (std::size_t i = 0; i < full.flags.size(); ++i) {
        if (full.flags[i]) CHECK(partial.flags[i]);
    }
    CHECK(partial.count >= full.count);
}

TEST_CASE("density estimate at small radius") {
    const auto box = sieve_box(Conductor(4), 2, 60);
    const auto rep = density_estimate(box, 100000);
    CHECK(rep.point_count == box.count);
    CHECK(rep.relative_gap < 0.05);
}

TEST_CASE("patch shapes") {
    const std::vector<std::int64_t> ext{2, 2};
    const auto shape = PatchShape::block(ext);
    CHECK(shape.size() == 4);
    CHECK(shape.offsets().front() == LatticePoint{0, 0});
    CHECK_THROWS(PatchShape(std::vector<LatticePoint>{{0, 0}, {0, 0}}));
    CHECK_THROWS(PatchShape(std::vector<LatticePoint>{}));
}

TEST_CASE("patch counts") {
    const auto box = sieve_box(Conductor(4), 2, 30);
    const std::vector<std::int64_t> ext{2, 2};
    const auto shape = PatchShape::block(ext);
    const auto pc = extract_patches(box, shape);
    CHECK(pc.anchors == 60U * 60U);
    std::uint64_t total = 0;
    for (const auto& [fill, c] : pc.counts) total += c;
    CHECK(total == pc.anchors);
    // a full 2x2 block covers every coset of 2 Z^2 = Gamma of P^2, P above 2
    CHECK(pc.counts.count("1111") == 0);
    CHECK(extract_patches(box, shape, 4).counts == pc.counts);
    const double h = patch_entropy_estimate(box, shape);
    CHECK(h > 0.0);
    CHECK(h <= std::log(2.0));
    const std::vector<std::int64_t> huge{80, 80};
    CHECK_THROWS(extract_patches(box, PatchShape::block(huge)));
}

TEST_CASE("admissibility") {
    const Conductor c4(4);
    CHECK(is_admissible(std::vector<LatticePoint>{}, c4, 2));
    const std::vector<LatticePoint> cover{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    const auto rep = check_admissible(cover, c4, 2);
    CHECK_FALSE(rep.admissible);
    REQUIRE(rep.violated.has_value());
    CHECK(rep.violated->ell == 2);
    const std::vector<LatticePoint> three{{0, 0}, {0, 1}, {1, 0}};
    CHECK(is_admissible(three, c4, 2));
    const auto box = sieve_box(c4, 2, 20);
    CHECK(is_admissible(box.points(), c4, 2));
    CHECK(hereditary_check(box, 20, 1).passed());
}
