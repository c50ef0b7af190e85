#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cyclofree/cli.hpp"
#include "cyclofree/serialization.hpp"

using namespace cyclofree;

namespace {

bool member_small(const LatticePoint& z, const IdealLattice& L) { return member(std::span<const std::int64_t>(z), L); }

}  // namespace

TEST_CASE("reduction and multiplication") {
    const Conductor c4(4);
    CHECK(reduce(IntPolynomial::monomial(1, 4), c4) == CycInt(c4, {1, 0}));
    CHECK(reduce(IntPolynomial::monomial(1, 2), c4) == CycInt(c4, {-1, 0}));
    const Conductor c5(5);
    CHECK(reduce(IntPolynomial{1, 1, 1, 1}, c5) == CycInt(c5, {1, 1, 1, 1}));
    CHECK(reduce(IntPolynomial{0, 0, 0, 0, -1}, c5) == CycInt(c5, {1, 1, 1, 1}));
    const CycInt i = CycInt::root_power(c4, 1);
    const CycInt one = CycInt::from_integer(c4, 1);
    CHECK(mul(one, i) == i);
    CHECK(mul(i, i) == -one);
    CHECK(mul(one + i, one - i) == CycInt::from_integer(c4, 2));
    CHECK(galois_apply(GaloisIndex(1, 4), one + i) == one + i);
    CHECK(galois_apply(GaloisIndex(3, 4), i) == -i);
    CHECK(norm(one) == 1);
    CHECK(norm(one + i) == 2);
    CHECK(embed(CycInt(c4)) == std::vector<BigInt>{0, 0});
    CHECK(embed(CycInt::root_power(c5, 2)) == std::vector<BigInt>{0, 0, 1, 0});
}

TEST_CASE("prime ideals of Z[i] and Q(xi_12)") {
    const Conductor c4(4);
    const auto five = split_prime(5, c4);
    REQUIRE(five.size() == 2);
    CHECK((five[0].e == 1 && five[0].f == 1));
    const auto two = split_prime(2, c4);
    REQUIRE(two.size() == 1);
    CHECK((two[0].e == 2 && two[0].f == 1));
    const auto thirteen = split_prime(13, Conductor(12));
    CHECK(thirteen.size() == 4);
    for (const auto& P : thirteen) CHECK(P.norm() == 13);

    const auto small = enumerate_prime_ideals(c4, 5);
    REQUIRE(small.size() == 3);
    CHECK(small[0].norm() == 2);
    CHECK(small[1].norm() == 5);
    CHECK(small[2].norm() == 5);
    CHECK(enumerate_prime_ideals(c4, 1).empty());

    const PrimeIdeal& P = two[0];
    const CycInt i = CycInt::root_power(c4, 1);
    const CycInt one = CycInt::from_integer(c4, 1);
    CHECK(valuation(one, P) == 0);
    CHECK(valuation(one + i, P) == 1);
    CHECK(valuation(CycInt::from_integer(c4, 2), P) == 2);
}

TEST_CASE("k-free and W_k examples") {
    const Conductor c4(4);
    const CycInt i = CycInt::root_power(c4, 1);
    const CycInt one = CycInt::from_integer(c4, 1);
    CHECK_FALSE(is_kfree(CycInt::from_integer(c4, 4), 2));
    CHECK(is_kfree(CycInt::from_integer(c4, 4), 5));
    for (unsigned k = 2; k < 6; ++k) CHECK(is_kfree(i, k));
    CHECK(is_in_Wk(CycInt::root_power(Conductor(12), 5), 2));
    CHECK(is_in_Wk(one + i, 2));
    CHECK_FALSE(is_in_Wk(one + i * BigInt(2), 2));
    const auto S = symmetry_matrix(i, GaloisIndex(3, 4));
    CHECK(is_in_Wk(S.apply(one + i), 2));
}

TEST_CASE("lattice examples") {
    const Conductor c4(4);
    const auto P = split_prime(2, c4)[0];
    const IdealLattice L = ideal_lattice(P, 1);
    CHECK(L.index == 2);
    for (const auto& z : box_points(3, 2)) CHECK(member_small(z, L) == ((z[0] + z[1]) % 2 == 0));
    CHECK(member_small({0, 0}, L));
    CHECK(member_small({1, 1}, L));
    CHECK_FALSE(member_small({1, 0}, L));
    CHECK(ideal_lattice(split_prime(5, c4)[0], 2).index == 25);
    for (const auto& Q : split_prime(3, c4)) CHECK(ideal_lattice(Q, 1).index == 9);

    const auto id = hnf(std::vector<BigVector>{{1, 0}, {0, 1}}, 2);
    CHECK(id.basis == std::vector<BigVector>{{1, 0}, {0, 1}});
    CHECK(id.index == 1);
    CHECK(hnf(std::vector<BigVector>{{2, 0}, {0, 2}, {1, 1}}, 2).index == 2);
    CHECK(hnf(std::vector<BigVector>{{1, 1}, {0, -2}, {4, 0}, {2, 0}}, 2).basis ==
          hnf(std::vector<BigVector>{{2, 0}, {0, 2}, {1, 1}}, 2).basis);

    const IdealLattice L2 = ideal_lattice(split_prime(5, c4)[0], 2);
    const LatticePoint z{7, -3};
    CHECK(coset_id(std::span<const BigInt>(L2.basis[1]), L2) == BigVector{0, 0});
    LatticePoint shifted = z;
    for (int c = 0; c < 2; ++c) shifted[c] += L2.basis[1][c].get_si();
    CHECK(coset_id(std::span<const std::int64_t>(z), L2) == coset_id(std::span<const std::int64_t>(shifted), L2));

    CHECK(box_points(0, 2).size() == 1);
    CHECK(box_points(1, 2).size() == 9);
    CHECK(box_points(2, 4).size() == 625);
}

TEST_CASE("sieve examples") {
    const Conductor c4(4);
    const auto box = sieve_box(c4, 2, 10);
    CHECK_FALSE(box.flagged(LatticePoint{2, 2}));
    std::uint64_t prev = 0;
    for (unsigned k = 2; k <= 6; ++k) {
        const auto b = sieve_box(c4, k, 10);
        CHECK(b.count >= prev);
        prev = b.count;
    }
    SieveOptions tiny;
    tiny.max_points = 8;
    CHECK_THROWS_AS(sieve_box(c4, 2, 1, tiny), ResourceCapExceeded);
}

TEST_CASE("patch and admissibility examples") {
    const Conductor c4(4);
    const auto box = sieve_box(c4, 2, 10);
    const PatchShape single(std::vector<LatticePoint>{{0, 0}});
    CHECK(patch_entropy_estimate(box, single) == doctest::Approx(std::log(2.0)));
    CHECK(is_admissible(std::vector<LatticePoint>{}, c4, 2));
    CHECK(is_admissible(box.points(), c4, 2));
}

TEST_CASE("zeta examples") {
    const auto fine = dedekind_zeta(Conductor(4), 2, 1000000);
    CHECK(fine.value.width() < 1e-4);
    const auto high = dedekind_zeta(Conductor(4), 50, 1000);
    CHECK(high.value.upper.to_double(MPFR_RNDU) - 1.0 < 1e-10);
    CHECK(high.value.lower.to_double(MPFR_RNDD) >= 1.0);
    const auto eis = dedekind_zeta(Conductor(3), 2, 1000000);
    CHECK((eis.value.strictly_below(fine.value) || fine.value.strictly_below(eis.value)));
}

TEST_CASE("symmetry examples") {
    const Conductor c4(4);
    const auto units4 = unit_generators(c4);
    REQUIRE(units4.size() == 2);
    CHECK(units4[0] == CycInt::from_integer(c4, -1));
    CHECK(units4[1] == CycInt::root_power(c4, 1));
    const Conductor c12(12);
    const CycInt w = CycInt::from_integer(c12, 1) - CycInt::root_power(c12, 1);
    const auto units12 = unit_generators(c12);
    CHECK(std::find(units12.begin(), units12.end(), w) != units12.end());
    CHECK(abs(norm(w)) == 1);
    const Conductor c5(5);
    CHECK(abs(norm(CycInt(c5, {1, 1, 0, 0}))) == 1);

    const auto id = symmetry_matrix(CycInt::from_integer(c5, 1), GaloisIndex(1, 5));
    for (unsigned r = 0; r < 4; ++r) {
        for (unsigned c = 0; c < 4; ++c) CHECK(id.matrix[r][c] == (r == c ? 1 : 0));
    }
    const auto window = sieve_box(c4, 2, 50);
    CHECK(verify_stabiliser_action(symmetry_matrix(CycInt::from_integer(c4, 1), GaloisIndex(1, 4)), window, 100).passed());
    const auto rot = symmetry_matrix(CycInt::root_power(c4, 1), GaloisIndex(3, 4));
    CHECK(verify_stabiliser_action(rot, window, 1000).passed());

    CHECK(splitting_primes(12, 100).primes == std::vector<std::uint64_t>{13, 37, 61, 73, 97});
    for (auto p : splitting_primes(4, 500).primes) CHECK(p % 4 == 1);
    CHECK(splitting_primes(4, 500).primes.size() == 44);

    const auto g4 = galois_group(4);
    CHECK(g4.elements == std::vector<unsigned>{1, 3});
    const auto g12 = galois_group(12);
    CHECK(g12.elements == std::vector<unsigned>{1, 5, 7, 11});
    for (unsigned i = 0; i < 4; ++i) CHECK(g12.table[i][i] == 0);
}

TEST_CASE("lemma examples for the found candidate") {
    const auto cand = aq_search(12, 13, 10000, 1000000);
    REQUIRE(cand.has_value());
    for (auto [m, j] : {std::pair{3U, 1U}, std::pair{12U, 5U}}) {
        const auto rep = verify_lemma_factors(*cand, m, j);
        CHECK(rep.passed());
        CHECK(abs(rep.norm) != 1);
    }
}

TEST_CASE("symcheck run on Q(xi_12)") {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run({"symcheck", "--n", "12", "--k", "2", "--radius", "30", "--samples", "500"}, out, err);
    CHECK(code == 0);
    const auto j = Json::parse(out.str());
    CHECK(j["passed"] == true);
    for (const auto& e : j["elements"]) CHECK(e["failures"].empty());
}
