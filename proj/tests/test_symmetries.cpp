#include <doctest.h>

#include "cyclofree/symmetries.hpp"
#include "generators.hpp"

using namespace cyclofree;

TEST_CASE("determinant") {
    CHECK(determinant(IntMatrix{}) == 1);
    CHECK(determinant(IntMatrix{{BigInt(2), BigInt(3)}, {BigInt(1), BigInt(4)}}) == 5);
    CHECK(determinant(IntMatrix{{BigInt(0), BigInt(1)}, {BigInt(1), BigInt(0)}}) == -1);
    CHECK(determinant(IntMatrix{{BigInt(1), BigInt(2)}, {BigInt(2), BigInt(4)}}) == 0);
}

TEST_CASE("unit generators") {
    CHECK(unit_generators(Conductor(4)).size() == 2);
    CHECK(unit_generators(Conductor(12)).size() == 3);
    CHECK(unit_generators(Conductor(5)).size() == 3);  // -1, xi, 1 + xi
    for (unsigned n : testgen::conductors()) {
        for (const auto& u : unit_generators(Conductor(n))) CHECK(abs(norm(u)) == 1);
    }
}

TEST_CASE("symmetry matrices: unimodular and the semidirect law") {
    for (unsigned n : {3U, 4U, 5U, 8U, 12U}) {
        const Conductor cond(n);
        const auto gens = generator_elements(cond);
        const CycInt probe(cond, std::vector<BigInt>(cond.degree(), BigInt(1)));
        for (const auto& S : gens) {
            CHECK(abs(determinant(S.matrix)) == 1);
            const auto inv = S.inverse();
            const auto id = S.compose(inv);
            CHECK(id.unit == CycInt::from_integer(cond, 1));
            CHECK(id.galois.r() == 1);
            CHECK(inv.apply(S.apply(probe)) == probe);
            for (const auto& T : gens) {
                const auto ST = S.compose(T);
                CHECK(ST.matrix == matrix_multiply(S.matrix, T.matrix));
                CHECK(ST.apply(probe) == S.apply(T.apply(probe)));
            }
        }
    }
    CHECK_THROWS_AS(symmetry_matrix(CycInt(Conductor(4), {1, 1}), GaloisIndex(1, 4)), std::invalid_argument);
}

TEST_CASE("matrix columns are images of the power basis") {
    const Conductor c4(4);
    const auto S = symmetry_matrix(CycInt::root_power(c4, 1), GaloisIndex(1, 4));
    CHECK(S.matrix == IntMatrix{{BigInt(0), BigInt(-1)}, {BigInt(1), BigInt(0)}});
    const std::vector<std::int64_t> z{3, 2};
    const auto img = matrix_apply(S.matrix, std::span<const std::int64_t>(z));
    CHECK(img == std::vector<BigInt>{-2, 3});
}

TEST_CASE("stabiliser action on a small window") {
    const Conductor c8(8);
    const auto window = sieve_box(c8, 2, 3);
    for (const auto& S : generator_elements(c8)) {
        const auto rep = verify_stabiliser_action(S, window, 200, 0, 2);
        CHECK(rep.passed());
        CHECK(rep.checked == 200);
    }
}

TEST_CASE("a non-stabiliser shear is caught") {
    const IntMatrix shear{{BigInt(1), BigInt(1)}, {BigInt(0), BigInt(1)}};
    const auto w = find_non_stabiliser_witness(shear, Conductor(4), 2);
    REQUIRE(w.has_value());
    const CycInt x = unembed(std::span<const long>(*w), Conductor(4));
    CHECK(is_kfree(x, 2));
    const auto img = matrix_apply(shear, std::span<const std::int64_t>(*w));
    CHECK_FALSE(is_kfree(unembed(std::span<const BigInt>(img), Conductor(4)), 2));
}

TEST_CASE("W_k preservation and coprimality transport") {
    const Conductor c12(12);
    const auto wk = enumerate_Wk(c12, 2, 100, 2);
    CHECK_FALSE(wk.empty());
    const auto window = sieve_box(c12, 2, 2);
    for (const auto& S : generator_elements(c12)) {
        CHECK(verify_Wk_preservation(S, 2, 100, 2).passed());
        const auto rep = verify_coprimality_transport(S, window, 40, 50, 3);
        CHECK(rep.passed());
        CHECK(rep.checked > 0);
    }
}

TEST_CASE("splitting primes and admissible divisors") {
    const auto s = splitting_primes(12, 100);
    CHECK(s.primes == std::vector<std::uint64_t>{13, 37, 61, 73, 97});
    CHECK(admissible_divisors(12) == std::vector<unsigned>{3, 4, 12});
    CHECK(admissible_divisors(15) == std::vector<unsigned>{3, 5, 15});
}

TEST_CASE("a_q hypotheses") {
    CHECK_FALSE(satisfies_h2(12, 5));
    CHECK(satisfies_h2(12, 6));
    CHECK_FALSE(satisfies_h1(12, 13, 0));
    CHECK_THROWS(aq_search(12, 11, 100, 100));
    CHECK_THROWS(aq_search(12, 13, 5, 100));
    const auto c = aq_search(12, 13, 2000, 200000);
    REQUIRE(c.has_value());
    CHECK(validate_candidate(*c) == AqCheck::ok);
    CHECK(aq_search(12, 13, 2000, 200000, 3)->a == c->a);
    // the least candidate: nothing below it passes
    for (std::uint64_t a = 0; a < c->a; a += 6) {
        CHECK_FALSE((satisfies_h1(12, 13, a) && satisfies_h3(12, a, 2000)));
    }
}

TEST_CASE("vanishing four-term sums") {
    const auto r4 = vanishing_four_sums(4);
    CHECK(r4.relations > 0);
    CHECK(r4.violations.empty());
    const auto r6 = vanishing_four_sums(6);
    CHECK(r6.violations.empty());
    for (const auto& s : r6.survivors) CHECK(6 % s.ratio == 0);
    CHECK(vanishing_four_sums(1).survivors.empty());
}

TEST_CASE("galois group tables") {
    for (unsigned n = 1; n <= 100; ++n) {
        const auto g = galois_group(n);
        CHECK(g.elements.size() == euler_phi(n));
        std::uint64_t prod = 1;
        for (auto o : g.crt_orders) prod *= o;
        CHECK(prod == euler_phi(n));
        // every row of the table is a permutation
        for (const auto& row : g.table) {
            std::vector<unsigned> sorted = row;
            std::sort(sorted.begin(), sorted.end());
            for (unsigned i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == i);
        }
    }
}
