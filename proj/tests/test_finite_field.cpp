#include <doctest.h>

#include <random>

#include "cyclofree/cyclotomic.hpp"
#include "cyclofree/finite_field.hpp"

using namespace cyclofree;

namespace {

FpPoly product(const std::vector<FpFactor>& fs, std::uint64_t p) {
    FpPoly acc{1};
    for (const auto& f : fs) {
        for (unsigned i = 0; i < f.multiplicity; ++i) acc = fp_mul(acc, f.factor, p);
    }
    return acc;
}

// Irreducibility by brute force for tiny p and degree.
bool has_root(const FpPoly& f, std::uint64_t p) {
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t v = 0;
        for (std::size_t i = f.size(); i-- > 0;) v = (v * x + f[i]) % p;
        if (v == 0) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("cyclotomic factorization shapes") {
    // Phi_5 mod 11 splits into linear factors, mod 2 stays irreducible
    CHECK(factor_poly_mod_p(cyclotomic_polynomial(5), 11).size() == 4);
    const auto f2 = factor_poly_mod_p(cyclotomic_polynomial(5), 2);
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].factor.size() == 5);
    // ramified: Phi_9 = (x - 1)^6 mod 3
    const auto f3 = factor_poly_mod_p(cyclotomic_polynomial(9), 3);
    REQUIRE(f3.size() == 1);
    CHECK(f3[0].multiplicity == 6);
    CHECK(f3[0].factor == FpPoly{2, 1});
}

TEST_CASE("property: factorization multiplies back and factors are sorted") {
    std::mt19937_64 rng(99);
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 13ULL, 1000003ULL}) {
        for (int t = 0; t < 25; ++t) {
            std::vector<BigInt> c(8);
            for (auto& v : c) v = static_cast<unsigned long>(rng() % p);
            c.back() = 1;
            const IntPolynomial f(c);
            const auto fs = factor_poly_mod_p(f, p);
            CHECK(product(fs, p) == fp_reduce(f, p));
            for (std::size_t i = 0; i + 1 < fs.size(); ++i) CHECK(fp_poly_less(fs[i].factor, fs[i + 1].factor));
            for (const auto& g : fs) {
                CHECK(g.factor.back() == 1);
                if (p < 20 && g.factor.size() > 2 && g.factor.size() <= 4) CHECK_FALSE(has_root(g.factor, p));
            }
        }
    }
}

TEST_CASE("gcd and mod") {
    const std::uint64_t p = 7;
    const FpPoly a = fp_mul(FpPoly{1, 1}, FpPoly{2, 1}, p);
    const FpPoly b = fp_mul(FpPoly{1, 1}, FpPoly{3, 1}, p);
    CHECK(fp_gcd(a, b, p) == FpPoly{1, 1});
    CHECK(fp_mod(a, FpPoly{1, 1}, p).empty());
}
