#include "cyclofree/prime_ideals.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "cyclofree/finite_field.hpp"
#include "cyclofree/lattice.hpp"

namespace cyclofree {

BigInt PrimeIdeal::ell_big() const {
    BigInt out;
    mpz_import(out.get_mpz_t(), 1, -1, sizeof(ell), 0, 0, &ell);
    return out;
}

BigInt PrimeIdeal::norm() const {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), ell_big().get_mpz_t(), f);
    return out;
}

CycInt PrimeIdeal::generator() const { return reduce(g_poly, Conductor(n)); }

bool canonical_less(const PrimeIdeal& a, const PrimeIdeal& b) {
    const BigInt na = a.norm();
    const BigInt nb = b.norm();
    if (na != nb) return na < nb;
    if (a.ell != b.ell) return a.ell < b.ell;
    const auto& ca = a.g_poly.coeffs();
    const auto& cb = b.g_poly.coeffs();
    if (ca.size() != cb.size()) return ca.size() < cb.size();
    return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
}

SplittingType splitting_type(std::uint64_t ell, unsigned n) {
    std::uint64_t m = n;
    std::uint64_t prime_power = 1;
    while (m % ell == 0) {
        m /= ell;
        prime_power *= ell;
    }
    const auto e = static_cast<unsigned>(euler_phi(prime_power));
    const auto f = static_cast<unsigned>(multiplicative_order(ell % m, m));
    const auto g = static_cast<unsigned>(euler_phi(m) / f);
    return {e, f, g};
}

std::vector<PrimeIdeal> split_prime(std::uint64_t ell, const Conductor& cond) {
    if (!is_prime_u64(ell)) throw std::invalid_argument("split_prime: " + std::to_string(ell) + " is not prime");
    if (ell >= (1ULL << 63U)) throw FactoringCapacityExceeded("split_prime: prime exceeds 63 bits");
    static std::mutex mutex;
    static std::map<std::pair<std::uint64_t, unsigned>, std::vector<PrimeIdeal>> cache;
    const auto key = std::make_pair(ell, cond.n());
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    std::vector<PrimeIdeal> out;
    for (const auto& [g, mult] : factor_poly_mod_p(cond.minimal_polynomial(), ell)) {
        PrimeIdeal P;
        P.ell = ell;
        P.n = cond.n();
        P.e = mult;
        P.f = static_cast<unsigned>(g.size() - 1);
        P.g_poly = fp_lift(g);
        out.push_back(std::move(P));
    }
    std::sort(out.begin(), out.end(), canonical_less);
    const SplittingType expected = splitting_type(ell, cond.n());
    unsigned total = 0;
    for (const auto& P : out) {
        if (P.e != expected.e || P.f != expected.f) {
            throw std::logic_error("split_prime: factorization disagrees with the splitting type");
        }
        total += P.e * P.f;
    }
    if (total != cond.degree() || out.size() != expected.g) {
        throw std::logic_error("split_prime: e*f*g != phi(n)");
    }
    std::lock_guard lock(mutex);
    cache.emplace(key, out);
    return out;
}

std::vector<PrimeIdeal> enumerate_prime_ideals(const Conductor& cond, std::uint64_t norm_bound) {
    std::vector<PrimeIdeal> out;
    if (norm_bound < 2) return out;
    if (norm_bound > 0xFFFFFFFFULL) throw std::invalid_argument("enumerate_prime_ideals: norm bound too large");
    for (std::uint32_t ell : primes_up_to(static_cast<std::uint32_t>(norm_bound))) {
        const SplittingType t = splitting_type(ell, cond.n());
        // ell^f <= bound
        std::uint64_t nrm = 1;
        bool small = true;
        for (unsigned i = 0; i < t.f; ++i) {
            nrm *= ell;
            if (nrm > norm_bound) {
                small = false;
                break;
            }
        }
        if (!small) continue;
        for (auto& P : split_prime(ell, cond)) out.push_back(std::move(P));
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

unsigned valuation(const CycInt& x, const PrimeIdeal& P) {
    if (x.is_zero()) throw std::domain_error("valuation: v_P(0) is infinite");
    if (x.n() != P.n) throw ConductorMismatch("valuation: element and ideal live in different rings");
    const BigInt nx = abs(norm(x));
    const BigInt np = P.norm();
    const BigVector z = embed(x);
    unsigned m = 0;
    BigInt np_power = np;
    // x in P^(m+1) forces N(P)^(m+1) | N(x)
    while (mpz_divisible_p(nx.get_mpz_t(), np_power.get_mpz_t()) != 0) {
        if (!member(std::span<const BigInt>(z), ideal_lattice(P, m + 1))) break;
        ++m;
        np_power *= np;
    }
    return m;
}

KFreeStatus classify_kfree(const CycInt& x, unsigned k) {
    if (k < 2) throw std::invalid_argument("k-freeness requires k >= 2");
    if (x.is_zero()) return KFreeStatus::zero;
    const BigInt nx = abs(norm(x));
    if (nx == 1) return KFreeStatus::k_free;
    const BigVector z = embed(x);
    for (const auto& [ell, a] : factor(nx)) {
        // v_P(x) >= k needs ell^(f k) | N(x)
        if (a < k) continue;
        if (!ell.fits_ulong_p()) throw FactoringCapacityExceeded("is_kfree: prime factor exceeds 64 bits");
        for (const auto& P : split_prime(ell.get_ui(), x.conductor())) {
            if (P.f * k > a) continue;
            if (member(std::span<const BigInt>(z), ideal_lattice(P, k))) return KFreeStatus::divisible;
        }
    }
    return KFreeStatus::k_free;
}

bool is_kfree(const CycInt& x, unsigned k) { return classify_kfree(x, k) == KFreeStatus::k_free; }

bool is_in_Wk(const CycInt& x, unsigned k) {
    if (!is_kfree(x, k)) return false;
    const BigInt nx = abs(norm(x));
    if (nx == 1) return true;
    for (const auto& [ell, a] : factor(nx)) {
        (void)a;
        if (ell > x.n() || x.n() % ell.get_ui() != 0) return false;
    }
    return true;
}

}  // namespace cyclofree
