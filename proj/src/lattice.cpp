#include "cyclofree/lattice.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "cyclofree/cyclotomic.hpp"
#include "cyclofree/prime_ideals.hpp"

namespace cyclofree {

namespace {

void reduce_mod(BigVector& v, const BigInt& modulus) {
    for (auto& x : v) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
}

std::vector<BigVector> echelon(std::vector<BigVector> pool, unsigned d, const BigInt* multiple) {
    std::vector<BigVector> basis(d);
    for (int col = static_cast<int>(d) - 1; col >= 0; --col) {
        const auto c = static_cast<std::size_t>(col);
        std::size_t pivot = pool.size();
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (pool[i][c] == 0) continue;
            if (pivot == pool.size()) {
                pivot = i;
                continue;
            }
            // (pivot, row) <- unimodular combination putting gcd in pivot, zero in row
            BigInt g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), pool[pivot][c].get_mpz_t(),
                       pool[i][c].get_mpz_t());
            const BigInt a = pool[pivot][c] / g;
            const BigInt b = pool[i][c] / g;
            for (std::size_t k = 0; k <= c; ++k) {
                const BigInt p = pool[pivot][k];
                const BigInt r = pool[i][k];
                pool[pivot][k] = s * p + t * r;
                pool[i][k] = a * r - b * p;
            }
            if (multiple != nullptr) {
                reduce_mod(pool[i], *multiple);
                for (std::size_t k = 0; k < c; ++k) {
                    mpz_fdiv_r(pool[pivot][k].get_mpz_t(), pool[pivot][k].get_mpz_t(), multiple->get_mpz_t());
                }
            }
        }
        if (pivot == pool.size()) {
            throw RankDeficient("hnf: generators do not span a full-rank lattice");
        }
        BigVector row = std::move(pool[pivot]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pivot));
        if (row[c] < 0) {
            for (auto& x : row) x = -x;
        }
        if (multiple != nullptr) {
            for (std::size_t k = 0; k < c; ++k) mpz_fdiv_r(row[k].get_mpz_t(), row[k].get_mpz_t(), multiple->get_mpz_t());
        }
        basis[c] = std::move(row);
        // drop rows that became zero
        std::erase_if(pool, [](const BigVector& v) {
            for (const auto& x : v) {
                if (x != 0) return false;
            }
            return true;
        });
    }
    return basis;
}

IdealLattice finish(std::vector<BigVector> basis, unsigned d) {
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j-- > 0;) {
            BigInt q;
            mpz_fdiv_q(q.get_mpz_t(), basis[i][j].get_mpz_t(), basis[j][j].get_mpz_t());
            if (q == 0) continue;
            for (std::size_t k = 0; k <= j; ++k) basis[i][k] -= q * basis[j][k];
        }
    }
    IdealLattice out;
    out.d = d;
    out.index = 1;
    for (std::size_t i = 0; i < d; ++i) out.index *= basis[i][i];
    out.basis = std::move(basis);
    return out;
}

void check_generators(std::span<const BigVector> generators, unsigned d) {
    for (const auto& g : generators) {
        if (g.size() != d) throw DimensionMismatch("hnf: generator of wrong length");
    }
}

}  // namespace

std::optional<std::vector<std::vector<std::int64_t>>> IdealLattice::small_basis() const {
    std::vector<std::vector<std::int64_t>> out(d, std::vector<std::int64_t>(d, 0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (!basis[i][j].fits_slong_p()) return std::nullopt;
            out[i][j] = basis[i][j].get_si();
        }
    }
    return out;
}

IdealLattice hnf(std::span<const BigVector> generators, unsigned d) {
    check_generators(generators, d);
    std::vector<BigVector> pool(generators.begin(), generators.end());
    return finish(echelon(std::move(pool), d, nullptr), d);
}

IdealLattice hnf_modular(std::span<const BigVector> generators, unsigned d, const BigInt& multiple) {
    check_generators(generators, d);
    if (multiple <= 0) throw std::invalid_argument("hnf_modular: multiple must be positive");
    std::vector<BigVector> pool;
    pool.reserve(generators.size() + d);
    for (const auto& g : generators) {
        BigVector v = g;
        reduce_mod(v, multiple);
        pool.push_back(std::move(v));
    }
    for (unsigned i = 0; i < d; ++i) {
        BigVector v(d, BigInt(0));
        v[i] = multiple;
        pool.push_back(std::move(v));
    }
    // Reducing mod D only preserves span + D Z^d; an exact pass over the
    // reduced basis together with D e_i restores the lattice itself.
    std::vector<BigVector> rows = echelon(std::move(pool), d, &multiple);
    for (unsigned i = 0; i < d; ++i) {
        BigVector v(d, BigInt(0));
        v[i] = multiple;
        rows.push_back(std::move(v));
    }
    return finish(echelon(std::move(rows), d, nullptr), d);
}

IdealLattice ideal_lattice(const PrimeIdeal& P, unsigned m) {
    if (m == 0) throw std::invalid_argument("ideal_lattice: exponent must be positive");
    using Key = std::tuple<unsigned, std::uint64_t, std::vector<std::uint64_t>, unsigned>;
    static std::mutex mutex;
    static std::map<Key, IdealLattice> cache;
    std::vector<std::uint64_t> gkey;
    for (const auto& c : P.g_poly.coeffs()) gkey.push_back(c.get_ui());
    const Key key{P.n, P.ell, gkey, m};
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    const Conductor cond(P.n);
    const unsigned d = cond.degree();
    const BigInt ell = P.ell_big();
    const CycInt gen = P.generator();
    IdealLattice current;
    BigInt ell_power = 1;
    for (unsigned step = 1; step <= m; ++step) {
        ell_power *= ell;
        std::vector<BigVector> gens;
        if (step == 1) {
            // ideal (ell, g(xi)) as a Z-module: ell * Z^d + g(xi) * O
            for (unsigned t = 0; t < d; ++t) gens.push_back(embed(gen * CycInt::root_power(cond, t)));
        } else {
            for (const auto& row : current.basis) {
                const CycInt b = unembed(std::span<const BigInt>(row), cond);
                gens.push_back(embed(b * ell));
                gens.push_back(embed(b * gen));
            }
        }
        current = hnf_modular(gens, d, ell_power);
    }
    current.n = P.n;
    BigInt expected;
    mpz_pow_ui(expected.get_mpz_t(), P.norm().get_mpz_t(), m);
    if (current.index != expected) {
        throw std::logic_error("ideal_lattice: index " + to_decimal(current.index) + " differs from N(P)^m = " +
                               to_decimal(expected));
    }
    std::lock_guard lock(mutex);
    cache.emplace(key, current);
    return current;
}

namespace {

template <typename T>
BigVector to_big(std::span<const T> z) {
    BigVector v;
    v.reserve(z.size());
    for (const auto& x : z) v.emplace_back(x);
    return v;
}

// Subtracts the lattice component column by column from the last; the
// result lies in the fundamental box 0 <= r_i < basis[i][i].
BigVector reduce_against(BigVector z, const IdealLattice& L) {
    if (z.size() != L.d) throw DimensionMismatch("lattice: point dimension differs from lattice rank");
    for (std::size_t j = L.d; j-- > 0;) {
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), z[j].get_mpz_t(), L.basis[j][j].get_mpz_t());
        if (q == 0) continue;
        for (std::size_t k = 0; k <= j; ++k) z[k] -= q * L.basis[j][k];
    }
    return z;
}

}  // namespace

BigVector coset_id(std::span<const BigInt> z, const IdealLattice& L) { return reduce_against(to_big(z), L); }

BigVector coset_id(std::span<const std::int64_t> z, const IdealLattice& L) { return reduce_against(to_big(z), L); }

bool member(std::span<const BigInt> z, const IdealLattice& L) {
    for (const auto& x : coset_id(z, L)) {
        if (x != 0) return false;
    }
    return true;
}

bool member(std::span<const std::int64_t> z, const IdealLattice& L) {
    for (const auto& x : coset_id(z, L)) {
        if (x != 0) return false;
    }
    return true;
}

BoxPoints::BoxPoints(std::int64_t r, unsigned d) : r_(r), d_(d) {
    if (r < 0) throw std::invalid_argument("box_points: radius must be non-negative");
}

std::uint64_t BoxPoints::size() const {
    std::uint64_t total = 1;
    for (unsigned i = 0; i < d_; ++i) total *= static_cast<std::uint64_t>(2 * r_ + 1);
    return total;
}

BoxPoints::iterator::iterator(std::int64_t r, unsigned d, bool done) : r_(r), point_(d, -r), done_(done) {}

BoxPoints::iterator& BoxPoints::iterator::operator++() {
    for (std::size_t i = point_.size(); i-- > 0;) {
        if (point_[i] < r_) {
            ++point_[i];
            return *this;
        }
        point_[i] = -r_;
    }
    done_ = true;
    return *this;
}

BoxPoints box_points(std::int64_t r, unsigned d) { return {r, d}; }

}  // namespace cyclofree
