#include "cyclofree/symmetries.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <thread>

namespace cyclofree {

IntMatrix matrix_multiply(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t rows = a.size();
    const std::size_t inner = b.size();
    const std::size_t cols = inner == 0 ? 0 : b.front().size();
    IntMatrix out(rows, std::vector<BigInt>(cols, BigInt(0)));
    for (std::size_t i = 0; i < rows; ++i) {
        if (a[i].size() != inner) throw DimensionMismatch("matrix_multiply: inner dimensions differ");
        for (std::size_t t = 0; t < inner; ++t) {
            if (a[i][t] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) {
                mpz_addmul(out[i][j].get_mpz_t(), a[i][t].get_mpz_t(), b[t][j].get_mpz_t());
            }
        }
    }
    return out;
}

BigInt determinant(IntMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

std::vector<BigInt> matrix_apply(const IntMatrix& m, std::span<const BigInt> v) {
    std::vector<BigInt> out(m.size(), BigInt(0));
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != v.size()) throw DimensionMismatch("matrix_apply: dimension mismatch");
        for (std::size_t j = 0; j < v.size(); ++j) mpz_addmul(out[i].get_mpz_t(), m[i][j].get_mpz_t(), v[j].get_mpz_t());
    }
    return out;
}

std::vector<BigInt> matrix_apply(const IntMatrix& m, std::span<const std::int64_t> v) {
    std::vector<BigInt> big(v.begin(), v.end());
    return matrix_apply(m, std::span<const BigInt>(big));
}

std::vector<CycInt> unit_generators(const Conductor& cond) {
    const unsigned n = cond.n();
    std::vector<CycInt> out;
    out.push_back(CycInt::from_integer(cond, -1));
    out.push_back(CycInt::root_power(cond, 1));
    const auto primes = prime_divisors(n);
    if (primes.size() >= 2) {
        out.push_back(CycInt::from_integer(cond, 1) - CycInt::root_power(cond, 1));
    } else {
        // (1 - xi^a) / (1 - xi) = 1 + xi + ... + xi^(a-1)
        for (unsigned a = 2; 2 * a < n; ++a) {
            if (std::gcd(a, n) != 1) continue;
            CycInt u(cond);
            for (unsigned i = 0; i < a; ++i) u += CycInt::root_power(cond, i);
            out.push_back(std::move(u));
        }
    }
    for (const auto& u : out) {
        if (abs(norm(u)) != 1) throw std::logic_error("unit_generators: generator is not a unit: " + u.to_string());
    }
    return out;
}

CycInt SymmetryElement::apply(const CycInt& x) const { return unit * galois_apply(galois, x); }

SymmetryElement SymmetryElement::inverse() const {
    const GaloisIndex rinv = galois.inverse();
    return symmetry_matrix(galois_apply(rinv, unit_inverse(unit)), rinv);
}

SymmetryElement SymmetryElement::compose(const SymmetryElement& other) const {
    return symmetry_matrix(unit * galois_apply(galois, other.unit), galois.compose(other.galois));
}

SymmetryElement symmetry_matrix(const CycInt& eps, const GaloisIndex& r) {
    if (abs(norm(eps)) != 1) throw std::invalid_argument("symmetry_matrix: " + eps.to_string() + " is not a unit");
    if (r.n() != eps.n()) throw ConductorMismatch("symmetry_matrix: Galois index modulus differs from conductor");
    const Conductor& cond = eps.conductor();
    const unsigned d = cond.degree();
    IntMatrix m(d, std::vector<BigInt>(d, BigInt(0)));
    for (unsigned col = 0; col < d; ++col) {
        const CycInt image = eps * galois_apply(r, CycInt::root_power(cond, col));
        for (unsigned row = 0; row < d; ++row) m[row][col] = image.coeffs()[row];
    }
    const BigInt det = determinant(m);
    if (abs(det) != 1) throw std::logic_error("symmetry_matrix: determinant is not +-1");
    return {eps, r, std::move(m)};
}

std::vector<SymmetryElement> generator_elements(const Conductor& cond) {
    std::vector<SymmetryElement> out;
    const GaloisIndex identity(1, cond.n());
    for (const auto& u : unit_generators(cond)) out.push_back(symmetry_matrix(u, identity));
    const CycInt one = CycInt::from_integer(cond, 1);
    for (unsigned r = 2; r < cond.n(); ++r) {
        if (std::gcd(r, cond.n()) != 1) continue;
        out.push_back(symmetry_matrix(one, GaloisIndex(r, cond.n())));
    }
    return out;
}

namespace {

// First `count` entries of a seeded Fisher-Yates shuffle of 0..total-1.
std::vector<std::size_t> sample_indices(std::size_t total, std::size_t count, std::uint64_t seed) {
    std::vector<std::size_t> idx(total);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    count = std::min(count, total);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (total - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(count);
    return idx;
}

}  // namespace

ActionReport verify_stabiliser_action(const SymmetryElement& S, const KFreeBox& window, std::size_t sample_size,
                                      std::uint64_t seed, unsigned threads) {
    if (!(S.unit.conductor() == window.cond)) throw ConductorMismatch("verify_stabiliser_action: conductor mismatch");
    const std::vector<LatticePoint> pts = window.points();
    const std::vector<std::size_t> chosen = sample_indices(pts.size(), sample_size, seed);
    const SymmetryElement inv = S.inverse();
    const std::size_t parts = std::max<std::size_t>(1, std::min<std::size_t>(threads, chosen.size()));
    std::vector<std::vector<ActionFailure>> partial(parts);
    auto work = [&](std::size_t t) {
        const std::size_t begin = chosen.size() * t / parts;
        const std::size_t end = chosen.size() * (t + 1) / parts;
        for (std::size_t i = begin; i < end; ++i) {
            const LatticePoint& z = pts[chosen[i]];
            const CycInt x = unembed(std::span<const std::int64_t>(z), window.cond);
            if (!is_kfree(S.apply(x), window.k)) partial[t].push_back({z, false});
            if (!is_kfree(inv.apply(x), window.k)) partial[t].push_back({z, true});
        }
    };
    if (parts == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < parts; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    ActionReport rep;
    rep.checked = chosen.size();
    for (auto& p : partial) {
        for (auto& f : p) rep.failures.push_back(std::move(f));
    }
    return rep;
}

std::optional<LatticePoint> find_non_stabiliser_witness(const IntMatrix& m, const Conductor& cond, unsigned k,
                                                        std::int64_t max_radius) {
    const unsigned d = cond.degree();
    if (m.size() != d) throw DimensionMismatch("find_non_stabiliser_witness: matrix size differs from phi(n)");
    for (std::int64_t r = 1; r <= max_radius; ++r) {
        for (const auto& z : box_points(r, d)) {
            // only the shell max|z_i| = r is new at this radius
            const bool on_shell = std::any_of(z.begin(), z.end(), [r](std::int64_t c) { return c == r || c == -r; });
            if (!on_shell) continue;
            const CycInt x = unembed(std::span<const std::int64_t>(z), cond);
            if (!is_kfree(x, k)) continue;
            const std::vector<BigInt> img = matrix_apply(m, std::span<const std::int64_t>(z));
            if (!is_kfree(unembed(std::span<const BigInt>(img), cond), k)) return z;
        }
    }
    return std::nullopt;
}

std::vector<CycInt> enumerate_Wk(const Conductor& cond, unsigned k, const BigInt& norm_bound, std::int64_t radius) {
    std::vector<CycInt> out;
    for (const auto& z : box_points(radius, cond.degree())) {
        const CycInt x = unembed(std::span<const std::int64_t>(z), cond);
        if (x.is_zero()) continue;
        if (abs(norm(x)) > norm_bound) continue;
        if (is_in_Wk(x, k)) out.push_back(x);
    }
    return out;
}

namespace {

LatticePoint to_point(const CycInt& x) {
    LatticePoint z;
    for (const auto& c : x.coeffs()) z.push_back(c.get_si());
    return z;
}

// (x) + (ell) = O: no prime above ell contains x.
bool coprime_to_rational_prime(const CycInt& x, std::uint64_t ell) {
    const BigVector z = embed(x);
    for (const auto& P : split_prime(ell, x.conductor())) {
        if (member(std::span<const BigInt>(z), ideal_lattice(P, 1))) return false;
    }
    return true;
}

}  // namespace

WkReport verify_Wk_preservation(const SymmetryElement& S, unsigned k, const BigInt& norm_bound, std::int64_t radius) {
    WkReport rep;
    const SymmetryElement inv = S.inverse();
    for (const auto& x : enumerate_Wk(S.unit.conductor(), k, norm_bound, radius)) {
        ++rep.checked;
        if (!is_in_Wk(S.apply(x), k) || !is_in_Wk(inv.apply(x), k)) rep.failures.push_back(to_point(x));
    }
    return rep;
}

WkReport verify_coprimality_transport(const SymmetryElement& S, const KFreeBox& window, std::size_t samples,
                                      std::uint64_t ell_bound, std::uint64_t seed) {
    WkReport rep;
    const unsigned n = window.cond.n();
    const std::vector<LatticePoint> pts = window.points();
    std::vector<std::uint64_t> unramified;
    for (std::uint32_t ell : primes_up_to(static_cast<std::uint32_t>(ell_bound))) {
        if (n % ell != 0) unramified.push_back(ell);
    }
    for (std::size_t i : sample_indices(pts.size(), samples, seed)) {
        const CycInt x = unembed(std::span<const std::int64_t>(pts[i]), window.cond);
        const CycInt y = S.apply(x);
        for (std::uint64_t ell : unramified) {
            if (!coprime_to_rational_prime(x, ell)) continue;
            ++rep.checked;
            if (!coprime_to_rational_prime(y, ell)) {
                rep.failures.push_back(pts[i]);
                break;
            }
        }
    }
    return rep;
}

SplittingPrimeSet splitting_primes(unsigned m, std::uint64_t bound) {
    if (m == 0) throw std::invalid_argument("splitting_primes: modulus must be positive");
    if (bound > 4000000000ULL) throw std::invalid_argument("splitting_primes: bound too large");
    SplittingPrimeSet out{m, bound, {}};
    for (std::uint32_t ell : primes_up_to(static_cast<std::uint32_t>(bound))) {
        if (ell % m == 1 % m) out.primes.push_back(ell);
    }
    return out;
}

std::vector<unsigned> admissible_divisors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned m = 2; m <= n; ++m) {
        if (n % m == 0 && m % 4 != 2) out.push_back(m);
    }
    return out;
}

namespace {

std::uint64_t radical(unsigned n) {
    std::uint64_t r = 1;
    for (std::uint64_t p : prime_divisors(n)) r *= p;
    return r;
}

// Every ell <= bound with ell = 1 mod m for some admissible divisor m of n.
std::vector<std::uint64_t> h3_primes(unsigned n, std::uint64_t ell_bound) {
    const auto divisors = admissible_divisors(n);
    std::vector<std::uint64_t> out;
    for (std::uint32_t ell : primes_up_to(static_cast<std::uint32_t>(ell_bound))) {
        if (std::any_of(divisors.begin(), divisors.end(), [ell](unsigned m) { return ell % m == 1; })) {
            out.push_back(ell);
        }
    }
    return out;
}

bool h3_holds(unsigned n, std::uint64_t a, const std::vector<std::uint64_t>& primes) {
    return std::none_of(primes.begin(), primes.end(), [&](std::uint64_t ell) {
        const std::uint64_t sq = ell * ell;
        return powmod(a % sq, n, sq) == 1 % sq;
    });
}

void check_q(unsigned n, std::uint64_t q) {
    if (!is_prime_u64(q) || q % n != 1) {
        throw std::invalid_argument("q = " + std::to_string(q) + " must be a prime with q = 1 mod " + std::to_string(n));
    }
    if (q >= (1ULL << 32U)) throw std::invalid_argument("q must be below 2^32");
}

}  // namespace

bool satisfies_h1(unsigned n, std::uint64_t q, std::uint64_t a) {
    const std::uint64_t q2 = q * q;
    const std::uint64_t target = static_cast<std::uint64_t>(n) * q;
    const std::uint64_t ar = a % q2;
    if (ar % q == 0) return false;
    if (powmod(ar, target, q2) != 1) return false;
    for (std::uint64_t p : prime_divisors(target)) {
        if (powmod(ar, target / p, q2) == 1) return false;
    }
    return true;
}

bool satisfies_h2(unsigned n, std::uint64_t a) { return a % radical(n) == 0; }

bool satisfies_h3(unsigned n, std::uint64_t a, std::uint64_t ell_bound) {
    return h3_holds(n, a, h3_primes(n, ell_bound));
}

AqCheck validate_candidate(const AqCandidate& c) {
    check_q(c.n, c.q);
    if (!satisfies_h1(c.n, c.q, c.a)) return AqCheck::h1_order;
    if (!satisfies_h2(c.n, c.a)) return AqCheck::h2_divisibility;
    if (!satisfies_h3(c.n, c.a, c.ell_bound)) return AqCheck::h3_square;
    return AqCheck::ok;
}

std::optional<AqCandidate> aq_search(unsigned n, std::uint64_t q, std::uint64_t ell_bound, std::uint64_t a_bound,
                                     unsigned threads) {
    check_q(n, q);
    if (ell_bound < q) throw std::invalid_argument("aq_search: ell_bound must be at least q");
    if (ell_bound >= (1ULL << 31U)) throw std::invalid_argument("aq_search: ell_bound too large");
    const std::vector<std::uint64_t> primes = h3_primes(n, ell_bound);
    const std::uint64_t step = radical(n);  // (H2)
    auto good = [&](std::uint64_t a) { return satisfies_h1(n, q, a) && h3_holds(n, a, primes); };

    // blocks scanned in rounds; the lowest block with a hit wins
    const std::uint64_t block = 4096 * step;
    const unsigned workers = std::max(1U, threads);
    for (std::uint64_t round_start = 0; round_start <= a_bound; round_start += block * workers) {
        std::vector<std::optional<std::uint64_t>> found(workers);
        auto work = [&](unsigned t) {
            const std::uint64_t lo = round_start + block * t;
            const std::uint64_t hi = std::min(a_bound, lo + block - 1);
            for (std::uint64_t a = lo; a <= hi && a >= lo; a += step) {
                if (good(a)) {
                    found[t] = a;
                    return;
                }
            }
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work, t);
            for (auto& th : pool) th.join();
        }
        for (const auto& f : found) {
            if (f) return AqCandidate{n, q, *f, ell_bound};
        }
    }
    return std::nullopt;
}

LemmaFactorsReport verify_lemma_factors(const AqCandidate& c, unsigned m, unsigned j) {
    if (m < 3 || m % 4 == 2 || c.n % m != 0) {
        throw std::invalid_argument("verify_lemma_factors: m must divide n with m >= 3 and m != 2 mod 4");
    }
    if (std::gcd(j, m) != 1) throw std::invalid_argument("verify_lemma_factors: j must be a unit mod m");
    const Conductor cond(m);
    LemmaFactorsReport rep{.m = m, .j = j, .element = CycInt(cond)};
    BigInt power;
    mpz_ui_pow_ui(power.get_mpz_t(), c.a, c.n / m);
    rep.element = CycInt::root_power(cond, j) - CycInt::from_integer(cond, power);
    rep.norm = norm(rep.element);
    const BigInt abs_norm = abs(rep.norm);
    if (abs_norm == 1) {
        rep.complete = true;
        rep.in_V2 = true;
        rep.note = "element is a unit";
        rep.primes_split = true;
        rep.coprime_to_m = true;
        return rep;
    }
    try {
        rep.norm_factorization = factor(abs_norm);
    } catch (const FactoringCapacityExceeded& e) {
        rep.note = e.what();
        return rep;
    }
    rep.complete = true;
    rep.in_V2 = true;
    rep.primes_split = true;
    rep.coprime_to_m = true;
    for (const auto& [ell, e] : rep.norm_factorization) {
        if (!ell.fits_ulong_p() || ell.get_ui() >= (1ULL << 63U)) {
            rep.complete = false;
            rep.note = "prime factor " + to_decimal(ell) + " exceeds the splitting capacity";
            return rep;
        }
        const std::uint64_t l = ell.get_ui();
        if (l % m != 1) rep.primes_split = false;
        if (m % l == 0) rep.coprime_to_m = false;
        else rep.not_in_W2 = true;
        if (e >= 2) {
            for (const auto& P : split_prime(l, cond)) {
                if (valuation(rep.element, P) >= 2) rep.in_V2 = false;
            }
        }
    }
    return rep;
}

namespace {

std::vector<std::vector<long>> root_power_table(unsigned n) {
    const IntPolynomial& phi = cyclotomic_polynomial(n);
    const auto d = static_cast<std::size_t>(phi.degree());
    std::vector<std::vector<long>> table(n, std::vector<long>(d, 0));
    std::vector<long> cur(d, 0);
    cur[0] = 1;
    if (d == 1) cur[0] = 1;
    for (unsigned e = 0; e < n; ++e) {
        table[e] = cur;
        // multiply by x and reduce with the monic Phi_n
        const long top = cur[d - 1];
        for (std::size_t i = d - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        for (std::size_t i = 0; i < d; ++i) cur[i] -= top * phi.coeffs()[i].get_si();
    }
    return table;
}

}  // namespace

VanishingReport vanishing_four_sums(unsigned n, const std::vector<int>& coefficient_set) {
    if (n == 0) throw std::invalid_argument("vanishing_four_sums: n must be positive");
    if (n > 240) throw std::invalid_argument("vanishing_four_sums: n above the enumeration cap of 240");
    VanishingReport rep;
    rep.n = n;
    for (int c : coefficient_set) {
        if (c != 0) rep.coefficient_set.push_back(c);
    }
    std::sort(rep.coefficient_set.begin(), rep.coefficient_set.end());
    rep.coefficient_set.erase(std::unique(rep.coefficient_set.begin(), rep.coefficient_set.end()),
                              rep.coefficient_set.end());
    const auto table = root_power_table(n);
    const std::size_t d = table.front().size();

    // terms (exponent, coefficient); term 0 sits at exponent 0, the other
    // three are a sorted multiset to avoid counting permutations
    struct Term {
        unsigned e;
        int c;
    };
    std::vector<Term> terms;
    for (unsigned e = 0; e < n; ++e) {
        for (int c : rep.coefficient_set) terms.push_back({e, c});
    }
    std::vector<long> sum(d);
    auto subset_vanishes = [&](const std::array<Term, 4>& t, unsigned mask) {
        std::fill(sum.begin(), sum.end(), 0);
        for (unsigned i = 0; i < 4; ++i) {
            if (((mask >> i) & 1U) == 0) continue;
            for (std::size_t q = 0; q < d; ++q) sum[q] += t[i].c * table[t[i].e][q];
        }
        return std::all_of(sum.begin(), sum.end(), [](long v) { return v == 0; });
    };
    for (int c0 : rep.coefficient_set) {
        for (std::size_t i1 = 0; i1 < terms.size(); ++i1) {
            for (std::size_t i2 = i1; i2 < terms.size(); ++i2) {
                for (std::size_t i3 = i2; i3 < terms.size(); ++i3) {
                    const std::array<Term, 4> t{Term{0, c0}, terms[i1], terms[i2], terms[i3]};
                    if (!subset_vanishes(t, 0xFU)) continue;
                    ++rep.relations;
                    bool proper = false;
                    for (unsigned mask = 1; mask < 0xFU && !proper; ++mask) proper = subset_vanishes(t, mask);
                    if (proper) continue;
                    VanishingSum s;
                    for (const auto& term : t) {
                        s.coefficients.push_back(term.c);
                        s.exponents.push_back(term.e);
                    }
                    unsigned g = n;
                    for (unsigned i = 1; i < 4; ++i) g = std::gcd(g, t[i].e);
                    s.ratio = n / g;
                    if (6 % s.ratio != 0) rep.violations.push_back(s);
                    rep.survivors.push_back(std::move(s));
                }
            }
        }
    }
    return rep;
}

GaloisGroupInfo galois_group(unsigned n) {
    if (n == 0) throw std::invalid_argument("galois_group: n must be positive");
    GaloisGroupInfo info;
    info.n = n;
    for (unsigned r = 0; r < std::max(n, 1U); ++r) {
        if (std::gcd(r, n) == 1) info.elements.push_back(r);
    }
    if (n == 1) info.elements = {0};
    std::map<unsigned, unsigned> position;
    for (unsigned i = 0; i < info.elements.size(); ++i) position[info.elements[i]] = i;
    info.table.assign(info.elements.size(), std::vector<unsigned>(info.elements.size()));
    for (unsigned i = 0; i < info.elements.size(); ++i) {
        for (unsigned j = 0; j < info.elements.size(); ++j) {
            const unsigned prod = static_cast<unsigned>(static_cast<unsigned long>(info.elements[i]) * info.elements[j] % n);
            info.table[i][j] = position.at(prod);
        }
    }
    if (n > 1) {
        for (const auto& [p, a] : factor_u64(n)) {
            info.crt_factors.emplace_back(p, a);
            std::uint64_t pa = 1;
            for (unsigned i = 0; i < a; ++i) pa *= p;
            info.crt_orders.push_back(euler_phi(pa));
        }
    }
    return info;
}

}  // namespace cyclofree
