#include "cyclofree/finite_field.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace cyclofree {

namespace {

void trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t addm(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    const std::uint64_t s = a + b;
    return (s >= p || s < a) ? s - p : s;
}

std::uint64_t subm(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a >= b ? a - b : a + (p - b); }

std::uint64_t invm(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

long deg(const FpPoly& a) { return static_cast<long>(a.size()) - 1; }

FpPoly sub(FpPoly a, const FpPoly& b, std::uint64_t p) {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = subm(a[i], b[i], p);
    trim(a);
    return a;
}

FpPoly add(FpPoly a, const FpPoly& b, std::uint64_t p) {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = addm(a[i], b[i], p);
    trim(a);
    return a;
}

FpPoly make_monic(FpPoly a, std::uint64_t p) {
    if (a.empty()) return a;
    const std::uint64_t inv = invm(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
    return a;
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
    if (b.empty()) throw std::domain_error("FpPoly division by zero");
    FpPoly r = a;
    if (deg(a) < deg(b)) return {FpPoly{}, r};
    FpPoly q(static_cast<std::size_t>(deg(a) - deg(b) + 1), 0);
    const std::uint64_t inv = invm(b.back(), p);
    for (long i = deg(a); i >= deg(b); --i) {
        const std::uint64_t c = mulmod(r[static_cast<std::size_t>(i)], inv, p);
        if (c == 0) continue;
        q[static_cast<std::size_t>(i - deg(b))] = c;
        for (long j = 0; j <= deg(b); ++j) {
            auto& t = r[static_cast<std::size_t>(i - deg(b) + j)];
            t = subm(t, mulmod(c, b[static_cast<std::size_t>(j)], p), p);
        }
    }
    trim(q);
    trim(r);
    return {q, r};
}

FpPoly divexact(const FpPoly& a, const FpPoly& b, std::uint64_t p) { return divmod(a, b, p).first; }

FpPoly derivative(const FpPoly& a, std::uint64_t p) {
    if (a.size() <= 1) return {};
    FpPoly d(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = mulmod(a[i], i % p, p);
    trim(d);
    return d;
}

bool is_one(const FpPoly& a) { return a.size() == 1 && a[0] == 1; }

FpPoly powmod_poly(FpPoly base, const BigInt& exp, const FpPoly& m, std::uint64_t p) {
    FpPoly result{1};
    result = fp_mod(result, m, p);
    base = fp_mod(base, m, p);
    const std::size_t bits = mpz_sizeinbase(exp.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = fp_mod(fp_mul(result, result, p), m, p);
        if (mpz_tstbit(exp.get_mpz_t(), i) != 0) result = fp_mod(fp_mul(result, base, p), m, p);
    }
    return result;
}

// f(x) = g(x^p) -> g, using c^(1/p) = c in F_p.
FpPoly pth_root(const FpPoly& f, std::uint64_t p) {
    FpPoly g;
    for (std::size_t i = 0; i < f.size(); i += p) g.push_back(f[i]);
    trim(g);
    return g;
}

void squarefree(const FpPoly& f, std::uint64_t p, unsigned mult, std::vector<FpFactor>& out) {
    if (deg(f) < 1) return;
    const FpPoly fp = derivative(f, p);
    if (fp.empty()) {
        squarefree(pth_root(f, p), p, mult * static_cast<unsigned>(p), out);
        return;
    }
    FpPoly c = make_monic(fp_gcd(f, fp, p), p);
    FpPoly w = divexact(f, c, p);
    unsigned i = 1;
    while (!is_one(w) && !w.empty() && deg(w) > 0) {
        FpPoly y = make_monic(fp_gcd(w, c, p), p);
        FpPoly fac = divexact(w, y, p);
        if (deg(fac) > 0) out.push_back({make_monic(fac, p), i * mult});
        ++i;
        w = y;
        c = divexact(c, y, p);
    }
    if (deg(c) > 0) squarefree(pth_root(c, p), p, mult * static_cast<unsigned>(p), out);
}

// Splits a squarefree monic product of irreducibles of degree d.
void equal_degree(const FpPoly& g, unsigned d, std::uint64_t p, std::mt19937_64& rng, std::vector<FpPoly>& out) {
    if (static_cast<unsigned long>(deg(g)) == d) {
        out.push_back(g);
        return;
    }
    while (true) {
        FpPoly a(static_cast<std::size_t>(deg(g)));
        for (auto& c : a) c = rng() % p;
        trim(a);
        if (deg(a) < 1) continue;
        FpPoly b;
        if (p == 2) {
            // trace map a + a^2 + ... + a^(2^(d-1)) mod g
            FpPoly t = fp_mod(a, g, p);
            FpPoly acc = t;
            for (unsigned i = 1; i < d; ++i) {
                t = fp_mod(fp_mul(t, t, p), g, p);
                acc = add(acc, t, p);
            }
            b = acc;
        } else {
            BigInt e;
            mpz_ui_pow_ui(e.get_mpz_t(), p, d);
            e = (e - 1) / 2;
            b = sub(powmod_poly(a, e, g, p), FpPoly{1}, p);
        }
        FpPoly h = make_monic(fp_gcd(g, b, p), p);
        if (deg(h) > 0 && deg(h) < deg(g)) {
            equal_degree(h, d, p, rng, out);
            equal_degree(divexact(g, h, p), d, p, rng, out);
            return;
        }
    }
}

}  // namespace

bool fp_poly_less(const FpPoly& a, const FpPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

FpPoly fp_reduce(const IntPolynomial& f, std::uint64_t p) {
    FpPoly out;
    out.reserve(f.coeffs().size());
    BigInt bp;
    mpz_import(bp.get_mpz_t(), 1, -1, sizeof(p), 0, 0, &p);
    for (const auto& c : f.coeffs()) {
        BigInt r;
        mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), bp.get_mpz_t());
        std::uint64_t v = 0;
        mpz_export(&v, nullptr, -1, sizeof(v), 0, 0, r.get_mpz_t());
        out.push_back(v);
    }
    trim(out);
    return out;
}

IntPolynomial fp_lift(const FpPoly& f) {
    std::vector<BigInt> c;
    c.reserve(f.size());
    for (std::uint64_t v : f) {
        BigInt b;
        mpz_import(b.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
        c.push_back(b);
    }
    return IntPolynomial(std::move(c));
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = addm(out[i + j], mulmod(a[i], b[j], p), p);
    }
    trim(out);
    return out;
}

FpPoly fp_mod(const FpPoly& a, const FpPoly& m, std::uint64_t p) { return divmod(a, m, p).second; }

FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
    while (!b.empty()) {
        FpPoly r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a, p);
}

std::vector<FpFactor> factor_poly_mod_p(const IntPolynomial& f, std::uint64_t p) {
    if (!is_prime_u64(p) || p >= (1ULL << 63U)) {
        throw std::invalid_argument("factor_poly_mod_p: modulus " + std::to_string(p) + " is not a supported prime");
    }
    FpPoly g = make_monic(fp_reduce(f, p), p);
    std::vector<FpFactor> sqf;
    squarefree(g, p, 1, sqf);
    std::mt19937_64 rng(0x9E3779B97F4A7C15ULL ^ p);
    std::vector<FpFactor> out;
    for (const auto& [part, mult] : sqf) {
        // distinct-degree split
        FpPoly rest = part;
        FpPoly h = fp_mod(FpPoly{0, 1}, rest, p);
        const FpPoly x{0, 1};
        for (unsigned d = 1; deg(rest) >= 2 * static_cast<long>(d); ++d) {
            h = powmod_poly(h, BigInt(static_cast<unsigned long>(p)), rest, p);
            FpPoly gd = make_monic(fp_gcd(rest, sub(h, x, p), p), p);
            if (deg(gd) > 0) {
                std::vector<FpPoly> pieces;
                equal_degree(gd, d, p, rng, pieces);
                for (auto& piece : pieces) out.push_back({std::move(piece), mult});
                rest = divexact(rest, gd, p);
                h = fp_mod(h, rest, p);
            }
        }
        if (deg(rest) > 0) out.push_back({rest, mult});
    }
    std::sort(out.begin(), out.end(), [](const FpFactor& a, const FpFactor& b) {
        if (a.factor != b.factor) return fp_poly_less(a.factor, b.factor);
        return a.multiplicity < b.multiplicity;
    });
    // merge identical factors arising from different squarefree layers
    std::vector<FpFactor> merged;
    for (auto& fac : out) {
        if (!merged.empty() && merged.back().factor == fac.factor) {
            merged.back().multiplicity += fac.multiplicity;
        } else {
            merged.push_back(std::move(fac));
        }
    }
    return merged;
}

}  // namespace cyclofree
