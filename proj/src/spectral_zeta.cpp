#include "cyclofree/spectral_zeta.hpp"

#include <algorithm>
#include <stdexcept>

#include "cyclofree/prime_ideals.hpp"

namespace cyclofree {

BigFloat::BigFloat(mpfr_prec_t precision) {
    mpfr_init2(value_, precision);
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept : BigFloat(other.precision()) { mpfr_swap(value_, other.value_); }

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

std::string BigFloat::to_decimal(int digits, mpfr_rnd_t rnd) const {
    char* buf = nullptr;
    int len = 0;
    switch (rnd) {
        case MPFR_RNDD: len = mpfr_asprintf(&buf, "%.*RDe", digits - 1, value_); break;
        case MPFR_RNDU: len = mpfr_asprintf(&buf, "%.*RUe", digits - 1, value_); break;
        default: len = mpfr_asprintf(&buf, "%.*RNe", digits - 1, value_); break;
    }
    if (len < 0 || buf == nullptr) throw std::runtime_error("BigFloat::to_decimal: formatting failed");
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

double Interval::midpoint() const {
    BigFloat mid(std::max(lower.precision(), upper.precision()) + 2);
    mpfr_add(mid.get(), lower.get(), upper.get(), MPFR_RNDN);
    mpfr_div_ui(mid.get(), mid.get(), 2, MPFR_RNDN);
    return mid.to_double();
}

double Interval::width() const {
    BigFloat w(std::max(lower.precision(), upper.precision()));
    mpfr_sub(w.get(), upper.get(), lower.get(), MPFR_RNDU);
    return w.to_double(MPFR_RNDU);
}

bool Interval::contains(const BigRational& q) const {
    return mpfr_cmp_q(lower.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(upper.get(), q.get_mpq_t()) >= 0;
}

bool Interval::contains(double x) const { return mpfr_cmp_d(lower.get(), x) <= 0 && mpfr_cmp_d(upper.get(), x) >= 0; }

bool Interval::strictly_below(const Interval& other) const { return mpfr_less_p(upper.get(), other.lower.get()) != 0; }

bool Interval::subset_of(const Interval& other) const {
    return mpfr_greaterequal_p(lower.get(), other.lower.get()) != 0 &&
           mpfr_lessequal_p(upper.get(), other.upper.get()) != 0;
}

namespace {

struct EulerFactor {
    std::uint64_t ell;
    unsigned f;  // residue degree
    unsigned g;  // number of ideals of norm ell^f
};

// One entry per rational prime whose ideals have norm <= bound.
std::vector<EulerFactor> euler_factors(const Conductor& cond, std::uint64_t bound) {
    if (bound > 4000000000ULL) throw std::invalid_argument("prime bound exceeds supported range (4e9)");
    std::vector<EulerFactor> out;
    for (std::uint32_t ell : primes_up_to(static_cast<std::uint32_t>(bound))) {
        const SplittingType t = splitting_type(ell, cond.n());
        std::uint64_t nrm = 1;
        bool within = true;
        for (unsigned i = 0; i < t.f; ++i) {
            nrm *= ell;
            if (nrm > bound) {
                within = false;
                break;
            }
        }
        if (within) out.push_back({ell, t.f, t.g});
    }
    return out;
}

void check_args(unsigned k, std::uint64_t bound) {
    if (k < 2) throw std::invalid_argument("zeta_K(k) requires k >= 2 (the Euler product diverges at k = 1)");
    if (bound < 2) throw std::invalid_argument("prime bound must be at least 2");
}

}  // namespace

BigRational partial_euler_product(const Conductor& cond, unsigned k, std::uint64_t bound) {
    check_args(k, bound);
    BigInt num = 1;
    BigInt den = 1;
    for (const auto& [ell, f, g] : euler_factors(cond, bound)) {
        BigInt pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), ell, static_cast<unsigned long>(f) * k);
        BigInt fac_num;
        BigInt fac_den;
        const BigInt pm1 = pw - 1;
        mpz_pow_ui(fac_num.get_mpz_t(), pm1.get_mpz_t(), g);
        mpz_pow_ui(fac_den.get_mpz_t(), pw.get_mpz_t(), g);
        num *= fac_num;
        den *= fac_den;
    }
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

ZetaValue dedekind_zeta(const Conductor& cond, unsigned k, std::uint64_t prime_bound, mpfr_prec_t precision) {
    check_args(k, prime_bound);
    if (precision < 128) throw std::invalid_argument("precision below 128 bits is not supported");
    const std::uint64_t exact_bound = std::min(prime_bound, kExactEulerBound);
    const BigRational exact = partial_euler_product(cond, k, exact_bound);

    // product of (1 - N(P)^-k): lower and upper bounds
    BigFloat prod_lo(precision);
    BigFloat prod_hi(precision);
    mpfr_set_q(prod_lo.get(), exact.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(prod_hi.get(), exact.get_mpq_t(), MPFR_RNDU);
    if (prime_bound > exact_bound) {
        BigFloat pw(precision);
        BigFloat fac(precision);
        for (const auto& [ell, f, g] : euler_factors(cond, prime_bound)) {
            if (ell <= exact_bound) continue;
            const unsigned long e = static_cast<unsigned long>(f) * k;
            // lower factor: 1 - 1/pw with pw rounded down
            mpfr_ui_pow_ui(pw.get(), ell, e, MPFR_RNDD);
            mpfr_ui_div(fac.get(), 1, pw.get(), MPFR_RNDU);
            mpfr_ui_sub(fac.get(), 1, fac.get(), MPFR_RNDD);
            for (unsigned i = 0; i < g; ++i) mpfr_mul(prod_lo.get(), prod_lo.get(), fac.get(), MPFR_RNDD);
            mpfr_ui_pow_ui(pw.get(), ell, e, MPFR_RNDU);
            mpfr_ui_div(fac.get(), 1, pw.get(), MPFR_RNDD);
            mpfr_ui_sub(fac.get(), 1, fac.get(), MPFR_RNDU);
            for (unsigned i = 0; i < g; ++i) mpfr_mul(prod_hi.get(), prod_hi.get(), fac.get(), MPFR_RNDU);
        }
    }

    // log of the omitted factors: at most phi(n) ideals per norm value m > B,
    // -log(1 - m^-k) <= 2 m^-k, sum_{m > B} m^-k <= B^(1-k) / (k - 1)
    ZetaValue out;
    out.n = cond.n();
    out.k = k;
    out.prime_bound = prime_bound;
    out.precision_bits = precision;
    out.tail_log_bound = BigFloat(precision);
    BigFloat tmp(precision);
    mpfr_ui_pow_ui(tmp.get(), prime_bound, k - 1, MPFR_RNDD);
    mpfr_ui_div(out.tail_log_bound.get(), 2UL * cond.degree(), tmp.get(), MPFR_RNDU);
    mpfr_div_ui(out.tail_log_bound.get(), out.tail_log_bound.get(), k - 1, MPFR_RNDU);

    out.value.lower = BigFloat(precision);
    out.value.upper = BigFloat(precision);
    out.log_value.lower = BigFloat(precision);
    out.log_value.upper = BigFloat(precision);
    mpfr_ui_div(out.value.lower.get(), 1, prod_hi.get(), MPFR_RNDD);
    mpfr_exp(tmp.get(), out.tail_log_bound.get(), MPFR_RNDU);
    mpfr_div(out.value.upper.get(), tmp.get(), prod_lo.get(), MPFR_RNDU);

    mpfr_log(tmp.get(), prod_hi.get(), MPFR_RNDU);
    mpfr_neg(out.log_value.lower.get(), tmp.get(), MPFR_RNDD);
    mpfr_log(tmp.get(), prod_lo.get(), MPFR_RNDD);
    mpfr_neg(out.log_value.upper.get(), tmp.get(), MPFR_RNDU);
    mpfr_add(out.log_value.upper.get(), out.log_value.upper.get(), out.tail_log_bound.get(), MPFR_RNDU);
    return out;
}

Interval density_constant(const ZetaValue& zeta) {
    const mpfr_prec_t prec = zeta.precision_bits;
    Interval out{BigFloat(prec), BigFloat(prec)};
    mpfr_ui_div(out.lower.get(), 1, zeta.value.upper.get(), MPFR_RNDD);
    mpfr_ui_div(out.upper.get(), 1, zeta.value.lower.get(), MPFR_RNDU);
    return out;
}

Interval density_constant(const Conductor& cond, unsigned k, std::uint64_t prime_bound) {
    return density_constant(dedekind_zeta(cond, k, prime_bound));
}

Interval entropy_constant(const ZetaValue& zeta) {
    const mpfr_prec_t prec = zeta.precision_bits;
    const Interval dens = density_constant(zeta);
    Interval out{BigFloat(prec), BigFloat(prec)};
    BigFloat log2(prec);
    mpfr_const_log2(log2.get(), MPFR_RNDD);
    mpfr_mul(out.lower.get(), log2.get(), dens.lower.get(), MPFR_RNDD);
    mpfr_const_log2(log2.get(), MPFR_RNDU);
    mpfr_mul(out.upper.get(), log2.get(), dens.upper.get(), MPFR_RNDU);
    return out;
}

Interval entropy_constant(const Conductor& cond, unsigned k, std::uint64_t prime_bound) {
    return entropy_constant(dedekind_zeta(cond, k, prime_bound));
}

}  // namespace cyclofree
