#pragma once

// Validated enclosures of the Dedekind zeta value zeta_K(k) of
// K = Q(xi_n) from its prime-ideal Euler product, and of the density
// 1/zeta_K(k) and entropy log(2)/zeta_K(k) constants derived from it.

#include <cstdint>
#include <string>

#include "cyclofree/cyclotomic.hpp"
#include "cyclofree/number_theory.hpp"

#include <mpfr.h>

namespace cyclofree {

/// RAII wrapper around an mpfr_t.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t precision = 128);
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    mpfr_ptr get() { return value_; }
    [[nodiscard]] mpfr_srcptr get() const { return value_; }
    [[nodiscard]] mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
    [[nodiscard]] double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }
    /// Decimal string with `digits` significant digits, rounded in direction rnd.
    [[nodiscard]] std::string to_decimal(int digits, mpfr_rnd_t rnd) const;

private:
    mpfr_t value_;
};

/// Closed interval [lower, upper] with outward-rounded endpoints.
struct Interval {
    BigFloat lower;
    BigFloat upper;

    [[nodiscard]] double midpoint() const;
    [[nodiscard]] double width() const;
    [[nodiscard]] bool contains(const BigRational& q) const;
    [[nodiscard]] bool contains(double x) const;
    /// Every point of this interval is strictly below every point of other.
    [[nodiscard]] bool strictly_below(const Interval& other) const;
    [[nodiscard]] bool subset_of(const Interval& other) const;
};

inline constexpr std::uint64_t kExactEulerBound = 10000;
inline constexpr mpfr_prec_t kDefaultPrecision = 128;

struct ZetaValue {
    unsigned n = 0;
    unsigned k = 0;
    std::uint64_t prime_bound = 0;
    mpfr_prec_t precision_bits = kDefaultPrecision;
    Interval value;      // encloses zeta_K(k)
    Interval log_value;  // encloses log zeta_K(k)
    /// Upper bound on log of the omitted Euler factors.
    BigFloat tail_log_bound;
};

/// Partial product of (1 - N(P)^-k) over N(P) <= bound, exactly.
BigRational partial_euler_product(const Conductor& cond, unsigned k, std::uint64_t bound);

/// Enclosure of zeta_K(k) from the Euler product over N(P) <= prime_bound
/// plus a rigorous tail bound. Exact rationals up to kExactEulerBound,
/// directed-rounding MPFR beyond.
ZetaValue dedekind_zeta(const Conductor& cond, unsigned k, std::uint64_t prime_bound,
                        mpfr_prec_t precision = kDefaultPrecision);

/// Encloses 1/zeta_K(k), the density of the k-free integers.
Interval density_constant(const ZetaValue& zeta);
Interval density_constant(const Conductor& cond, unsigned k, std::uint64_t prime_bound);

/// Encloses log(2)/zeta_K(k), the topological entropy.
Interval entropy_constant(const ZetaValue& zeta);
Interval entropy_constant(const Conductor& cond, unsigned k, std::uint64_t prime_bound);

}  // namespace cyclofree
