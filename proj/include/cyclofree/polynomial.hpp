#pragma once

#include <string>
#include <vector>

#include "cyclofree/number_theory.hpp"

namespace cyclofree {

/// Dense univariate polynomial over Z, lowest degree first. The zero
/// polynomial has no coefficients; otherwise the leading coefficient is
/// nonzero.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs);
    IntPolynomial(std::initializer_list<long> coeffs);

    static IntPolynomial monomial(const BigInt& c, std::size_t degree);

    /// -1 for the zero polynomial.
    [[nodiscard]] long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
    [[nodiscard]] const std::vector<BigInt>& coeffs() const { return coeffs_; }
    [[nodiscard]] BigInt coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }
    [[nodiscard]] const BigInt& leading() const;
    [[nodiscard]] BigInt content() const;
    [[nodiscard]] BigInt evaluate(const BigInt& x) const;

    IntPolynomial& operator+=(const IntPolynomial& rhs);
    IntPolynomial& operator-=(const IntPolynomial& rhs);
    IntPolynomial& operator*=(const BigInt& c);

    friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
    friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(IntPolynomial a, const BigInt& c) { return a *= c; }
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }

    /// Exact division of every coefficient by c; throws if not exact.
    [[nodiscard]] IntPolynomial divexact(const BigInt& c) const;

    [[nodiscard]] std::string to_string() const;

private:
    void normalize();
    std::vector<BigInt> coeffs_;
};

struct PolyDivision {
    IntPolynomial quotient;
    IntPolynomial remainder;
};

/// Division by a monic divisor; exact over Z.
PolyDivision divmod_monic(const IntPolynomial& dividend, const IntPolynomial& divisor);

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) a = q b + r.
IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b);

/// Resultant over Z by the subresultant polynomial remainder sequence.
BigInt resultant(const IntPolynomial& a, const IntPolynomial& b);

}  // namespace cyclofree
