#pragma once

// Exact arithmetic in Z[xi_n], the ring of integers of the cyclotomic
// field Q(xi_n), in the power basis 1, xi_n, ..., xi_n^(d-1), d = phi(n).

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclofree/number_theory.hpp"
#include "cyclofree/polynomial.hpp"

namespace cyclofree {

class InvalidConductor : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConductorMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Minimal polynomial of a primitive n-th root of unity, n >= 1.
/// Cached; safe to call concurrently.
const IntPolynomial& cyclotomic_polynomial(unsigned n);

/// Validated conductor n > 2, n != 2 mod 4, with its cached ring data.
class Conductor {
public:
    explicit Conductor(unsigned n);

    [[nodiscard]] unsigned n() const { return data_->n; }
    [[nodiscard]] unsigned degree() const { return data_->d; }
    [[nodiscard]] const IntPolynomial& minimal_polynomial() const { return data_->phi; }
    /// Power-basis coordinates of xi_n^e for 0 <= e < n.
    [[nodiscard]] const std::vector<long>& power_of_root(unsigned e) const { return data_->powers[e % data_->n]; }

    friend bool operator==(const Conductor& a, const Conductor& b) { return a.n() == b.n(); }

private:
    struct Data {
        unsigned n;
        unsigned d;
        IntPolynomial phi;
        std::vector<std::vector<long>> powers;
    };
    std::shared_ptr<const Data> data_;
};

class GaloisIndex {
public:
    /// Residue r mod n with gcd(r, n) = 1; throws std::invalid_argument otherwise.
    GaloisIndex(long r, unsigned n);

    [[nodiscard]] unsigned r() const { return r_; }
    [[nodiscard]] unsigned n() const { return n_; }
    [[nodiscard]] GaloisIndex compose(const GaloisIndex& other) const;
    [[nodiscard]] GaloisIndex inverse() const;

    friend bool operator==(const GaloisIndex&, const GaloisIndex&) = default;

private:
    unsigned r_;
    unsigned n_;
};

/// An element of Z[xi_n] in its unique reduced form modulo Phi_n.
class CycInt {
public:
    explicit CycInt(const Conductor& cond);
    CycInt(const Conductor& cond, std::vector<BigInt> coeffs);
    CycInt(const Conductor& cond, std::initializer_list<long> coeffs);

    static CycInt from_integer(const Conductor& cond, const BigInt& value);
    /// xi_n^e for any integer e.
    static CycInt root_power(const Conductor& cond, long e);

    [[nodiscard]] const Conductor& conductor() const { return cond_; }
    [[nodiscard]] unsigned n() const { return cond_.n(); }
    [[nodiscard]] unsigned degree() const { return cond_.degree(); }
    [[nodiscard]] const std::vector<BigInt>& coeffs() const { return coeffs_; }
    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] IntPolynomial as_polynomial() const { return IntPolynomial(coeffs_); }

    CycInt& operator+=(const CycInt& rhs);
    CycInt& operator-=(const CycInt& rhs);
    friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
    friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
    friend CycInt operator-(const CycInt& a);
    friend CycInt operator*(const CycInt& a, const CycInt& b);
    friend CycInt operator*(CycInt a, const BigInt& c);
    friend bool operator==(const CycInt& a, const CycInt& b);

    [[nodiscard]] std::string to_string() const;

private:
    Conductor cond_;
    std::vector<BigInt> coeffs_;
};

/// Canonical representative of p(xi_n), degree < phi(n).
CycInt reduce(const IntPolynomial& p, const Conductor& cond);

CycInt add(const CycInt& a, const CycInt& b);
CycInt mul(const CycInt& a, const CycInt& b);

/// sigma_r: xi_n -> xi_n^r.
CycInt galois_apply(const GaloisIndex& r, const CycInt& a);

/// Field norm N(a) = Res(Phi_n, a(x)).
BigInt norm(const CycInt& a);

/// Inverse of a unit (|N(u)| = 1) as the signed product of its other conjugates.
CycInt unit_inverse(const CycInt& u);

/// Cartesian embedding into Z^d.
std::vector<BigInt> embed(const CycInt& a);
CycInt unembed(std::span<const BigInt> v, const Conductor& cond);
CycInt unembed(std::span<const long> v, const Conductor& cond);

}  // namespace cyclofree
