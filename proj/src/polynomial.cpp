#include "cyclofree/polynomial.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace cyclofree {

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs) coeffs_.emplace_back(c);
    normalize();
}

IntPolynomial IntPolynomial::monomial(const BigInt& c, std::size_t degree) {
    std::vector<BigInt> v(degree + 1, BigInt(0));
    v[degree] = c;
    return IntPolynomial(std::move(v));
}

void IntPolynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const BigInt& IntPolynomial::leading() const {
    if (coeffs_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

BigInt IntPolynomial::content() const {
    BigInt g = 0;
    for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

BigInt IntPolynomial::evaluate(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), BigInt(0));
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    normalize();
    return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), BigInt(0));
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    normalize();
    return *this;
}

IntPolynomial& IntPolynomial::operator*=(const BigInt& c) {
    for (auto& x : coeffs_) x *= c;
    normalize();
    return *this;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            mpz_addmul(out[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
        }
    }
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::divexact(const BigInt& c) const {
    std::vector<BigInt> out = coeffs_;
    for (auto& x : out) {
        if (mpz_divisible_p(x.get_mpz_t(), c.get_mpz_t()) == 0) {
            throw std::domain_error("IntPolynomial::divexact: inexact division");
        }
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    }
    return IntPolynomial(std::move(out));
}

std::string IntPolynomial::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
        const BigInt& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        BigInt mag = abs(c);
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        if (mag != 1 || i == 0) os << mag.get_str();
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

PolyDivision divmod_monic(const IntPolynomial& dividend, const IntPolynomial& divisor) {
    if (divisor.is_zero() || divisor.leading() != 1) {
        throw std::invalid_argument("divmod_monic: divisor must be monic");
    }
    std::vector<BigInt> rem = dividend.coeffs();
    const long db = divisor.degree();
    const long da = dividend.degree();
    if (da < db) return {IntPolynomial{}, dividend};
    std::vector<BigInt> quot(static_cast<std::size_t>(da - db + 1), BigInt(0));
    const auto& dc = divisor.coeffs();
    for (long i = da; i >= db; --i) {
        const BigInt q = rem[static_cast<std::size_t>(i)];
        if (q == 0) continue;
        quot[static_cast<std::size_t>(i - db)] = q;
        for (long j = 0; j <= db; ++j) {
            mpz_submul(rem[static_cast<std::size_t>(i - db + j)].get_mpz_t(), q.get_mpz_t(),
                       dc[static_cast<std::size_t>(j)].get_mpz_t());
        }
    }
    return {IntPolynomial(std::move(quot)), IntPolynomial(std::move(rem))};
}

IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
    if (b.is_zero()) throw std::domain_error("pseudo_remainder: zero divisor");
    const long db = b.degree();
    if (a.degree() < db) return a;
    std::vector<BigInt> rem = a.coeffs();
    const BigInt& lb = b.leading();
    const auto& bc = b.coeffs();
    for (long i = a.degree(); i >= db; --i) {
        const BigInt top = rem[static_cast<std::size_t>(i)];
        for (auto& c : rem) c *= lb;
        for (long j = 0; j <= db; ++j) {
            mpz_submul(rem[static_cast<std::size_t>(i - db + j)].get_mpz_t(), top.get_mpz_t(),
                       bc[static_cast<std::size_t>(j)].get_mpz_t());
        }
    }
    return IntPolynomial(std::move(rem));
}

namespace {

BigInt pow_big(const BigInt& base, unsigned long e) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

}  // namespace

BigInt resultant(const IntPolynomial& a_in, const IntPolynomial& b_in) {
    if (a_in.is_zero() || b_in.is_zero()) return 0;
    IntPolynomial a = a_in;
    IntPolynomial b = b_in;
    if (a.degree() == 0 && b.degree() == 0) return 1;
    const BigInt ca = a.content();
    const BigInt cb = b.content();
    a = a.divexact(ca);
    b = b.divexact(cb);
    BigInt g = 1;
    BigInt h = 1;
    int sign = 1;
    const BigInt t = pow_big(ca, static_cast<unsigned long>(b.degree())) *
                     pow_big(cb, static_cast<unsigned long>(a.degree()));
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) sign = -1;
    }
    while (b.degree() > 0) {
        const long delta = a.degree() - b.degree();
        if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) sign = -sign;
        IntPolynomial r = pseudo_remainder(a, b);
        a = std::move(b);
        if (r.is_zero()) return 0;
        b = r.divexact(g * pow_big(h, static_cast<unsigned long>(delta)));
        g = a.leading();
        // h <- h^(1 - delta) g^delta, exact
        if (delta != 0) {
            BigInt num = pow_big(g, static_cast<unsigned long>(delta));
            BigInt den = pow_big(h, static_cast<unsigned long>(delta - 1));
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
    }
    // b is a nonzero constant here
    const long da = a.degree();
    BigInt num = pow_big(b.leading(), static_cast<unsigned long>(da));
    BigInt hh;
    if (da == 0) {
        hh = 1;
    } else {
        BigInt den = pow_big(h, static_cast<unsigned long>(da - 1));
        mpz_divexact(hh.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    return sign * t * hh;
}

}  // namespace cyclofree
