#include "cyclofree/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace cyclofree {

const IntPolynomial& cyclotomic_polynomial(unsigned n) {
    if (n == 0) throw std::invalid_argument("cyclotomic_polynomial: n must be positive");
    static std::mutex mutex;
    static std::map<unsigned, std::unique_ptr<IntPolynomial>> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) return *it->second;
    }
    // x^n - 1 divided by Phi_m for every proper divisor m of n
    IntPolynomial acc = IntPolynomial::monomial(1, n) - IntPolynomial{1};
    for (unsigned m = 1; m < n; ++m) {
        if (n % m != 0) continue;
        PolyDivision qr = divmod_monic(acc, cyclotomic_polynomial(m));
        if (!qr.remainder.is_zero()) throw std::logic_error("cyclotomic_polynomial: inexact division");
        acc = std::move(qr.quotient);
    }
    std::lock_guard lock(mutex);
    auto [it, inserted] = cache.emplace(n, std::make_unique<IntPolynomial>(std::move(acc)));
    (void)inserted;
    return *it->second;
}

Conductor::Conductor(unsigned n) {
    if (n <= 2 || n % 4 == 2) {
        std::ostringstream msg;
        msg << "invalid conductor " << n << ": require n > 2 and n != 2 mod 4";
        if (n % 4 == 2 && n > 2) msg << " (Q(xi_" << n << ") = Q(xi_" << n / 2 << "), use n = " << n / 2 << ")";
        if (n == 1 || n == 2) msg << " (Q(xi_" << n << ") = Q)";
        throw InvalidConductor(msg.str());
    }
    static std::mutex mutex;
    static std::map<unsigned, std::shared_ptr<const Data>> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) {
        data_ = it->second;
        return;
    }
    auto data = std::make_shared<Data>();
    data->n = n;
    data->phi = cyclotomic_polynomial(n);
    data->d = static_cast<unsigned>(data->phi.degree());
    data->powers.assign(n, std::vector<long>(data->d, 0));
    // xi^e for e < d is a basis vector; higher powers via x * prev mod Phi_n
    std::vector<long> cur(data->d, 0);
    cur[0] = 1;
    for (unsigned e = 0; e < n; ++e) {
        data->powers[e] = cur;
        const long top = cur[data->d - 1];
        for (unsigned i = data->d - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top != 0) {
            for (unsigned i = 0; i < data->d; ++i) {
                cur[i] -= top * data->phi.coeffs()[i].get_si();
            }
        }
    }
    data_ = data;
    cache.emplace(n, data_);
}

GaloisIndex::GaloisIndex(long r, unsigned n) : n_(n) {
    if (n == 0) throw std::invalid_argument("GaloisIndex: modulus must be positive");
    long red = r % static_cast<long>(n);
    if (red < 0) red += n;
    if (std::gcd(static_cast<unsigned long>(red), static_cast<unsigned long>(n)) != 1) {
        throw std::invalid_argument("GaloisIndex: r = " + std::to_string(r) + " is not a unit mod " +
                                    std::to_string(n));
    }
    r_ = static_cast<unsigned>(red);
}

GaloisIndex GaloisIndex::compose(const GaloisIndex& other) const {
    if (other.n_ != n_) throw ConductorMismatch("GaloisIndex::compose: different moduli");
    return {static_cast<long>(static_cast<unsigned long>(r_) * other.r_ % n_), n_};
}

GaloisIndex GaloisIndex::inverse() const {
    for (unsigned s = 1; s <= n_; ++s) {
        if (static_cast<unsigned long>(r_) * s % n_ == 1 % n_) return {static_cast<long>(s), n_};
    }
    throw std::logic_error("GaloisIndex::inverse: no inverse");
}

CycInt::CycInt(const Conductor& cond) : cond_(cond), coeffs_(cond.degree(), BigInt(0)) {}

CycInt::CycInt(const Conductor& cond, std::vector<BigInt> coeffs) : cond_(cond), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != cond_.degree()) {
        throw std::invalid_argument("CycInt: expected " + std::to_string(cond_.degree()) + " coefficients, got " +
                                    std::to_string(coeffs_.size()));
    }
}

CycInt::CycInt(const Conductor& cond, std::initializer_list<long> coeffs) : cond_(cond) {
    if (coeffs.size() != cond_.degree()) {
        throw std::invalid_argument("CycInt: expected " + std::to_string(cond_.degree()) + " coefficients");
    }
    for (long c : coeffs) coeffs_.emplace_back(c);
}

CycInt CycInt::from_integer(const Conductor& cond, const BigInt& value) {
    CycInt out(cond);
    out.coeffs_[0] = value;
    return out;
}

CycInt CycInt::root_power(const Conductor& cond, long e) {
    const long n = cond.n();
    long red = e % n;
    if (red < 0) red += n;
    const auto& p = cond.power_of_root(static_cast<unsigned>(red));
    return unembed(std::span<const long>(p), cond);
}

bool CycInt::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return c == 0; });
}

CycInt& CycInt::operator+=(const CycInt& rhs) {
    if (!(cond_ == rhs.cond_)) throw ConductorMismatch("CycInt: conductor mismatch in addition");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

CycInt& CycInt::operator-=(const CycInt& rhs) {
    if (!(cond_ == rhs.cond_)) throw ConductorMismatch("CycInt: conductor mismatch in subtraction");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    return *this;
}

CycInt operator-(const CycInt& a) {
    CycInt out = a;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

namespace {

// Accumulate sum_e p_e xi^e using the table of root powers.
CycInt reduce_coefficients(const std::vector<BigInt>& p, const Conductor& cond) {
    std::vector<BigInt> out(cond.degree(), BigInt(0));
    const unsigned n = cond.n();
    for (std::size_t e = 0; e < p.size(); ++e) {
        if (p[e] == 0) continue;
        const auto& pw = cond.power_of_root(static_cast<unsigned>(e % n));
        for (unsigned i = 0; i < cond.degree(); ++i) {
            if (pw[i] == 0) continue;
            if (pw[i] > 0) {
                mpz_addmul_ui(out[i].get_mpz_t(), p[e].get_mpz_t(), static_cast<unsigned long>(pw[i]));
            } else {
                mpz_submul_ui(out[i].get_mpz_t(), p[e].get_mpz_t(), static_cast<unsigned long>(-pw[i]));
            }
        }
    }
    return CycInt(cond, std::move(out));
}

}  // namespace

CycInt operator*(const CycInt& a, const CycInt& b) {
    if (!(a.cond_ == b.cond_)) throw ConductorMismatch("CycInt: conductor mismatch in multiplication");
    const std::size_t d = a.coeffs_.size();
    std::vector<BigInt> prod(2 * d - 1, BigInt(0));
    for (std::size_t i = 0; i < d; ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) {
            mpz_addmul(prod[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
        }
    }
    return reduce_coefficients(prod, a.cond_);
}

CycInt operator*(CycInt a, const BigInt& c) {
    for (auto& x : a.coeffs_) x *= c;
    return a;
}

bool operator==(const CycInt& a, const CycInt& b) {
    return a.cond_ == b.cond_ && a.coeffs_ == b.coeffs_;
}

std::string CycInt::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i != 0) os << ", ";
        os << coeffs_[i].get_str();
    }
    os << "]_" << cond_.n();
    return os.str();
}

CycInt reduce(const IntPolynomial& p, const Conductor& cond) { return reduce_coefficients(p.coeffs(), cond); }

CycInt add(const CycInt& a, const CycInt& b) { return a + b; }

CycInt mul(const CycInt& a, const CycInt& b) { return a * b; }

CycInt galois_apply(const GaloisIndex& r, const CycInt& a) {
    if (r.n() != a.n()) throw ConductorMismatch("galois_apply: index modulus differs from conductor");
    const unsigned n = a.n();
    std::vector<BigInt> spread(n, BigInt(0));
    for (unsigned i = 0; i < a.degree(); ++i) {
        spread[static_cast<std::size_t>(static_cast<unsigned long>(i) * r.r() % n)] += a.coeffs()[i];
    }
    return reduce_coefficients(spread, a.conductor());
}

BigInt norm(const CycInt& a) {
    if (a.is_zero()) return 0;
    return resultant(a.conductor().minimal_polynomial(), a.as_polynomial());
}

CycInt unit_inverse(const CycInt& u) {
    const BigInt nu = norm(u);
    if (abs(nu) != 1) throw std::invalid_argument("unit_inverse: element is not a unit: " + u.to_string());
    const unsigned n = u.n();
    CycInt acc = CycInt::from_integer(u.conductor(), nu);
    for (unsigned r = 2; r < n; ++r) {
        if (std::gcd(r, n) != 1) continue;
        acc = acc * galois_apply(GaloisIndex(r, n), u);
    }
    return acc;
}

std::vector<BigInt> embed(const CycInt& a) { return a.coeffs(); }

CycInt unembed(std::span<const BigInt> v, const Conductor& cond) {
    return CycInt(cond, std::vector<BigInt>(v.begin(), v.end()));
}

CycInt unembed(std::span<const long> v, const Conductor& cond) {
    std::vector<BigInt> c;
    c.reserve(v.size());
    for (long x : v) c.emplace_back(x);
    return CycInt(cond, std::move(c));
}

}  // namespace cyclofree
