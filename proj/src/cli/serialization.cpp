#include "cyclofree/serialization.hpp"

#include <stdexcept>

namespace cyclofree {

namespace {

Json big_array(const std::vector<BigInt>& v) {
    Json out = Json::array();
    for (const auto& c : v) out.push_back(to_decimal(c));
    return out;
}

Json point_array(const std::vector<LatticePoint>& pts) {
    Json out = Json::array();
    for (const auto& z : pts) out.push_back(z);
    return out;
}

BigInt big_from_json(const Json& j) {
    if (j.is_string()) return from_decimal(j.get<std::string>());
    if (j.is_number_integer()) return BigInt(static_cast<long>(j.get<std::int64_t>()));
    throw std::invalid_argument("expected an integer or a decimal string");
}

}  // namespace

Json to_json(const CycInt& x) { return Json{{"n", x.n()}, {"coeffs", big_array(x.coeffs())}}; }

CycInt cycint_from_json(const Json& j) {
    const Conductor cond(j.at("n").get<unsigned>());
    std::vector<BigInt> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(big_from_json(c));
    return {cond, std::move(coeffs)};
}

Json to_json(const PrimeIdeal& P) {
    Json g = Json::array();
    for (const auto& c : P.g_poly.coeffs()) g.push_back(c.get_ui());
    return Json{{"ell", P.ell}, {"n", P.n}, {"e", P.e}, {"f", P.f}, {"g_poly", g}};
}

Json to_json(const IdealLattice& L) {
    Json basis = Json::array();
    for (const auto& row : L.basis) basis.push_back(big_array(row));
    return Json{{"n", L.n}, {"d", L.d}, {"basis", basis}, {"index", to_decimal(L.index)}};
}

Json to_json(const Interval& iv) {
    return Json{{"lower", iv.lower.to_decimal(kIntervalDigits, MPFR_RNDD)},
                {"upper", iv.upper.to_decimal(kIntervalDigits, MPFR_RNDU)}};
}

Json to_json(const ZetaValue& z) {
    return Json{{"n", z.n},
                {"k", z.k},
                {"prime_bound", z.prime_bound},
                {"lower", z.value.lower.to_decimal(kIntervalDigits, MPFR_RNDD)},
                {"upper", z.value.upper.to_decimal(kIntervalDigits, MPFR_RNDU)},
                {"log_lower", z.log_value.lower.to_decimal(kIntervalDigits, MPFR_RNDD)},
                {"log_upper", z.log_value.upper.to_decimal(kIntervalDigits, MPFR_RNDU)},
                {"tail_log_bound", z.tail_log_bound.to_decimal(kIntervalDigits, MPFR_RNDU)},
                {"precision_bits", z.precision_bits}};
}

Json to_json(const DensityReport& r) {
    return Json{{"point_count", r.point_count},
                {"box_volume", r.box_volume},
                {"empirical_density", r.empirical_density.get_str()},
                {"reference_density", to_json(r.reference_density)},
                {"relative_gap", r.relative_gap}};
}

Json to_json(const PatchConfig& p, unsigned n, unsigned k) {
    return Json{{"n", n}, {"k", k}, {"shape", point_array(p.shape.offsets())}, {"fill", p.fill}};
}

Json to_json(const SymmetryElement& S) { return Json{{"unit", to_json(S.unit)}, {"r", S.galois.r()}}; }

Json to_json(const AqCandidate& c) {
    return Json{{"n", c.n}, {"q", c.q}, {"a", c.a}, {"ell_bound", c.ell_bound}};
}

AqCandidate aq_candidate_from_json(const Json& j) {
    return {j.at("n").get<unsigned>(), j.at("q").get<std::uint64_t>(), j.at("a").get<std::uint64_t>(),
            j.at("ell_bound").get<std::uint64_t>()};
}

Json to_json(const LemmaFactorsReport& r) {
    Json fac = Json::array();
    for (const auto& [p, e] : r.norm_factorization) fac.push_back(Json{{"prime", to_decimal(p)}, {"exponent", e}});
    return Json{{"m", r.m},
                {"j", r.j},
                {"element", to_json(r.element)},
                {"norm", to_decimal(r.norm)},
                {"norm_factorization", fac},
                {"complete", r.complete},
                {"in_V2", r.in_V2},
                {"not_in_W2", r.not_in_W2},
                {"primes_split", r.primes_split},
                {"coprime_to_m", r.coprime_to_m},
                {"passed", r.passed()},
                {"note", r.note}};
}

Json to_json(const VanishingSum& s) {
    return Json{{"coefficients", s.coefficients}, {"exponents", s.exponents}, {"ratio", s.ratio}};
}

PatchFile patch_from_json(const Json& j) {
    PatchFile out;
    out.n = j.at("n").get<unsigned>();
    out.k = j.value("k", 2U);
    if (j.contains("points")) {
        for (const auto& z : j.at("points")) out.points.push_back(z.get<LatticePoint>());
        return out;
    }
    const auto shape = j.at("shape").get<std::vector<LatticePoint>>();
    const auto fill = j.at("fill").get<std::string>();
    if (fill.size() != shape.size()) throw std::invalid_argument("patch fill length differs from shape size");
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (fill[i] == '1') out.points.push_back(shape[i]);
        else if (fill[i] != '0') throw std::invalid_argument("patch fill must consist of '0' and '1'");
    }
    return out;
}

}  // namespace cyclofree
