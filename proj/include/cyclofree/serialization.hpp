#pragma once

// JSON forms of the library types. Big integers are decimal strings;
// machine-word lattice points and small polynomial coefficients are numbers.

#include <json.hpp>

#include "cyclofree/kfree_sets.hpp"
#include "cyclofree/lattice.hpp"
#include "cyclofree/prime_ideals.hpp"
#include "cyclofree/spectral_zeta.hpp"
#include "cyclofree/symmetries.hpp"

namespace cyclofree {

using Json = nlohmann::ordered_json;

/// Significant digits for interval endpoints, rounded outward.
inline constexpr int kIntervalDigits = 30;

Json to_json(const CycInt& x);
CycInt cycint_from_json(const Json& j);

Json to_json(const PrimeIdeal& P);
Json to_json(const IdealLattice& L);
Json to_json(const Interval& iv);
Json to_json(const ZetaValue& z);
Json to_json(const DensityReport& r);
Json to_json(const PatchConfig& p, unsigned n, unsigned k);
Json to_json(const SymmetryElement& S);
Json to_json(const AqCandidate& c);
AqCandidate aq_candidate_from_json(const Json& j);
Json to_json(const LemmaFactorsReport& r);
Json to_json(const VanishingSum& s);

/// A patch file: {n, k, shape: [[...]], fill: "01..."} or {n, k, points: [[...]]}.
struct PatchFile {
    unsigned n = 0;
    unsigned k = 2;
    std::vector<LatticePoint> points;
};
PatchFile patch_from_json(const Json& j);

}  // namespace cyclofree
