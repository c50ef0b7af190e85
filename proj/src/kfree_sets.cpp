#include "cyclofree/kfree_sets.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <thread>

namespace cyclofree {

std::uint64_t default_max_points() {
    if (const char* env = std::getenv("CYCLOFREE_MAX_POINTS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != nullptr && *end == '\0' && v > 0) return v;
        throw std::invalid_argument("CYCLOFREE_MAX_POINTS is not a positive integer: " + std::string(env));
    }
    return 50000000ULL;
}

namespace {

BigInt crude_bound(const Conductor& cond, std::int64_t r) {
    BigInt base = BigInt(static_cast<unsigned long>(cond.degree())) * BigInt(static_cast<long>(r));
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), cond.degree());
    return out;
}

// Max of |sum_i m_i w^i| over the box is attained at a corner m_i = +-r.
BigInt tight_bound(const Conductor& cond, std::int64_t r) {
    const unsigned d = cond.degree();
    const unsigned n = cond.n();
    long double log_product = 0.0L;
    for (unsigned j = 1; j < n; ++j) {
        if (std::gcd(j, n) != 1) continue;
        std::vector<std::complex<long double>> w(d);
        for (unsigned i = 0; i < d; ++i) {
            const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(i * j % n) / n;
            w[i] = std::polar(1.0L, angle);
        }
        long double best = 0.0L;
        for (std::uint64_t mask = 0; mask < (1ULL << d); ++mask) {
            std::complex<long double> s = 0.0L;
            for (unsigned i = 0; i < d; ++i) s += ((mask >> i) & 1U) != 0 ? -w[i] : w[i];
            best = std::max(best, std::abs(s));
        }
        log_product += std::log(best * static_cast<long double>(r));
    }
    // generous outward margin on the floating-point product
    const long double value = std::exp(log_product) * (1.0L + 1e-9L) + 1.0L;
    BigInt out;
    mpz_set_d(out.get_mpz_t(), static_cast<double>(std::ceil(value)));
    return out;
}

struct Slab {
    std::int64_t lo;
    std::int64_t hi;
};

std::vector<Slab> slabs(std::int64_t r, unsigned threads) {
    const std::int64_t side = 2 * r + 1;
    const std::int64_t parts = std::max<std::int64_t>(1, std::min<std::int64_t>(threads, side));
    std::vector<Slab> out;
    for (std::int64_t p = 0; p < parts; ++p) {
        const std::int64_t a = -r + side * p / parts;
        const std::int64_t b = -r + side * (p + 1) / parts - 1;
        out.push_back({a, b});
    }
    return out;
}

template <typename Work>
void run_parallel(std::size_t tasks, Work work) {
    if (tasks <= 1) {
        if (tasks == 1) work(0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(tasks);
    for (std::size_t t = 0; t < tasks; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
}

std::uint64_t checked_volume(std::int64_t r, unsigned d, std::uint64_t cap) {
    std::uint64_t volume = 1;
    const auto side = static_cast<std::uint64_t>(2 * r + 1);
    for (unsigned i = 0; i < d; ++i) {
        if (volume > cap / side) {
            throw ResourceCapExceeded("box [-" + std::to_string(r) + ", " + std::to_string(r) + "]^" +
                                      std::to_string(d) + " exceeds the point cap of " + std::to_string(cap));
        }
        volume *= side;
    }
    if (volume > cap) throw ResourceCapExceeded("box exceeds the point cap of " + std::to_string(cap));
    return volume;
}

}  // namespace

BigInt box_norm_bound(const Conductor& cond, std::int64_t r, NormBoundMode mode) {
    const BigInt crude = crude_bound(cond, r);
    if (mode == NormBoundMode::crude || cond.degree() > 20) return crude;
    const BigInt tight = tight_bound(cond, r);
    return tight < crude ? tight : crude;
}

bool KFreeBox::contains(std::span<const std::int64_t> z) const {
    if (z.size() != d) return false;
    return std::all_of(z.begin(), z.end(), [this](std::int64_t c) { return c >= -r && c <= r; });
}

std::uint64_t KFreeBox::index_of(std::span<const std::int64_t> z) const {
    if (!contains(z)) throw std::out_of_range("KFreeBox: point outside the box");
    std::uint64_t idx = 0;
    for (std::int64_t c : z) idx = idx * side() + static_cast<std::uint64_t>(c + r);
    return idx;
}

LatticePoint KFreeBox::point_at(std::uint64_t index) const {
    LatticePoint z(d);
    for (std::size_t i = d; i-- > 0;) {
        z[i] = static_cast<std::int64_t>(index % side()) - r;
        index /= side();
    }
    return z;
}

std::vector<LatticePoint> KFreeBox::points() const {
    std::vector<LatticePoint> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < flags.size(); ++i) {
        if (flags[i] != 0) out.push_back(point_at(i));
    }
    return out;
}

KFreeBox sieve_box(const Conductor& cond, unsigned k, std::int64_t r, const SieveOptions& options) {
    if (k < 2) throw std::invalid_argument("sieve_box: k must be at least 2");
    if (r < 1) throw std::invalid_argument("sieve_box: radius must be at least 1");
    const unsigned d = cond.degree();
    const std::uint64_t volume = checked_volume(r, d, options.max_points);

    KFreeBox box{cond};
    box.k = k;
    box.r = r;
    box.d = d;
    box.norm_bound = box_norm_bound(cond, r, options.bound_mode);

    // any P with P^k | x satisfies N(P)^k <= |N(x)| <= bound
    BigInt threshold;
    mpz_root(threshold.get_mpz_t(), box.norm_bound.get_mpz_t(), k);
    if (options.prime_norm_cap && threshold > *options.prime_norm_cap) {
        threshold = BigInt(static_cast<unsigned long>(*options.prime_norm_cap));
    }
    if (!threshold.fits_ulong_p()) throw ResourceCapExceeded("sieve_box: prime norm threshold too large");
    box.prime_ideals_used = enumerate_prime_ideals(cond, threshold.get_ui());

    std::vector<std::vector<std::vector<std::int64_t>>> bases;
    bases.reserve(box.prime_ideals_used.size());
    for (const auto& P : box.prime_ideals_used) {
        auto small = ideal_lattice(P, k).small_basis();
        if (!small) throw ResourceCapExceeded("sieve_box: lattice entries exceed 64 bits");
        bases.push_back(std::move(*small));
    }

    box.flags.assign(volume, 1);
    box.flags[box.index_of(LatticePoint(d, 0))] = 0;

    const std::vector<Slab> parts = slabs(r, options.threads);
    const std::uint64_t side = box.side();
    run_parallel(parts.size(), [&](std::size_t t) {
        std::vector<std::int64_t> lo(d, -r);
        std::vector<std::int64_t> hi(d, r);
        lo[0] = parts[t].lo;
        hi[0] = parts[t].hi;
        for (const auto& basis : bases) {
            for_each_lattice_point_in_box(basis, lo, hi, [&](std::span<const std::int64_t> z) {
                std::uint64_t idx = 0;
                for (std::int64_t c : z) idx = idx * side + static_cast<std::uint64_t>(c + r);
                box.flags[idx] = 0;
            });
        }
    });
    box.count = static_cast<std::uint64_t>(std::count(box.flags.begin(), box.flags.end(), std::uint8_t{1}));
    return box;
}

DensityReport density_estimate(const KFreeBox& box, std::uint64_t reference_prime_bound) {
    if (box.volume() == 0) throw std::invalid_argument("density_estimate: empty box");
    DensityReport rep{.point_count = box.count,
                      .box_volume = box.volume(),
                      .empirical_density = BigRational(BigInt(static_cast<unsigned long>(box.count)),
                                                       BigInt(static_cast<unsigned long>(box.volume()))),
                      .reference_density = density_constant(box.cond, box.k, reference_prime_bound)};
    rep.empirical_density.canonicalize();
    const double mid = rep.reference_density.midpoint();
    rep.relative_gap = std::abs(rep.empirical_density.get_d() - mid) / mid;
    return rep;
}

PatchShape::PatchShape(std::vector<LatticePoint> offsets) : offsets_(std::move(offsets)) {
    if (offsets_.empty()) throw std::invalid_argument("PatchShape: shape must be nonempty");
    const std::size_t dim = offsets_.front().size();
    for (const auto& o : offsets_) {
        if (o.size() != dim) throw DimensionMismatch("PatchShape: offsets of different dimensions");
    }
    std::sort(offsets_.begin(), offsets_.end());
    if (std::adjacent_find(offsets_.begin(), offsets_.end()) != offsets_.end()) {
        throw std::invalid_argument("PatchShape: offsets must be distinct");
    }
}

PatchShape PatchShape::block(std::span<const std::int64_t> extents) {
    if (extents.empty()) throw std::invalid_argument("PatchShape::block: no extents");
    std::vector<LatticePoint> offs{LatticePoint{}};
    for (std::int64_t e : extents) {
        if (e < 1) throw std::invalid_argument("PatchShape::block: extents must be positive");
        std::vector<LatticePoint> next;
        for (const auto& o : offs) {
            for (std::int64_t v = 0; v < e; ++v) {
                LatticePoint p = o;
                p.push_back(v);
                next.push_back(std::move(p));
            }
        }
        offs = std::move(next);
    }
    return PatchShape(std::move(offs));
}

PatchCounts extract_patches(const KFreeBox& box, const PatchShape& shape, unsigned threads) {
    const unsigned d = box.d;
    if (shape.dimension() != d) throw DimensionMismatch("extract_patches: shape dimension differs from the box");
    std::vector<std::int64_t> lo(d);
    std::vector<std::int64_t> hi(d);
    for (unsigned i = 0; i < d; ++i) {
        std::int64_t omin = shape.offsets().front()[i];
        std::int64_t omax = omin;
        for (const auto& o : shape.offsets()) {
            omin = std::min(omin, o[i]);
            omax = std::max(omax, o[i]);
        }
        lo[i] = -box.r - omin;
        hi[i] = box.r - omax;
        if (lo[i] > hi[i]) throw std::invalid_argument("extract_patches: shape does not fit inside the box");
    }
    // flat index offsets relative to the anchor
    const auto side = static_cast<std::int64_t>(box.side());
    std::vector<std::int64_t> delta;
    for (const auto& o : shape.offsets()) {
        std::int64_t acc = 0;
        for (std::int64_t c : o) acc = acc * side + c;
        delta.push_back(acc);
    }

    const std::int64_t first_lo = lo[0];
    const std::int64_t first_span = hi[0] - lo[0] + 1;
    const std::size_t parts = std::max<std::size_t>(1, std::min<std::size_t>(threads, static_cast<std::size_t>(first_span)));
    std::vector<PatchCounts> partial(parts);
    run_parallel(parts, [&](std::size_t t) {
        std::vector<std::int64_t> a(lo);
        a[0] = first_lo + first_span * static_cast<std::int64_t>(t) / static_cast<std::int64_t>(parts);
        const std::int64_t a0_end = first_lo + first_span * static_cast<std::int64_t>(t + 1) / static_cast<std::int64_t>(parts);
        if (a[0] >= a0_end) return;
        std::string key(shape.size(), '0');
        PatchCounts& out = partial[t];
        while (true) {
            std::int64_t base = 0;
            for (std::int64_t c : a) base = base * side + (c + box.r);
            for (std::size_t i = 0; i < delta.size(); ++i) {
                key[i] = box.flags[static_cast<std::uint64_t>(base + delta[i])] != 0 ? '1' : '0';
            }
            ++out.counts[key];
            ++out.anchors;
            std::size_t i = d - 1;
            while (true) {
                if (i == 0) {
                    ++a[0];
                    break;
                }
                if (a[i] < hi[i]) {
                    ++a[i];
                    break;
                }
                a[i] = lo[i];
                --i;
            }
            if (a[0] >= a0_end) break;
        }
    });
    PatchCounts merged;
    for (const auto& p : partial) {
        merged.anchors += p.anchors;
        for (const auto& [key, c] : p.counts) merged.counts[key] += c;
    }
    return merged;
}

double patch_entropy_estimate(const KFreeBox& box, const PatchShape& shape, unsigned threads) {
    const PatchCounts counts = extract_patches(box, shape, threads);
    return std::log(static_cast<double>(counts.counts.size())) / static_cast<double>(shape.size());
}

AdmissibilityReport check_admissible(std::span<const LatticePoint> patch, const Conductor& cond, unsigned k) {
    if (k < 2) throw std::invalid_argument("check_admissible: k must be at least 2");
    AdmissibilityReport rep;
    if (patch.empty()) return rep;
    const unsigned d = cond.degree();
    for (const auto& z : patch) {
        if (z.size() != d) throw DimensionMismatch("check_admissible: point dimension differs from phi(n)");
    }
    // a violated prime needs N(P)^k <= |patch| cosets to be hit
    BigInt limit;
    mpz_root(limit.get_mpz_t(), BigInt(static_cast<unsigned long>(patch.size())).get_mpz_t(), k);
    for (const auto& P : enumerate_prime_ideals(cond, limit.get_ui())) {
        ++rep.primes_checked;
        const IdealLattice L = ideal_lattice(P, k);
        const auto basis = *L.small_basis();
        const std::uint64_t index = L.index.get_ui();
        std::vector<bool> seen(index, false);
        std::uint64_t distinct = 0;
        LatticePoint w(d);
        for (const auto& z : patch) {
            std::copy(z.begin(), z.end(), w.begin());
            std::uint64_t id = 0;
            for (std::size_t j = d; j-- > 0;) {
                const std::int64_t q = detail::floor_div(w[j], basis[j][j]);
                if (q != 0) {
                    for (std::size_t c = 0; c <= j; ++c) w[c] -= q * basis[j][c];
                }
            }
            for (std::size_t j = 0; j < d; ++j) id = id * static_cast<std::uint64_t>(basis[j][j]) + static_cast<std::uint64_t>(w[j]);
            if (!seen[id]) {
                seen[id] = true;
                ++distinct;
            }
        }
        if (distinct == index) {
            rep.admissible = false;
            rep.violated = P;
            return rep;
        }
    }
    return rep;
}

bool is_admissible(std::span<const LatticePoint> patch, const Conductor& cond, unsigned k) {
    return check_admissible(patch, cond, k).admissible;
}

HeredityReport hereditary_check(const KFreeBox& box, unsigned trials, std::uint64_t seed) {
    const std::vector<LatticePoint> window = box.points();
    std::mt19937_64 rng(seed);
    HeredityReport rep;
    std::vector<LatticePoint> subset;
    for (unsigned t = 0; t < trials; ++t) {
        subset.clear();
        for (const auto& z : window) {
            if ((rng() & 1U) != 0) subset.push_back(z);
        }
        ++rep.trials;
        if (!is_admissible(subset, box.cond, box.k)) ++rep.failures;
    }
    return rep;
}

}  // namespace cyclofree
