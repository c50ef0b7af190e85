#include "cyclofree/cli.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <charconv>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>

#include "cyclofree/serialization.hpp"

namespace cyclofree::cli {

std::string sha256_hex(std::string_view bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return hex.str();
}

namespace {

struct Common {
    unsigned threads = 1;
    std::uint64_t seed = 0;
    std::string out;
    std::string manifest;
};

struct Outcome {
    std::string payload;
    Json parameters = Json::object();
    Json extra = Json::object();  // merged into the manifest
    std::vector<std::pair<std::string, std::string>> side_files;
    int code = exit_success;
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void append_int(std::string& s, std::int64_t v) {
    char buf[24];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    s.append(buf, res.ptr);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open " + path + " for writing");
    f << content;
    if (!f) throw std::runtime_error("write to " + path + " failed");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot read " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

// ---- sieve

struct SieveArgs {
    unsigned n = 0;
    unsigned k = 2;
    std::int64_t radius = 0;
    std::string format = "csv";
    std::string bound = "crude";
    std::uint64_t prime_bound = kDefaultReferenceBound;
    std::string density_out;
    bool all = false;
};

Outcome cmd_sieve(const SieveArgs& a, const Common& c) {
    const Conductor cond(a.n);
    SieveOptions opts;
    opts.threads = c.threads;
    opts.bound_mode = a.bound == "tight" ? NormBoundMode::tight : NormBoundMode::crude;
    const KFreeBox box = sieve_box(cond, a.k, a.radius, opts);
    const DensityReport density = density_estimate(box, a.prime_bound);

    Outcome o;
    o.parameters = {{"n", a.n}, {"k", a.k}, {"radius", a.radius}, {"format", a.format}, {"bound", a.bound},
                    {"prime_bound", a.prime_bound}, {"all", a.all}};
    if (a.format == "csv") {
        std::string& s = o.payload;
        for (unsigned i = 0; i < box.d; ++i) s += (i ? ",z" : "z") + std::to_string(i + 1);
        s += a.all ? ",kfree\n" : "\n";
        for (std::uint64_t idx = 0; idx < box.volume(); ++idx) {
            const bool flag = box.flags[idx] != 0;
            if (!flag && !a.all) continue;
            const LatticePoint z = box.point_at(idx);
            for (unsigned i = 0; i < box.d; ++i) {
                if (i) s += ',';
                append_int(s, z[i]);
            }
            if (a.all) s += flag ? ",1" : ",0";
            s += '\n';
        }
    } else {
        Json j{{"n", a.n}, {"k", a.k}, {"radius", a.radius}, {"d", box.d}, {"count", box.count},
               {"norm_bound", to_decimal(box.norm_bound)}};
        if (a.all) {
            Json pts = Json::array();
            std::string flags;
            for (std::uint64_t idx = 0; idx < box.volume(); ++idx) {
                pts.push_back(box.point_at(idx));
                flags += box.flags[idx] ? '1' : '0';
            }
            j["points"] = std::move(pts);
            j["kfree"] = std::move(flags);
        } else {
            Json pts = Json::array();
            for (const auto& z : box.points()) pts.push_back(z);
            j["points"] = std::move(pts);
        }
        o.payload = dump(j);
    }
    const Json dj = to_json(density);
    std::string side = a.density_out;
    if (side.empty() && !c.out.empty()) side = c.out + ".density.json";
    if (side.empty()) {
        o.extra["density"] = dj;
    } else {
        o.side_files.emplace_back(side, dump(dj));
        o.extra["density_file"] = side;
    }
    return o;
}

// ---- zeta, density, entropy

struct ZetaArgs {
    unsigned n = 0;
    unsigned k = 2;
    std::uint64_t prime_bound = kDefaultReferenceBound;
    long precision = kDefaultPrecision;
};

Json zeta_parameters(const ZetaArgs& a) {
    return {{"n", a.n}, {"k", a.k}, {"prime_bound", a.prime_bound}, {"precision", a.precision}};
}

Outcome cmd_zeta(const ZetaArgs& a, const Common&) {
    const ZetaValue z = dedekind_zeta(Conductor(a.n), a.k, a.prime_bound, a.precision);
    Outcome o;
    o.parameters = zeta_parameters(a);
    o.payload = dump(to_json(z));
    return o;
}

Outcome cmd_constant(const ZetaArgs& a, bool entropy) {
    const ZetaValue z = dedekind_zeta(Conductor(a.n), a.k, a.prime_bound, a.precision);
    const Interval iv = entropy ? entropy_constant(z) : density_constant(z);
    Json j{{"n", a.n}, {"k", a.k}, {"prime_bound", a.prime_bound}, {"quantity", entropy ? "entropy" : "density"}};
    j.update(to_json(iv));
    Outcome o;
    o.parameters = zeta_parameters(a);
    o.payload = dump(j);
    return o;
}

// ---- admissible

struct AdmissibleArgs {
    std::string in;
    std::optional<unsigned> k;
};

Outcome cmd_admissible(const AdmissibleArgs& a, const Common&) {
    Json input;
    try {
        input = Json::parse(read_file(a.in));
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("patch file is not valid JSON: ") + e.what());
    }
    PatchFile patch;
    try {
        patch = patch_from_json(input);
    } catch (const Json::exception& e) {
        throw std::invalid_argument(std::string("malformed patch file: ") + e.what());
    }
    if (a.k) patch.k = *a.k;
    const Conductor cond(patch.n);
    const AdmissibilityReport rep = check_admissible(patch.points, cond, patch.k);
    Outcome o;
    o.parameters = {{"in", a.in}, {"input_digest", sha256_hex(input.dump())}, {"k", patch.k}};
    o.payload = dump({{"n", patch.n},
                      {"k", patch.k},
                      {"size", patch.points.size()},
                      {"admissible", rep.admissible},
                      {"violated", rep.violated ? to_json(*rep.violated) : Json(nullptr)},
                      {"primes_checked", rep.primes_checked}});
    return o;
}

// ---- symcheck

struct SymcheckArgs {
    unsigned n = 0;
    unsigned k = 2;
    std::int64_t radius = 10;
    std::size_t samples = 1000;
};

Outcome cmd_symcheck(const SymcheckArgs& a, const Common& c) {
    const Conductor cond(a.n);
    SieveOptions opts;
    opts.threads = c.threads;
    const KFreeBox window = sieve_box(cond, a.k, a.radius, opts);
    const auto gens = generator_elements(cond);
    bool ok = true;
    Json elements = Json::array();
    for (const auto& S : gens) {
        const ActionReport rep = verify_stabiliser_action(S, window, a.samples, c.seed, c.threads);
        const BigInt det = determinant(S.matrix);
        Json failures = Json::array();
        for (const auto& f : rep.failures) failures.push_back({{"point", f.point}, {"inverse", f.inverse}});
        ok = ok && rep.passed() && abs(det) == 1;
        elements.push_back({{"element", to_json(S)},
                            {"determinant", to_decimal(det)},
                            {"checked", rep.checked},
                            {"failures", failures}});
    }
    bool group_law = true;
    for (const auto& S : gens) {
        for (const auto& T : gens) {
            group_law = group_law && S.compose(T).matrix == matrix_multiply(S.matrix, T.matrix);
        }
        const auto id = S.compose(S.inverse());
        group_law = group_law && id.unit == CycInt::from_integer(cond, 1) && id.galois.r() == 1;
    }
    ok = ok && group_law;
    Outcome o;
    o.parameters = {{"n", a.n}, {"k", a.k}, {"radius", a.radius}, {"samples", a.samples}};
    o.payload = dump({{"n", a.n},
                      {"k", a.k},
                      {"radius", a.radius},
                      {"window_count", window.count},
                      {"seed", c.seed},
                      {"elements", elements},
                      {"group_law", group_law},
                      {"passed", ok}});
    if (!ok) o.code = exit_verification;
    return o;
}

// ---- aq, lemma

struct AqArgs {
    unsigned n = 0;
    std::uint64_t q = 0;
    std::uint64_t ell_bound = 10000;
    std::uint64_t a_bound = 1000000;
    bool verify_lemma = false;
};

Json lemma_reports(const AqCandidate& cand, bool& ok) {
    Json out = Json::array();
    for (unsigned m : admissible_divisors(cand.n)) {
        if (m < 3) continue;
        for (unsigned j = 1; j < m; ++j) {
            if (std::gcd(j, m) != 1) continue;
            const auto rep = verify_lemma_factors(cand, m, j);
            ok = ok && rep.passed();
            out.push_back(to_json(rep));
        }
    }
    return out;
}

Outcome cmd_aq(const AqArgs& a, const Common& c) {
    const auto cand = aq_search(a.n, a.q, a.ell_bound, a.a_bound, c.threads);
    Outcome o;
    o.parameters = {{"n", a.n}, {"q", a.q}, {"ell_bound", a.ell_bound}, {"a_bound", a.a_bound},
                    {"verify_lemma", a.verify_lemma}};
    Json j{{"found", cand.has_value()}, {"candidate", cand ? to_json(*cand) : Json(nullptr)}};
    if (cand && a.verify_lemma) {
        bool ok = true;
        j["lemma"] = lemma_reports(*cand, ok);
        j["lemma_passed"] = ok;
        if (!ok) o.code = exit_verification;
    }
    o.payload = dump(j);
    return o;
}

struct LemmaArgs {
    unsigned n = 0;
    std::uint64_t q = 0;
    std::uint64_t a = 0;
    std::uint64_t ell_bound = 10000;
    unsigned m = 0;
    unsigned j = 1;
};

Outcome cmd_lemma(const LemmaArgs& a, const Common&) {
    const AqCandidate cand{a.n, a.q, a.a, a.ell_bound};
    const AqCheck check = validate_candidate(cand);
    if (check != AqCheck::ok) {
        static const char* names[] = {"ok", "H1", "H2", "H3"};
        throw std::invalid_argument(std::string("candidate fails hypothesis ") + names[static_cast<int>(check)]);
    }
    const auto rep = verify_lemma_factors(cand, a.m, a.j);
    Outcome o;
    o.parameters = {{"n", a.n}, {"q", a.q}, {"a", a.a}, {"ell_bound", a.ell_bound}, {"m", a.m}, {"j", a.j}};
    o.payload = dump(to_json(rep));
    if (!rep.passed()) o.code = rep.complete ? exit_verification : exit_resource;
    return o;
}

// ---- patches

struct PatchArgs {
    unsigned n = 0;
    unsigned k = 2;
    std::int64_t radius = 10;
    std::string shape = "2x2";
};

PatchShape parse_shape(const std::string& spec, unsigned d) {
    std::vector<std::int64_t> extents;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        const std::size_t next = spec.find('x', pos);
        const std::string part = spec.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        std::int64_t v = 0;
        const auto res = std::from_chars(part.data(), part.data() + part.size(), v);
        if (res.ec != std::errc() || res.ptr != part.data() + part.size() || v < 1) {
            throw std::invalid_argument("shape must look like 2x2 with positive extents");
        }
        extents.push_back(v);
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    // missing trailing extents default to 1
    if (extents.size() > d) throw std::invalid_argument("shape has more extents than phi(n)");
    extents.resize(d, 1);
    return PatchShape::block(extents);
}

Outcome cmd_patches(const PatchArgs& a, const Common& c) {
    const Conductor cond(a.n);
    const PatchShape shape = parse_shape(a.shape, cond.degree());
    SieveOptions opts;
    opts.threads = c.threads;
    const KFreeBox box = sieve_box(cond, a.k, a.radius, opts);
    const PatchCounts pc = extract_patches(box, shape, c.threads);
    Json patterns = Json::array();
    for (const auto& [fill, count] : pc.counts) patterns.push_back({{"fill", fill}, {"count", count}});
    const double entropy = std::log(static_cast<double>(pc.counts.size())) / static_cast<double>(shape.size());
    Json offsets = Json::array();
    for (const auto& z : shape.offsets()) offsets.push_back(z);
    Outcome o;
    o.parameters = {{"n", a.n}, {"k", a.k}, {"radius", a.radius}, {"shape", a.shape}};
    o.payload = dump({{"n", a.n},
                      {"k", a.k},
                      {"radius", a.radius},
                      {"shape", offsets},
                      {"anchors", pc.anchors},
                      {"distinct", pc.counts.size()},
                      {"entropy_estimate", entropy},
                      {"patterns", patterns}});
    return o;
}

// ---- vanishing

struct VanishingArgs {
    unsigned n_min = 1;
    unsigned n_max = 60;
    std::vector<int> coefficients{-1, 1};
};

Outcome cmd_vanishing(const VanishingArgs& a, const Common&) {
    if (a.n_min < 1 || a.n_min > a.n_max) throw std::invalid_argument("need 1 <= n-min <= n-max");
    Json results = Json::array();
    std::uint64_t violations = 0;
    for (unsigned n = a.n_min; n <= a.n_max; ++n) {
        const VanishingReport rep = vanishing_four_sums(n, a.coefficients);
        std::vector<unsigned> ratios;
        for (const auto& s : rep.survivors) ratios.push_back(s.ratio);
        std::sort(ratios.begin(), ratios.end());
        ratios.erase(std::unique(ratios.begin(), ratios.end()), ratios.end());
        Json bad = Json::array();
        for (const auto& s : rep.violations) bad.push_back(to_json(s));
        violations += rep.violations.size();
        results.push_back({{"n", n},
                           {"relations", rep.relations},
                           {"survivors", rep.survivors.size()},
                           {"ratios", ratios},
                           {"violations", bad}});
    }
    Outcome o;
    o.parameters = {{"n_min", a.n_min}, {"n_max", a.n_max}, {"coefficients", a.coefficients}};
    o.payload = dump({{"coefficients", a.coefficients}, {"results", results}, {"violations", violations}});
    if (violations != 0) o.code = exit_verification;
    return o;
}

// ---- split

struct SplitArgs {
    unsigned n = 0;
    std::uint64_t ell = 0;
    unsigned power = 1;
};

Outcome cmd_split(const SplitArgs& a, const Common&) {
    const Conductor cond(a.n);
    Json ideals = Json::array();
    for (const auto& P : split_prime(a.ell, cond)) {
        Json j = to_json(P);
        j["lattice"] = to_json(ideal_lattice(P, a.power));
        ideals.push_back(std::move(j));
    }
    const SplittingType t = splitting_type(a.ell, a.n);
    Outcome o;
    o.parameters = {{"n", a.n}, {"ell", a.ell}, {"power", a.power}};
    o.payload = dump({{"n", a.n}, {"ell", a.ell}, {"e", t.e}, {"f", t.f}, {"g", t.g}, {"power", a.power},
                      {"ideals", ideals}});
    return o;
}

void add_common(CLI::App* sub, Common& c, bool threaded) {
    if (threaded) sub->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1U, 256U));
    sub->add_option("--seed", c.seed, "seed for sampled checks");
    sub->add_option("--out", c.out, "payload file (default stdout)");
    sub->add_option("--manifest", c.manifest, "run manifest file (default stderr)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact k-free integers of cyclotomic fields", "cyclofree"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Common common;
    std::function<Outcome()> action;
    std::string command;
    auto bind = [&](CLI::App* sub, auto handler) {
        sub->callback([&, sub, handler] {
            command = sub->get_name();
            action = [&, handler] { return handler(); };
        });
    };

    SieveArgs sieve;
    auto* s = app.add_subcommand("sieve", "k-free points of a centred box");
    s->add_option("--n", sieve.n, "conductor")->required();
    s->add_option("--k", sieve.k, "exponent k >= 2");
    s->add_option("--radius", sieve.radius, "box radius")->required();
    s->add_option("--format", sieve.format)->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--bound", sieve.bound, "norm bound")->check(CLI::IsMember({"crude", "tight"}));
    s->add_option("--prime-bound", sieve.prime_bound, "Euler product bound for the reference density");
    s->add_option("--density-out", sieve.density_out, "density report file");
    s->add_flag("--all", sieve.all, "every box point with a kfree column");
    add_common(s, common, true);
    bind(s, [&] { return cmd_sieve(sieve, common); });

    ZetaArgs zeta;
    for (const char* name : {"zeta", "density", "entropy"}) {
        auto* z = app.add_subcommand(name, std::string(name) == "zeta" ? "enclosure of zeta_K(k)"
                                           : std::string(name) == "density" ? "enclosure of 1/zeta_K(k)"
                                                                            : "enclosure of log(2)/zeta_K(k)");
        z->add_option("--n", zeta.n, "conductor")->required();
        z->add_option("--k", zeta.k, "exponent k >= 2");
        z->add_option("--prime-bound", zeta.prime_bound, "Euler product prime bound");
        z->add_option("--precision", zeta.precision, "MPFR precision in bits");
        add_common(z, common, false);
        const std::string which = name;
        bind(z, [&, which] {
            if (which == "zeta") return cmd_zeta(zeta, common);
            return cmd_constant(zeta, which == "entropy");
        });
    }

    AdmissibleArgs adm;
    auto* ad = app.add_subcommand("admissible", "does a patch miss a coset of every Gamma_{P^k}");
    ad->add_option("--in", adm.in, "patch JSON")->required();
    ad->add_option("--k", adm.k, "override the patch's k");
    add_common(ad, common, false);
    bind(ad, [&] { return cmd_admissible(adm, common); });

    SymcheckArgs sym;
    auto* sc = app.add_subcommand("symcheck", "verify the generator symmetries on a sieved window");
    sc->add_option("--n", sym.n, "conductor")->required();
    sc->add_option("--k", sym.k, "exponent k >= 2");
    sc->add_option("--radius", sym.radius, "window radius");
    sc->add_option("--samples", sym.samples, "points sampled per element");
    add_common(sc, common, true);
    bind(sc, [&] { return cmd_symcheck(sym, common); });

    AqArgs aq;
    auto* aqc = app.add_subcommand("aq", "least a satisfying (H1)-(H3)");
    aqc->add_option("--n", aq.n, "conductor")->required();
    aqc->add_option("--q", aq.q, "prime q = 1 mod n")->required();
    aqc->add_option("--ell-bound", aq.ell_bound, "(H3) checked for primes up to this bound");
    aqc->add_option("--a-bound", aq.a_bound, "search a in [0, a-bound]");
    aqc->add_flag("--verify-lemma", aq.verify_lemma, "check the factor lemma for every (m, j)");
    add_common(aqc, common, true);
    bind(aqc, [&] { return cmd_aq(aq, common); });

    LemmaArgs lem;
    auto* lc = app.add_subcommand("lemma", "factor lemma for xi_m^j - a^(n/m)");
    lc->add_option("--n", lem.n, "conductor")->required();
    lc->add_option("--q", lem.q, "prime q")->required();
    lc->add_option("--a", lem.a, "candidate a")->required();
    lc->add_option("--ell-bound", lem.ell_bound, "(H3) bound used to validate a");
    lc->add_option("--m", lem.m, "divisor m of n")->required();
    lc->add_option("--j", lem.j, "unit j mod m");
    add_common(lc, common, false);
    bind(lc, [&] { return cmd_lemma(lem, common); });

    PatchArgs patch;
    auto* pc = app.add_subcommand("patches", "patch statistics of a sieved window");
    pc->add_option("--n", patch.n, "conductor")->required();
    pc->add_option("--k", patch.k, "exponent k >= 2");
    pc->add_option("--radius", patch.radius, "window radius");
    pc->add_option("--shape", patch.shape, "block extents, e.g. 2x2");
    add_common(pc, common, true);
    bind(pc, [&] { return cmd_patches(patch, common); });

    VanishingArgs van;
    auto* vc = app.add_subcommand("vanishing", "four-term vanishing sums of roots of unity");
    vc->add_option("--n-min", van.n_min, "smallest order");
    vc->add_option("--n-max", van.n_max, "largest order");
    vc->add_option("--coefficients", van.coefficients, "coefficient set")->delimiter(',');
    add_common(vc, common, false);
    bind(vc, [&] { return cmd_vanishing(van, common); });

    SplitArgs split;
    auto* sp = app.add_subcommand("split", "prime ideals above ell");
    sp->add_option("--n", split.n, "conductor")->required();
    sp->add_option("--ell", split.ell, "rational prime")->required();
    sp->add_option("--power", split.power, "lattice of P^power")->check(CLI::Range(1U, 16U));
    add_common(sp, common, false);
    bind(sp, [&] { return cmd_split(split, common); });

    std::vector<const char*> argv{"cyclofree"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_success : exit_invalid;
    }

    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        outcome = action();
    } catch (const ResourceCapExceeded& e) {
        err << "error: resource cap: " << e.what() << "\n";
        return exit_resource;
    } catch (const FactoringCapacityExceeded& e) {
        err << "error: factoring capacity: " << e.what() << "\n";
        return exit_resource;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_invalid;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    try {
        if (common.out.empty()) {
            out << outcome.payload;
            out.flush();
        } else {
            write_file(common.out, outcome.payload);
        }
        for (const auto& [path, content] : outcome.side_files) write_file(path, content);
        Json manifest{{"command", command},
                      {"parameters", outcome.parameters},
                      {"seed", common.seed},
                      {"threads", common.threads},
                      {"version", kVersion},
                      {"wall_time_seconds", wall},
                      {"output_digest", "sha256:" + sha256_hex(outcome.payload)},
                      {"exit_code", outcome.code}};
        for (const auto& [key, value] : outcome.extra.items()) manifest[key] = value;
        if (common.manifest.empty()) {
            err << manifest.dump() << "\n";
        } else {
            write_file(common.manifest, dump(manifest));
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_invalid;
    }
    if (outcome.code == exit_verification) err << "verification failed\n";
    return outcome.code;
}

}  // namespace cyclofree::cli
