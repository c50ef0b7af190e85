#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cyclofree/cli.hpp"
#include "cyclofree/serialization.hpp"

using namespace cyclofree;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("cyclofree_test_" + name);
}

}  // namespace

TEST_CASE("sha256") {
    CHECK(cli::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("sieve writes the full box with flags") {
    const auto r = run({"sieve", "--n", "4", "--k", "2", "--radius", "10", "--all"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "z1,z2,kfree");
    int rows = 0;
    int flagged = 0;
    while (std::getline(lines, line)) {
        ++rows;
        if (line.back() == '1') ++flagged;
    }
    CHECK(rows == 441);
    const auto manifest = Json::parse(r.err);
    CHECK(manifest["command"] == "sieve");
    CHECK(manifest["output_digest"] == "sha256:" + cli::sha256_hex(r.out));
    CHECK(manifest["density"]["point_count"] == flagged);
    CHECK(manifest["seed"] == 0);
}

TEST_CASE("sieve to files with a density side file") {
    const auto out = temp_file("pts.json");
    const auto man = temp_file("manifest.json");
    const auto r = run({"sieve", "--n", "3", "--radius", "6", "--format", "json", "--out", out.string(), "--manifest",
                        man.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream pf(out);
    const auto pts = Json::parse(pf);
    CHECK(pts["count"].get<std::size_t>() == pts["points"].size());
    std::ifstream df(out.string() + ".density.json");
    const auto dens = Json::parse(df);
    CHECK(dens["point_count"] == pts["count"]);
    std::ifstream mf(man);
    CHECK(Json::parse(mf)["parameters"]["radius"] == 6);
    std::filesystem::remove(out);
    std::filesystem::remove(out.string() + ".density.json");
    std::filesystem::remove(man);
}

TEST_CASE("invalid parameters exit with 2") {
    CHECK(run({"sieve", "--n", "2", "--radius", "3"}).code == cli::exit_invalid);
    CHECK(run({"sieve", "--n", "6", "--radius", "3"}).code == cli::exit_invalid);
    CHECK(run({"zeta", "--n", "4", "--k", "1"}).code == cli::exit_invalid);
    CHECK(run({"sieve", "--n", "4"}).code == cli::exit_invalid);
    CHECK(run({"frobnicate"}).code == cli::exit_invalid);
    CHECK(run({"admissible", "--in", "/nonexistent/patch.json"}).code == cli::exit_invalid);
    CHECK(run({"lemma", "--n", "12", "--q", "13", "--a", "5", "--m", "3"}).code == cli::exit_invalid);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("resource cap exits with 3") {
    setenv("CYCLOFREE_MAX_POINTS", "1000", 1);
    const auto r = run({"sieve", "--n", "5", "--radius", "10"});
    unsetenv("CYCLOFREE_MAX_POINTS");
    CHECK(r.code == cli::exit_resource);
    CHECK(r.err.find("resource cap") != std::string::npos);
}

TEST_CASE("zeta enclosures nest") {
    const auto coarse = Json::parse(run({"zeta", "--n", "4", "--k", "2", "--prime-bound", "10000"}).out);
    const auto fine = Json::parse(run({"zeta", "--n", "4", "--k", "2", "--prime-bound", "100000"}).out);
    const double lo_c = std::stod(coarse["lower"].get<std::string>());
    const double hi_c = std::stod(coarse["upper"].get<std::string>());
    const double lo_f = std::stod(fine["lower"].get<std::string>());
    const double hi_f = std::stod(fine["upper"].get<std::string>());
    CHECK(lo_c <= lo_f);
    CHECK(lo_f <= hi_f);
    CHECK(hi_f <= hi_c);
    const auto ent = Json::parse(run({"entropy", "--n", "4", "--k", "2"}).out);
    CHECK(std::stod(ent["upper"].get<std::string>()) < std::log(2.0));
}

TEST_CASE("admissible patches") {
    const auto empty = temp_file("empty.json");
    std::ofstream(empty) << R"({"n": 4, "k": 2, "points": []})";
    auto r = run({"admissible", "--in", empty.string()});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["admissible"] == true);
    const auto full = temp_file("full.json");
    std::ofstream(full) << R"({"n": 4, "k": 2, "shape": [[0,0],[0,1],[1,0],[1,1]], "fill": "1111"})";
    r = run({"admissible", "--in", full.string()});
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["admissible"] == false);
    CHECK(j["violated"]["ell"] == 2);
    std::filesystem::remove(empty);
    std::filesystem::remove(full);
}

TEST_CASE("symcheck, aq and vanishing report success") {
    auto r = run({"symcheck", "--n", "4", "--k", "2", "--radius", "10", "--samples", "50"});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["passed"] == true);
    r = run({"aq", "--n", "12", "--q", "13", "--ell-bound", "1000", "--a-bound", "1000"});
    CHECK(r.code == 0);
    const auto aq = Json::parse(r.out);
    CHECK(aq["found"] == true);
    r = run({"vanishing", "--n-max", "12"});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["violations"] == 0);
    r = run({"split", "--n", "4", "--ell", "5"});
    CHECK(Json::parse(r.out)["ideals"].size() == 2);
}

TEST_CASE("patches") {
    const auto r = run({"patches", "--n", "4", "--k", "2", "--radius", "20", "--shape", "2x2"});
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["anchors"] == 40 * 40);
    CHECK(j["distinct"].get<int>() <= 15);
    CHECK(run({"patches", "--n", "4", "--radius", "20", "--shape", "2y2"}).code == cli::exit_invalid);
}

TEST_CASE("serialization round trip") {
    const Conductor c12(12);
    const CycInt x(c12, {BigInt("123456789012345678901234567890"), BigInt(-4), BigInt(0), BigInt(7)});
    CHECK(cycint_from_json(to_json(x)) == x);
    const AqCandidate c{12, 13, 6, 10000};
    const auto back = aq_candidate_from_json(to_json(c));
    CHECK(back.a == 6);
    CHECK(back.ell_bound == 10000);
}
