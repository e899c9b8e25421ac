/* Dispatch-level tests: exit codes, record shapes, byte stability. */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "grasscalc/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
    json record;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    Run r;
    r.code = grasscalc::cli::dispatch(args, out, err);
    r.out = out.str();
    r.err = err.str();
    if (!r.out.empty() && r.out.front() == '{') r.record = json::parse(r.out);
    return r;
}

std::string mask_runtime(const std::string& s) {
    return std::regex_replace(s, std::regex("\"runtime_ms\": \\d+"), "\"runtime_ms\": 0");
}

}  // namespace

TEST_CASE("self-map degrees through the front end") {
    for (int r = 0; r <= 3; ++r) {
        Run res = run({"voisin-degree", "--r", std::to_string(r)});
        CAPTURE(r);
        REQUIRE(res.code == 0);
        CHECK(res.record["result"] == (1 << (2 * (r + 1))));
        CHECK(res.record["subcommand"] == "voisin-degree");
        CHECK(res.record["engine_version"] == "0.1.0");
        CHECK(res.record["inputs"]["r"] == r);
    }
}

TEST_CASE("fixed-locus records carry the class and the conflict note") {
    Run res = run({"fixed-locus-class", "--r", "2"});
    REQUIRE(res.code == 0);
    CHECK(res.record["result"]["c1^3"] == -20);
    CHECK(res.record["result"]["c1c2"] == 110);
    CHECK(res.record["result"]["c3"] == 49);
    bool flagged = false;
    for (const auto& note : res.record["notes"])
        flagged = flagged || note.get<std::string>().find("-404") != std::string::npos;
    CHECK(flagged);

    Run lines = run({"fixed-locus-class", "--r", "1"});
    REQUIRE(lines.code == 0);
    CHECK(lines.record["result"]["c1^2"] == 0);
    CHECK(lines.record["result"]["c2"] == 21);

    Run verbose = run({"--verbose", "fixed-locus-class", "--r", "2"});
    REQUIRE(verbose.code == 0);
    bool block = false;
    for (const auto& note : verbose.record["notes"])
        block = block || note.get<std::string>().find(
                             "8 C1^9 d3 d6^2 - 36 C1^8 d4 d6^2 + 56 C1^7 d5 d6^2 - "
                             "20 C1^6 d6^3") != std::string::npos;
    CHECK(block);

    Run postfix = run({"fixed-locus-class", "--r", "2", "--verbose"});
    REQUIRE(postfix.code == 0);
    CHECK(mask_runtime(postfix.out) == mask_runtime(verbose.out));
}

TEST_CASE("indeterminacy class and divisor pullback") {
    Run i1 = run({"ind0-class", "--r", "1"});
    REQUIRE(i1.code == 0);
    CHECK(i1.record["result"]["c1^2"] == 5);
    CHECK(i1.record["result"]["c2"] == -5);
    Run i2 = run({"ind0-class", "--r", "2"});
    REQUIRE(i2.code == 0);
    CHECK(i2.record["result"]["c1^2"] == 8);
    CHECK(i2.record["result"]["c2"] == -6);

    CHECK(run({"psi-pullback", "--r", "1"}).record["result"]["coefficient"] == 7);
    CHECK(run({"psi-pullback", "--r", "2"}).record["result"]["coefficient"] == 10);
}

TEST_CASE("geometry record") {
    Run res = run({"geometry", "--r", "2"});
    REQUIRE(res.code == 0);
    CHECK(res.record["result"]["n"] == 9);
    CHECK(res.record["result"]["dim_x"] == 11);
    CHECK(res.record["result"]["deformation_dim"] == 120);
    CHECK(res.record["result"]["psl_dim"] == 99);
    CHECK(res.record["result"]["codim_ind1"] == 4);
    Run lines = run({"geometry", "--r", "1"});
    CHECK(lines.record["result"]["codim_ind1"].is_null());
}

TEST_CASE("cohomology subcommands") {
    Run nonzero = run({"bott", "--N", "10", "--k", "3", "--lq", "0,0,0,0,0,0,0", "--le",
                       "10,1,1"});
    REQUIRE(nonzero.code == 0);
    CHECK(nonzero.record["result"]["vanishing"] == false);
    CHECK(nonzero.record["result"]["q"] == 7);
    CHECK(nonzero.record["result"]["dim"] == 55);

    Run zero = run({"bott", "--N", "10", "--k", "3", "--lq", "0", "--le", "3,0,-3"});
    REQUIRE(zero.code == 0);
    CHECK(zero.record["result"]["vanishing"] == true);
    CHECK(zero.record["result"]["q"].is_null());

    Run table = run({"koszul-table", "--r", "2", "--bundle", "sym3e"});
    REQUIRE(table.code == 0);
    CHECK(table.record["result"]["euler"] == -164);
    CHECK(table.record["result"]["cells"]["2,7"] == 10);
    CHECK(table.record["result"]["cells"]["3,7"] == 55);
    CHECK(table.record["result"]["cells"]["10,21"] == 220);

    Run window = run({"vanishing-window", "--r", "2", "--window", "beta"});
    REQUIRE(window.code == 0);
    CHECK(window.record["result"]["violations"].empty());
}

TEST_CASE("assembly policies and exit code 3") {
    Run maximal = run({"assemble", "--bundle", "sym3e", "--policy", "maximal-rank"});
    REQUIRE(maximal.code == 0);
    CHECK(maximal.record["result"]["values"]["4"] == 45);
    CHECK(maximal.record["result"]["values"]["8"] == 10);
    CHECK(maximal.record["result"]["values"]["11"] == 219);

    Run tangent = run({"assemble", "--bundle", "e-qdual", "--policy", "maximal-rank"});
    REQUIRE(tangent.code == 0);
    CHECK(tangent.record["result"]["values"]["1"] == 1);
    CHECK(tangent.record["result"]["values"]["8"] == 10);
    CHECK(tangent.record["result"]["values"]["11"] == 99);

    Run bounds = run({"assemble", "--bundle", "sym3e", "--policy", "constraints-only"});
    REQUIRE(bounds.code == 0);
    CHECK(bounds.record["result"]["exact"] == false);
    CHECK(bounds.record["result"]["ranges"]["4"] == json::array({45, 55}));
    CHECK(bounds.record["result"]["ranges"]["8"] == json::array({10, 10}));

    Run hodge = run({"hodge-numbers", "--r", "2"});
    REQUIRE(hodge.code == 0);
    CHECK(hodge.record["result"] == json({{"1", 1}, {"3", 45}, {"10", 120}}));
    bool genericity = false, oneforms = false;
    for (const auto& a : hodge.record["assumptions"]) {
        std::string s = a.get<std::string>();
        genericity = genericity || s.find("generic") != std::string::npos;
        oneforms = oneforms || s.find("h^{1,0}") != std::string::npos;
    }
    CHECK(genericity);
    CHECK(oneforms);

    CHECK(run({"hodge-numbers", "--policy", "constraints-only"}).code == 3);
    Run omitted = run({"hodge-numbers", "--omit-fact", "h10-zero"});
    CHECK(omitted.code == 3);
    CHECK(omitted.record["error"]["type"] == "AmbiguousAssembly");
}

TEST_CASE("jet-check through the front end") {
    Run res = run({"jet-check", "--r", "1", "--seeds", "1,2", "--exact"});
    REQUIRE(res.code == 0);
    CHECK(res.record["result"]["all_ok"] == true);
    CHECK(res.record["result"]["tangent_dim"] == 4);
    REQUIRE(res.record["result"]["seeds"].size() == 2);
    CHECK(res.record["result"]["seeds"][0]["exact_agrees"] == true);
    CHECK(run({"jet-check", "--r", "2", "--prime", "10006"}).code == 2);
}

TEST_CASE("fibering bound through the front end") {
    Run res = run({"fibgen-bound", "--n", "57"});
    REQUIRE(res.code == 0);
    CHECK(res.record["result"]["agree"] == true);
    CHECK(res.record["result"]["closed_form"] == res.record["result"]["brute_force"]);
    CHECK(run({"fibgen-bound", "--n", "2"}).record["result"]["closed_form"] == 3);
}

TEST_CASE("usage errors exit with 64") {
    Run unknown = run({"frobnicate"});
    CHECK(unknown.code == 64);
    CHECK(unknown.err.find("Usage") != std::string::npos);
    CHECK(run({}).code == 64);
    CHECK(run({"koszul-table"}).code == 64);  // missing required --bundle
    CHECK(run({"assemble", "--bundle", "sym3e", "--policy", "bogus"}).code == 64);
    CHECK(run({"vanishing-window", "--window", "gamma"}).code == 64);
    Run help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("voisin-degree") != std::string::npos);
}

TEST_CASE("engine errors exit with 2 and a typed object") {
    Run res = run({"fixed-locus-class", "--r", "3"});
    CHECK(res.code == 2);
    CHECK(res.record["error"]["type"] == "PreconditionViolation");
    CHECK(res.record["error"].contains("message"));
    CHECK(run({"bott", "--N", "10", "--k", "3", "--lq", "1,2", "--le", "0"}).code == 2);
    CHECK(run({"bott", "--N", "10", "--k", "3", "--lq", "0", "--le", "1,2,x"}).code == 2);
}

TEST_CASE("records are byte-stable and cache-independent") {
    std::vector<std::string> args{"koszul-table", "--bundle", "sym3e"};
    Run a = run(args);
    Run b = run(args);
    REQUIRE(a.code == 0);
    CHECK(mask_runtime(a.out) == mask_runtime(b.out));

    Run nocache = run({"--no-cache", "koszul-table", "--bundle", "sym3e"});
    CHECK(mask_runtime(nocache.out) == mask_runtime(a.out));

    auto dir = std::filesystem::temp_directory_path() / "grasscalc-cli-cache-test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    setenv("GRASSCALC_CACHE_DIR", dir.c_str(), 1);
    Run cold = run({"fixed-locus-class", "--r", "1"});
    Run warm = run({"fixed-locus-class", "--r", "1"});
    unsetenv("GRASSCALC_CACHE_DIR");
    CHECK(mask_runtime(cold.out) == mask_runtime(warm.out));
    CHECK(std::filesystem::exists(dir / "memo.jsonl"));
    std::filesystem::remove_all(dir);

    Run plain = run({"fixed-locus-class", "--r", "1"});
    CHECK(mask_runtime(plain.out) == mask_runtime(cold.out));
}
