/* Tests for homogeneous-bundle cohomology, resolution tables, vanishing
 * windows, and the assembled cotangent cohomology. */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <random>

#include "grasscalc/bott.hpp"

using namespace grasscalc;
using namespace grasscalc::bott;
using symfunc::Weight;

namespace {

nlohmann::json load_golden(const std::string& name) {
    std::ifstream in(std::string(GRASSCALC_GOLDEN_DIR) + "/" + name);
    REQUIRE(in.good());
    return nlohmann::json::parse(in);
}

void check_table_against_golden(const KoszulTable& table, const std::string& file) {
    nlohmann::json want = load_golden(file);
    CHECK(table.euler() == Int(want["euler"].get<long long>()));
    std::map<std::pair<int, int>, Int> expected;
    for (const auto& [key, value] : want["cells"].items()) {
        auto comma = key.find(',');
        expected[{std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))}] =
            value.get<long long>();
    }
    for (const auto& [kj, cell] : table.cells) {
        CAPTURE(kj.first);
        CAPTURE(kj.second);
        REQUIRE(expected.count(kj) == 1);
        CHECK(cell.total == expected[kj]);
    }
    CHECK(table.cells.size() == expected.size());
}

}  // namespace

TEST_CASE("spec dimensions for small plane counts") {
    CHECK(fano_spec(1).n == 5);
    CHECK(fano_spec(2).n == 9);
    CHECK(fano_spec(3).n == 14);
    CHECK(fano_spec(2).dim_gr() == 21);
    CHECK(fano_spec(2).section_rank() == 10);
    CHECK(fano_spec(2).dim_x() == 11);
}

TEST_CASE("pinned cohomology values on Gr(3,10)") {
    Weight zq(7, 0);

    BottResult a = bott_cohomology(10, 3, zq, {10, 1, 1});
    CHECK_FALSE(a.vanishing);
    CHECK(a.q == 7);
    CHECK(a.dim == 55);

    CHECK(bott_cohomology(10, 3, zq, {3, 0, -3}).vanishing);
    CHECK(bott_cohomology(10, 3, zq, {2, 0, -2}).vanishing);
    CHECK(bott_cohomology(10, 3, zq, {1, 0, -1}).vanishing);

    Weight qdual(7, 0);
    qdual[6] = -1;
    BottResult b = bott_cohomology(10, 3, qdual, {1, 0, 0});
    CHECK_FALSE(b.vanishing);
    CHECK(b.q == 1);
    CHECK(b.dim == 1);

    BottResult c = bott_cohomology(10, 3, qdual, {11, 10, 10});
    CHECK_FALSE(c.vanishing);
    CHECK(c.q == 21);
    CHECK(c.dim == 99);
    CHECK(c.xi == Weight{4, 3, 3, 3, 3, 3, 3, 3, 3, 2});

    Weight qone(7, 0);
    qone[0] = 1;
    BottResult d = bott_cohomology(10, 3, qone, {0, 0, -1});
    CHECK_FALSE(d.vanishing);
    CHECK(d.q == 0);
    CHECK(d.dim == 99);
}

TEST_CASE("dominant weights give global sections only") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        Weight lam(10);
        for (int& e : lam) e = static_cast<int>(rng() % 5);
        std::sort(lam.rbegin(), lam.rend());
        Weight lq(lam.begin(), lam.begin() + 7);
        Weight le(lam.begin() + 7, lam.end());
        BottResult res = bott_cohomology(10, 3, lq, le);
        REQUIRE_FALSE(res.vanishing);
        CHECK(res.q == 0);
        CHECK(res.xi == lam);
        CHECK(res.dim == symfunc::weyl_dim(lam, 10));
    }
}

TEST_CASE("cohomology respects duality") {
    std::mt19937_64 rng(99);
    const int N = 10, k = 3, dim = 21;
    for (int trial = 0; trial < 50; ++trial) {
        Weight lq(N - k), le(k);
        for (int& e : lq) e = static_cast<int>(rng() % 9) - 4;
        for (int& e : le) e = static_cast<int>(rng() % 9) - 4;
        std::sort(lq.rbegin(), lq.rend());
        std::sort(le.rbegin(), le.rend());

        Weight dq(N - k), de(k);
        for (int i = 0; i < N - k; ++i) dq[i] = -lq[N - k - 1 - i];
        for (int i = 0; i < k; ++i) de[i] = -le[k - 1 - i] + N;

        BottResult a = bott_cohomology(N, k, lq, le);
        BottResult b = bott_cohomology(N, k, dq, de);
        CAPTURE(symfunc::weight_str(lq));
        CAPTURE(symfunc::weight_str(le));
        CHECK(a.vanishing == b.vanishing);
        if (!a.vanishing) {
            CHECK(a.q + b.q == dim);
            CHECK(a.dim == b.dim);
        }
    }
}

TEST_CASE("resolution table for the cubic bundle") {
    FanoSpec spec = fano_spec(2);
    KoszulTable table = koszul_e1_table(spec, bundle_by_name(spec, "sym3e"));
    check_table_against_golden(table, "koszul_sym3e_r2.json");

    // Representation content of the two top cells.
    const KoszulCell& corner = table.cells.at({10, 21});
    REQUIRE(corner.parts.size() == 1);
    CHECK(corner.parts.begin()->first == Weight{6, 3, 3, 3, 3, 3, 3, 3, 3, 3});
    CHECK(corner.parts.begin()->second.first == 1);
    CHECK(corner.parts.begin()->second.second == 220);
    CHECK(table.cells.at({9, 21}).total == 1);
}

TEST_CASE("resolution table for the restricted cotangent source") {
    FanoSpec spec = fano_spec(2);
    KoszulTable table = koszul_e1_table(spec, bundle_by_name(spec, "e-qdual"));
    check_table_against_golden(table, "koszul_eqdual_r2.json");
}

TEST_CASE("fibre ranks add up in every wedge degree") {
    FanoSpec spec = fano_spec(2);
    for (const char* name : {"sym3e", "e-qdual", "sym3e-dual", "edual-q"}) {
        KoszulTable table = koszul_e1_table(spec, bundle_by_name(spec, name));
        REQUIRE(table.fibre_rank.size() == 11);
        Int rank0 = table.fibre_rank[0];
        for (int k = 0; k <= 10; ++k) CHECK(table.fibre_rank[k] == binomial(10, k) * rank0);
    }
}

TEST_CASE("vanishing windows hold") {
    FanoSpec spec = fano_spec(2);

    WindowReport alpha = verify_vanishing_window(spec, "alpha");
    CHECK(alpha.bundle == "sym3e-dual");
    CHECK(alpha.violations.empty());
    CHECK(alpha.cells_checked > 20);
    CHECK(alpha.info_cells.at({1, 0}) == 1);
    CHECK(alpha.info_cells.at({1, 1}) == 0);

    WindowReport beta = verify_vanishing_window(spec, "beta");
    CHECK(beta.bundle == "edual-q");
    CHECK(beta.violations.empty());
    CHECK(beta.info_cells.at({0, 0}) == 99);

    CHECK_THROWS_AS(verify_vanishing_window(spec, "gamma"), PreconditionViolation);
}

TEST_CASE("maximal-rank assembly of the cubic bundle") {
    FanoSpec spec = fano_spec(2);
    KoszulTable table = koszul_e1_table(spec, bundle_by_name(spec, "sym3e"));
    SSReport rep = assemble_restriction(table, Policy::MaximalRank);
    REQUIRE(rep.exact);
    std::map<int, Int> want{{4, 45}, {8, 10}, {11, 219}};
    CHECK(rep.exact_values() == want);
    CHECK(rep.euler == -164);
    REQUIRE(rep.assumptions.size() == 2);
    CHECK(rep.assumptions[0].find("E1(-10,21) -> E1(-9,21)") != std::string::npos);
    CHECK(rep.assumptions[1].find("E1(-3,7) -> E1(-2,7)") != std::string::npos);

    SSReport bounds = assemble_restriction(table, Policy::ConstraintsOnly);
    CHECK_FALSE(bounds.exact);
    CHECK(bounds.ranges.at(4) == std::make_pair(Int(45), Int(55)));
    CHECK(bounds.ranges.at(5) == std::make_pair(Int(0), Int(10)));
    CHECK(bounds.ranges.at(8) == std::make_pair(Int(10), Int(10)));
    CHECK(bounds.ranges.at(11) == std::make_pair(Int(219), Int(220)));
    CHECK(bounds.ranges.at(12) == std::make_pair(Int(0), Int(1)));
    CHECK_THROWS_AS(bounds.exact_values(), AmbiguousAssembly);
}

TEST_CASE("assembly of the cotangent source is policy independent") {
    FanoSpec spec = fano_spec(2);
    KoszulTable table = koszul_e1_table(spec, bundle_by_name(spec, "e-qdual"));
    SSReport a = assemble_restriction(table, Policy::MaximalRank);
    SSReport b = assemble_restriction(table, Policy::ConstraintsOnly);
    std::map<int, Int> want{{1, 1}, {8, 10}, {11, 99}};
    REQUIRE(a.exact);
    REQUIRE(b.exact);
    CHECK(a.exact_values() == want);
    CHECK(b.exact_values() == want);
    CHECK(a.euler == -90);
    CHECK(a.assumptions.empty());
}

TEST_CASE("euler number is invariant under assembly") {
    FanoSpec spec = fano_spec(2);
    for (const char* name : {"sym3e", "e-qdual", "sym3e-dual", "edual-q"}) {
        KoszulTable table = koszul_e1_table(spec, bundle_by_name(spec, name));
        SSReport rep = assemble_restriction(table, Policy::MaximalRank);
        Int alt = 0;
        for (const auto& [deg, v] : rep.exact_values()) alt += deg % 2 == 0 ? v : -v;
        CHECK(alt == table.euler());
        SSReport rng = assemble_restriction(table, Policy::ConstraintsOnly);
        Int alo = 0, ahi = 0;
        for (const auto& [deg, range] : rng.ranges) {
            if (deg % 2 == 0) {
                alo += range.first;
                ahi += range.second;
            } else {
                alo -= range.second;
                ahi -= range.first;
            }
        }
        CHECK(alo <= table.euler());
        CHECK(table.euler() <= ahi);
    }
}

TEST_CASE("cotangent cohomology from the long exact sequence") {
    HodgeReport rep = hodge_numbers_omega(2, Policy::MaximalRank);
    std::map<int, Int> want{{1, 1}, {3, 45}, {10, 120}};
    CHECK(rep.h == want);
    CHECK(rep.euler == 74);

    bool genericity = false, fact_h10 = false, fact_iso = false;
    for (const auto& a : rep.assumptions) {
        genericity = genericity || a.find("generic") != std::string::npos;
        fact_h10 = fact_h10 || a.find("h10-zero") != std::string::npos;
        fact_iso = fact_iso || a.find("degree8-iso") != std::string::npos;
    }
    CHECK(genericity);
    CHECK(fact_h10);
    CHECK(fact_iso);
}

TEST_CASE("cotangent cohomology needs its inputs") {
    CHECK_THROWS_AS(hodge_numbers_omega(2, Policy::ConstraintsOnly), AmbiguousAssembly);
    CHECK_THROWS_AS(hodge_numbers_omega(2, Policy::MaximalRank, {"degree8-iso"}),
                    AmbiguousAssembly);
    CHECK_THROWS_AS(hodge_numbers_omega(2, Policy::MaximalRank, {"h10-zero"}), AmbiguousAssembly);
    CHECK_THROWS_AS(hodge_numbers_omega(1, Policy::MaximalRank), PreconditionViolation);
    CHECK_THROWS_AS(hodge_numbers_omega(2, Policy::MaximalRank, {"nonsense"}),
                    PreconditionViolation);
}
