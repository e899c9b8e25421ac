/* Tests for the symmetric-function kernel.  The tableau product is checked
 * against the independent monomial-expansion oracle, plus frozen examples. */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "grasscalc/symfunc.hpp"

using namespace grasscalc;
using namespace grasscalc::symfunc;

namespace {

SchurVector sv(std::initializer_list<std::pair<Weight, long long>> items) {
    SchurVector v;
    for (const auto& [w, c] : items) v[w] = c;
    return v;
}

Weight random_partition(std::mt19937_64& rng, int maxlen, int maxentry) {
    std::uniform_int_distribution<int> len(0, maxlen);
    std::uniform_int_distribution<int> ent(0, maxentry);
    int l = len(rng);
    Weight w(l);
    for (int i = 0; i < l; ++i) w[i] = ent(rng);
    std::sort(w.rbegin(), w.rend());
    while (!w.empty() && w.back() == 0) w.pop_back();
    return w;
}

}  // namespace

TEST_CASE("pieri squares") {
    CHECK(lr_product({1}, {1}, 2) == sv({{{2, 0}, 1}, {{1, 1}, 1}}));
    CHECK(lr_product({1}, {1}, 1) == sv({{{2}, 1}}));
}

TEST_CASE("row times rectangle") {
    CHECK(lr_product({3, 3}, {3}, 3) ==
          sv({{{6, 3, 0}, 1}, {{5, 3, 1}, 1}, {{4, 3, 2}, 1}, {{3, 3, 3}, 1}}));
}

TEST_CASE("square of a hook has a multiplicity") {
    SchurVector got = lr_product({2, 1}, {2, 1}, 4);
    CHECK(got[{3, 2, 1, 0}] == 2);
    CHECK(got[{4, 2, 0, 0}] == 1);
    CHECK(got[{2, 2, 1, 1}] == 1);
    Int total = 0;
    for (auto& [w, c] : got) total += c;
    CHECK(total == 8);
}

TEST_CASE("full tensor square of a cubic space") {
    // Sym^3(C^3) (x) its dual: four summands, each with multiplicity one.
    SchurVector got = lr_product({3, 0, 0}, {0, 0, -3}, 3);
    CHECK(got == sv({{{3, 0, -3}, 1}, {{2, 0, -2}, 1}, {{1, 0, -1}, 1}, {{0, 0, 0}, 1}}));
}

TEST_CASE("determinant twist invariance") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        int nvars = 3;
        Weight a = padded(random_partition(rng, nvars, 4), nvars);
        Weight b = padded(random_partition(rng, nvars, 4), nvars);
        SchurVector base = lr_product_uncached(a, b, nvars);
        Weight at = a;
        for (int& e : at) e -= 2;
        SchurVector twisted = lr_product_uncached(at, b, nvars);
        SchurVector shifted;
        for (auto& [w, c] : base) {
            Weight nw = w;
            for (int& e : nw) e -= 2;
            shifted[nw] = c;
        }
        CHECK(twisted == shifted);
    }
}

TEST_CASE("tableau rule agrees with the monomial oracle") {
    std::mt19937_64 rng(20260814);
    for (int trial = 0; trial < 60; ++trial) {
        int nvars = 2 + static_cast<int>(rng() % 4);
        Weight a = random_partition(rng, nvars, 6);
        Weight b = random_partition(rng, nvars, 6);
        CAPTURE(weight_str(a));
        CAPTURE(weight_str(b));
        CAPTURE(nvars);
        CHECK(lr_product_uncached(a, b, nvars) == lr_product_oracle(a, b, nvars));
    }
}

TEST_CASE("product is commutative") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        int nvars = 2 + static_cast<int>(rng() % 3);
        Weight a = random_partition(rng, nvars, 5);
        Weight b = random_partition(rng, nvars, 5);
        CHECK(lr_product_uncached(a, b, nvars) == lr_product_uncached(b, a, nvars));
    }
}

TEST_CASE("schur expansion of elementary and homogeneous inputs") {
    MonoMap e2;
    e2[{1, 1, 0}] = 1;
    e2[{1, 0, 1}] = 1;
    e2[{0, 1, 1}] = 1;
    CHECK(schur_expand(e2, 3) == sv({{{1, 1, 0}, 1}}));

    MonoMap h3;
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; i + j <= 3; ++j) h3[{i, j, 3 - i - j}] = 1;
    CHECK(schur_expand(h3, 3) == sv({{{3, 0, 0}, 1}}));
}

TEST_CASE("schur expansion rejects asymmetric input") {
    MonoMap p;
    p[{2, 0}] = 1;
    p[{0, 1}] = 1;
    CHECK_THROWS_AS(schur_expand(p, 2), NotSymmetric);
}

TEST_CASE("monomial expansion round-trips") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 15; ++trial) {
        int nvars = 2 + static_cast<int>(rng() % 3);
        Weight lam = random_partition(rng, nvars, 5);
        SchurVector back = schur_expand(schur_monomials(lam, nvars), nvars);
        SchurVector want;
        if (static_cast<int>(lam.size()) <= nvars) want[padded(lam, nvars)] = 1;
        CHECK(back == want);
    }
}

TEST_CASE("wedge powers of the cubic forms on three variables") {
    CHECK(wedge_of_sym(2, 3, 3) == sv({{{3, 3, 0}, 1}, {{5, 1, 0}, 1}}));
    CHECK(wedge_of_sym(0, 3, 3) == sv({{{0, 0, 0}, 1}}));
    CHECK(wedge_of_sym(1, 3, 3) == sv({{{3, 0, 0}, 1}}));
    CHECK(wedge_of_sym(10, 3, 3) == sv({{{10, 10, 10}, 1}}));
    CHECK(wedge_of_sym(9, 3, 3) == sv({{{10, 10, 7}, 1}}));
    CHECK(wedge_of_sym(11, 3, 3).empty());
}

TEST_CASE("wedge of sym conserves fiber rank") {
    for (int k = 0; k <= 10; ++k) {
        Int total = 0;
        for (const auto& [w, c] : wedge_of_sym(k, 3, 3)) total += c * weyl_dim(w, 3);
        CHECK(total == binomial(10, k));
    }
}

TEST_CASE("weyl dimension formula") {
    CHECK(weyl_dim({3, 1, 1, 1, 1, 1, 1, 1, 1, 1}, 10) == 55);
    CHECK(weyl_dim({1, 0, 0, 0, 0, 0, 0, 0, 0, -1}, 10) == 99);
    CHECK(weyl_dim({3, 0, 0, 0, 0, 0, 0, 0, 0, 0}, 10) == 220);
    CHECK(weyl_dim({3, 3, 3, 3, 3, 3, 3, 3, 3, 3}, 10) == 1);
    CHECK(weyl_dim({3, 3, 0}, 3) == 10);
    CHECK(weyl_dim({5, 1, 0}, 3) == 35);
}

TEST_CASE("serialization round trip") {
    SchurVector v = sv({{{3, 0, -3}, 1}, {{2, 0, -2}, 4}});
    CHECK(schurvec_parse(schurvec_str(v)) == v);
    CHECK(schurvec_str(SchurVector{}).empty());
}

TEST_CASE("elementary reduction of power sums") {
    // Symbols: alphabet x1,x2 then generators g1,g2.
    std::vector<Symbol> syms{{"x1", 1}, {"x2", 1}, {"g1", 1}, {"g2", 2}};
    SymPoly p(syms);
    p.add_term({2, 0, 0, 0}, 1);
    p.add_term({0, 2, 0, 0}, 1);
    SymPoly got = elementary_reduce(p, 0, 2, 2);
    SymPoly want(syms);
    want.add_term({0, 0, 2, 0}, 1);
    want.add_term({0, 0, 0, 1}, -2);
    CHECK(got == want);
}

TEST_CASE("elementary reduction rejects asymmetric input") {
    std::vector<Symbol> syms{{"x1", 1}, {"x2", 1}, {"g1", 1}, {"g2", 2}};
    SymPoly p(syms);
    p.add_term({2, 0, 0, 0}, 1);
    p.add_term({0, 1, 0, 0}, 1);
    CHECK_THROWS_AS(elementary_reduce(p, 0, 2, 2), NotSymmetric);
}

TEST_CASE("elementary reduction keeps passive slots") {
    // p = t * (x1 + x2) with passive symbol t.
    std::vector<Symbol> syms{{"x1", 1}, {"x2", 1}, {"g1", 1}, {"g2", 2}, {"t", 1}};
    SymPoly p(syms);
    p.add_term({1, 0, 0, 0, 1}, 1);
    p.add_term({0, 1, 0, 0, 1}, 1);
    SymPoly got = elementary_reduce(p, 0, 2, 2);
    SymPoly want(syms);
    want.add_term({0, 0, 1, 0, 1}, 1);
    CHECK(got == want);
}
