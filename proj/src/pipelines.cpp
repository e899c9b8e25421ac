/* Intersection-theoretic pipelines composed from the core modules. */
#include "grasscalc/pipelines.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <tuple>

#include "grasscalc/bott.hpp"
#include "grasscalc/grassmann.hpp"

namespace grasscalc::pipelines {

using chowring::GradedClass;
using chowring::Generator;

namespace {

Int pow2(int e) { return Int(1) << e; }

std::string monomial_name(const std::vector<Generator>& gens, const std::vector<int>& exp) {
    std::string s;
    for (size_t i = 0; i < gens.size(); ++i) {
        if (exp[i] == 0) continue;
        if (!s.empty()) s += ' ';
        s += gens[i].name;
        if (exp[i] > 1) s += '^' + std::to_string(exp[i]);
    }
    return s.empty() ? "1" : s;
}

/* All exponent vectors over generators of degree 1..a with weighted total
 * equal to a, in descending lexicographic order. */
std::vector<std::vector<int>> degree_monomials(int a) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(a, 0);
    std::function<void(int, int)> rec = [&](int slot, int left) {
        if (slot == a) {
            if (left == 0) out.push_back(cur);
            return;
        }
        int w = slot + 1;
        for (int e = left / w; e >= 0; --e) {
            cur[slot] = e;
            rec(slot + 1, left - e * w);
        }
        cur[slot] = 0;
    };
    rec(0, a);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

/* Fibre polynomial in C1 and d1..db: descending C1 powers, then ascending
 * d-exponent vectors, matching the published block layout. */
std::string block_str(std::vector<std::tuple<int, std::vector<int>, Int>> terms, int b) {
    if (terms.empty()) return "0";
    std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
        if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) > std::get<0>(y);
        return std::get<1>(x) < std::get<1>(y);
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [c1e, dexp, coeff] : terms) {
        bool neg = coeff < 0;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        Int mag = neg ? Int(-coeff) : coeff;
        std::string factors;
        if (c1e > 0) {
            factors = "C1";
            if (c1e > 1) factors += '^' + std::to_string(c1e);
        }
        for (int j = 0; j < b; ++j) {
            if (dexp[j] == 0) continue;
            if (!factors.empty()) factors += ' ';
            factors += 'd' + std::to_string(j + 1);
            if (dexp[j] > 1) factors += '^' + std::to_string(dexp[j]);
        }
        if (factors.empty())
            os << mag;
        else if (mag == 1)
            os << factors;
        else
            os << mag << ' ' << factors;
    }
    return os.str();
}

}  // namespace

VoisinDegree voisin_degree(int r) {
    if (r < 0 || r > 6) throw PreconditionViolation("plane dimension out of range");
    VoisinDegree out;
    out.r = r;
    out.n = bott::fano_spec(r).n;
    const int cutoff = out.n - r - 1;

    std::vector<Generator> gens{{"h", 1}};
    GradedClass h = GradedClass::var(gens, 0, cutoff);
    chowring::FormalBundle normal =
        chowring::line_power_sum(h, {{2, (r + 1) * (r + 2) / 2}, {4, r + 1}, {6, 1}});
    chowring::FormalBundle relations = chowring::line_power_sum(h, {{2, r + 1}, {6, 1}});
    GradedClass series = normal.total_chern * chowring::segre_series(relations);

    out.raw_coefficient = rat_to_int(series.coefficient({cutoff}));
    Rat deg = Rat(out.raw_coefficient) * Rat(pow2(r + 1)) / Rat(pow2(cutoff));
    out.degree = rat_to_int(deg);
    return out;
}

FixedLocusClass fixed_locus_class(int r) {
    if (r != 1 && r != 2)
        throw PreconditionViolation("fixed-locus class is implemented for r in {1, 2}");
    FixedLocusClass out;
    out.r = r;
    out.n = bott::fano_spec(r).n;
    const int a = r + 1;           // rank carrying the c-classes
    const int b = out.n - r - 1;   // rank carrying the d-classes

    std::vector<Generator> gens;
    for (int i = 1; i <= a; ++i) gens.push_back({"c" + std::to_string(i), i});
    gens.push_back({"C1", 1});
    for (int j = 1; j <= b; ++j) gens.push_back({"d" + std::to_string(j), j});
    GradedClass shape(gens);
    {
        chowring::SubsetCutoff cut;
        cut.member.assign(gens.size(), 0);
        for (int i = 0; i < a; ++i) cut.member[i] = 1;
        cut.bound = a;
        shape.subset_cutoffs.push_back(cut);
    }
    auto var = [&](int slot) {
        GradedClass v = shape.like();
        std::vector<int> e(gens.size(), 0);
        e[slot] = 1;
        v.add_term(e, 1);
        return v;
    };

    /* First factor: the tensor euler class in c and d. */
    GradedClass e1src = chowring::euler_tensor(a, b, a);
    std::vector<int> m1(e1src.gens.size());
    for (int i = 0; i < a; ++i) m1[i] = i;
    for (int j = 0; j < b; ++j) m1[a + j] = a + 1 + j;
    GradedClass e1 = chowring::embed(e1src, m1, shape);

    /* Second factor: a line twist of the symmetric square. */
    GradedClass line = var(a) - var(0);
    std::vector<GradedClass> p2;
    for (const auto& piece : chowring::chern_of_sym(2, a)) {
        std::vector<int> m2(piece.gens.size());
        for (int i = 0; i < a; ++i) m2[i] = i;
        p2.push_back(chowring::embed(piece, m2, shape));
    }
    GradedClass e2 = chowring::euler_line_twist(line, p2);

    /* Third factor: a doubled line twist of the rank-a bundle itself. */
    std::vector<GradedClass> p3;
    p3.push_back(GradedClass::one(gens, -1));
    p3.back().subset_cutoffs = shape.subset_cutoffs;
    for (int i = 1; i <= a; ++i) p3.push_back(var(i - 1));
    GradedClass e3 = chowring::euler_line_twist(line * Rat(2), p3);

    GradedClass total = e1 * e2 * e3;

    /* Group the fibre terms over each top c-monomial. */
    std::map<std::vector<int>, std::vector<std::tuple<int, std::vector<int>, Int>>, std::greater<>>
        groups;
    for (const auto& [e, c] : total.terms) {
        int cdeg = 0;
        for (int i = 0; i < a; ++i) cdeg += (i + 1) * e[i];
        if (cdeg != a) continue;
        std::vector<int> ckey(e.begin(), e.begin() + a);
        std::vector<int> dexp(e.begin() + a + 1, e.end());
        groups[ckey].emplace_back(e[a], dexp, rat_to_int(c));
    }

    grassmann::GrassSpec gspec{r + 2, out.n + 1};
    std::vector<grassmann::SlotRole> roles;
    for (int i = 0; i < a; ++i) roles.push_back({grassmann::SlotRole::XPart, 0});
    roles.push_back({grassmann::SlotRole::SubDualChern, 1});
    for (int j = 1; j <= b; ++j) roles.push_back({grassmann::SlotRole::QuotChern, j});
    GradedClass pushed = grassmann::pushforward_to_x(total, gspec, roles);
    for (const auto& [e, c] : pushed.terms) {
        int deg = 0;
        for (int i = 0; i < a; ++i) deg += (i + 1) * e[i];
        if (deg != a) throw PreconditionViolation("pushforward is not homogeneous");
    }

    std::vector<Generator> cgens(gens.begin(), gens.begin() + a);
    for (const auto& exp : degree_monomials(a)) {
        std::string name = monomial_name(cgens, exp);
        out.coeffs.emplace_back(name, rat_to_int(pushed.coefficient(exp)));
        auto it = groups.find(exp);
        out.blocks.emplace_back(
            name, it == groups.end() ? "0" : block_str(it->second, b));
    }

    if (r == 2)
        out.notes.push_back(
            "conflicting value: -404 has been quoted for the c1^3 coefficient; the exact "
            "pushforward yields -20, with 110 and 49 on the remaining monomials");
    if (r == 1)
        out.notes.push_back(
            "convention oracle: the expected class is 21 c2 with a vanishing c1^2 coefficient");
    return out;
}

PsiPullback psi_pullback_divisor(int r) {
    if (r < 1) throw PreconditionViolation("plane dimension must be at least 1");
    PsiPullback out;
    out.r = r;

    std::vector<Generator> gens{{"h", 1}};
    GradedClass h = GradedClass::var(gens, 0, 1);
    GradedClass c1_big = h * Rat(-(r + 2));
    GradedClass c1_dual_quot = h * Rat(r + 1);
    GradedClass pulled_c1 = c1_big - c1_dual_quot * Rat(2);
    out.coefficient = rat_to_int(-pulled_c1.coefficient({1}));

    out.steps.push_back("c1 of the rank-" + std::to_string(r + 2) + " extension bundle: -" +
                        std::to_string(r + 2) + " h");
    out.steps.push_back("c1 of the dual quotient line: " + std::to_string(r + 1) + " h");
    out.steps.push_back("pulled-back c1 of the plane bundle: -(" + std::to_string(r + 2) +
                        ") - 2(" + std::to_string(r + 1) + ") = -" + std::to_string(3 * r + 4) +
                        " h");
    out.steps.push_back("hyperplane class pulls back to " + std::to_string(3 * r + 4) + " h");
    return out;
}

GeometryReport geometry_dims(int r) {
    bott::FanoSpec spec = bott::fano_spec(r);
    GeometryReport g;
    g.r = r;
    g.n = spec.n;
    g.dim_gr = spec.dim_gr();
    g.section_rank = spec.section_rank();
    g.dim_x = spec.dim_x();
    g.h0_cubics = binomial(g.n + 3, 3);
    g.gl_dim = Int(g.n + 1) * (g.n + 1);
    g.deformation_dim = g.h0_cubics - g.gl_dim;
    g.psl_dim = Int(g.n) * g.n + 2 * g.n;
    g.codim_ind0 = 2;
    g.codim_fix = r + 1;
    if (r >= 2) g.codim_ind1 = r + 2;
    if (Int(g.n - r - 1) != binomial(r + 2, 2))
        throw PreconditionViolation("quotient rank does not match the symmetric square");
    return g;
}

Int symmetric_degeneracy_codim(int b, int rank_bound) {
    if (b < 1 || rank_bound < 0 || rank_bound > b)
        throw PreconditionViolation("rank bound must lie between 0 and the bundle rank");
    return binomial(b - rank_bound + 1, 2);
}

FibgenBound fibgen_bound(long n) {
    if (n < 1) throw PreconditionViolation("fibre count must be positive");
    FibgenBound out;
    out.n = n;

    long d = 0;
    while ((2 * d + 1) * (2 * d + 1) < 8 * n - 7) ++d;
    out.closed_form = n + d;

    for (long g = n;; ++g) {
        bool ok = false;
        for (long k = 0; k <= g - n && !ok; ++k)
            ok = 2 * n - 1 - (g - k) - k * (k + 1) / 2 <= 0;
        if (ok) {
            out.brute_force = g;
            break;
        }
    }
    return out;
}

}  // namespace grasscalc::pipelines
