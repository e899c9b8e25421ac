/* End-to-end intersection-theoretic pipelines: self-map degree, fixed-locus
 * class, indeterminacy class, divisor pullback, dimension bookkeeping, and
 * the fibering-genus bound. */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grasscalc/chowring.hpp"
#include "grasscalc/common.hpp"

namespace grasscalc::pipelines {

struct VoisinDegree {
    int r = 0;
    int n = 0;
    Int raw_coefficient;  // coefficient of h^{n-r-1} in the chern/segre series
    Int degree;           // raw * 2^{r+1} / 2^{n-r-1}
};
VoisinDegree voisin_degree(int r);

struct FixedLocusClass {
    int r = 0;
    int n = 0;
    /* Coefficients on the degree-(r+1) monomials in c1..c_{r+1}, ordered by
     * descending exponent vector; zero coefficients are kept. */
    std::vector<std::pair<std::string, Int>> coeffs;
    /* Pre-pushforward fibre polynomial per such monomial, same order. */
    std::vector<std::pair<std::string, std::string>> blocks;
    std::vector<std::string> notes;
};
FixedLocusClass fixed_locus_class(int r);

struct PsiPullback {
    int r = 0;
    Int coefficient;  // the pullback of the hyperplane class is this multiple
    std::vector<std::string> steps;
};
PsiPullback psi_pullback_divisor(int r);

struct GeometryReport {
    int r = 0;
    int n = 0;
    long dim_gr = 0;
    long section_rank = 0;
    long dim_x = 0;
    Int h0_cubics;         // binomial(n+3, 3)
    Int gl_dim;            // (n+1)^2
    Int deformation_dim;   // h0_cubics - gl_dim
    Int psl_dim;           // n^2 + 2n
    int codim_ind0 = 2;
    int codim_fix = 0;     // r + 1
    std::optional<int> codim_ind1;  // r + 2, defined for r >= 2
};
GeometryReport geometry_dims(int r);

/* Codimension of the locus where a symmetric map on a rank-b bundle drops
 * to rank at most rank_bound. */
Int symmetric_degeneracy_codim(int b, int rank_bound);

struct FibgenBound {
    long n = 0;
    long closed_form = 0;  // n + ceil((-1 + sqrt(8n-7)) / 2)
    long brute_force = 0;  // smallest consistent genus by direct search
};
FibgenBound fibgen_bound(long n);

}  // namespace grasscalc::pipelines
