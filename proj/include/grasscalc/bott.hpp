/* Cohomology of irreducible homogeneous bundles on Gr(k, N), first-page
 * tables of the Koszul resolution for a bundle restricted to the zero locus
 * of a section of Sym^3 E*, and assembly of the limit under explicit
 * rank policies. */
#pragma once

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "grasscalc/common.hpp"
#include "grasscalc/symfunc.hpp"

namespace grasscalc::bott {

/* Parameter space of r-planes on a cubic in P^n, with n + 1 = C(r+3, 2):
 * the ambient Grassmannian is Gr(r+1, n+1). */
struct FanoSpec {
    int r = 0;
    int n = 0;
    int k() const { return r + 1; }
    int N() const { return n + 1; }
    int qrank() const { return n - r; }
    long dim_gr() const { return static_cast<long>(k()) * qrank(); }
    long section_rank() const;  // rank of Sym^3 E*
    long dim_x() const { return dim_gr() - section_rank(); }
};

FanoSpec fano_spec(int r);

struct BottResult {
    bool vanishing = true;
    int q = -1;           // the unique nonvanishing cohomological degree
    symfunc::Weight xi;   // dominant weight of H^q as a GL(N) representation
    Int dim = 0;
};

/* lambda_q is the dominant weight on the quotient factor (length N-k),
 * lambda_e the one on the subbundle factor (length k). */
BottResult bott_cohomology(int N, int k, const symfunc::Weight& lambda_q,
                           const symfunc::Weight& lambda_e);

/* An irreducible quotient part tensored with a sum of subbundle parts. */
struct BundleFactor {
    std::string name;
    symfunc::Weight qweight;      // length n - r
    symfunc::SchurVector eparts;  // weights of length r + 1
};

/* Known names: sym3e, sym3e-dual, e-qdual, edual-q. */
BundleFactor bundle_by_name(const FanoSpec& spec, const std::string& name);

struct KoszulCell {
    Int total = 0;
    /* xi -> (multiplicity, dimension of the single representation) */
    std::map<symfunc::Weight, std::pair<Int, Int>> parts;
};

struct KoszulTable {
    FanoSpec spec;
    std::string bundle;
    std::map<std::pair<int, int>, KoszulCell> cells;  // (k, j) -> cell
    std::vector<Int> fibre_rank;                       // per wedge degree, checked
    Int euler() const;                                 // sum (-1)^{j-k} dim
};

KoszulTable koszul_e1_table(const FanoSpec& spec, const BundleFactor& bundle);

struct WindowViolation {
    int k = 0;
    int j = 0;
    Int dim = 0;
};

struct WindowReport {
    std::string bundle;
    std::string window;  // "alpha" or "beta"
    int cells_checked = 0;
    std::vector<WindowViolation> violations;
    std::map<std::pair<int, int>, Int> info_cells;  // nonforbidden spots of interest
};

WindowReport verify_vanishing_window(const FanoSpec& spec, const std::string& window);

enum class Policy { MaximalRank, ConstraintsOnly };

struct SSReport {
    Policy policy = Policy::MaximalRank;
    bool exact = false;
    std::map<int, Int> values;                  // abutment degree -> dimension
    std::map<int, std::pair<Int, Int>> ranges;  // always populated; points when exact
    Int euler = 0;                              // alternating sum over the first page
    std::vector<std::string> assumptions;
    const std::map<int, Int>& exact_values() const;  // throws AmbiguousAssembly
};

SSReport assemble_restriction(const KoszulTable& table, Policy policy);

struct ExternalFact {
    std::string key;
    std::string statement;
};

/* The two facts the cotangent computation needs beyond the tables. */
const std::vector<ExternalFact>& hodge_external_facts();

struct HodgeReport {
    std::map<int, Int> h;  // p -> h^p of the cotangent bundle, nonzero only
    std::vector<std::string> assumptions;
    Int euler = 0;
};

HodgeReport hodge_numbers_omega(int r, Policy policy,
                                const std::set<std::string>& omitted_facts = {});

}  // namespace grasscalc::bott
