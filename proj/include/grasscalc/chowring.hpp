/* Graded polynomial classes over named generators with exact rational
 * coefficients, plus Chern/Segre series and Euler-class constructions. */
#pragma once

#include <map>
#include <string>
#include <vector>

#include "grasscalc/common.hpp"
#include "grasscalc/symfunc.hpp"

namespace grasscalc::chowring {

struct Generator {
    std::string name;
    int degree = 1;
};

/* Terms whose total exponent over the flagged slots exceeds `bound`
 * (weighted by generator degree) are discarded on insertion. */
struct SubsetCutoff {
    std::vector<char> member;
    int bound = 0;
};

class GradedClass {
  public:
    std::vector<Generator> gens;
    int total_cutoff = -1;
    std::vector<SubsetCutoff> subset_cutoffs;
    std::map<std::vector<int>, Rat> terms;

    GradedClass() = default;
    explicit GradedClass(std::vector<Generator> g, int cutoff = -1)
        : gens(std::move(g)), total_cutoff(cutoff) {}

    int term_degree(const std::vector<int>& exp) const;
    bool keep(const std::vector<int>& exp) const;
    void add_term(const std::vector<int>& exp, const Rat& c);
    Rat coefficient(const std::vector<int>& exp) const;

    GradedClass operator+(const GradedClass& o) const;
    GradedClass operator-(const GradedClass& o) const;
    GradedClass operator*(const GradedClass& o) const;
    GradedClass operator*(const Rat& s) const;
    bool operator==(const GradedClass& o) const { return terms == o.terms; }

    GradedClass pow(int e) const;
    GradedClass graded_piece(int d) const;
    /* Multiplicative inverse of a class with constant term 1; requires a
     * finite total cutoff so that the geometric series terminates. */
    GradedClass inverse() const;

    GradedClass like() const;  // empty class with the same table and cutoffs
    static GradedClass one(std::vector<Generator> g, int cutoff = -1);
    static GradedClass var(std::vector<Generator> g, int slot, int cutoff = -1);
    std::string str() const;  // deterministic human-readable form
};

/* Reinterpret a symmetric-function polynomial over this generator table.
 * slot_map[i] is the target slot of symbol i, or -1 for "must be absent". */
GradedClass from_sympoly(const symfunc::SymPoly& p, const std::vector<int>& slot_map,
                         GradedClass target_shape);

/* Re-embed src into a wider generator table; gen_map[i] gives the target
 * slot of src generator i, or -1 to require a zero exponent. */
GradedClass embed(const GradedClass& src, const std::vector<int>& gen_map,
                  GradedClass target_shape);

struct FormalBundle {
    int rank = 0;
    GradedClass total_chern;
};

FormalBundle line_bundle(const GradedClass& c1);
FormalBundle direct_sum(const FormalBundle& a, const FormalBundle& b);
FormalBundle line_power_sum(const GradedClass& h, const std::vector<std::pair<int, int>>& parts);
GradedClass chern_piece(const FormalBundle& b, int k);
GradedClass segre_series(const FormalBundle& b);

/* Chern pieces S_0..S_top of Sym^k of a bundle of the given rank, expressed
 * in generators c1..c<rank>, truncated above up_to_degree (-1 = no cut). */
std::vector<GradedClass> chern_of_sym(int k, int rank, int up_to_degree = -1);

/* Euler class of A (x) B for bundles with split Chern roots, written in the
 * Chern generators c1..c<a>, d1..d<b>; exponents of the c-alphabet are
 * truncated above c_cutoff when c_cutoff >= 0. */
GradedClass euler_tensor(int a, int b, int c_cutoff = -1);

/* Euler class of L (x) V given c1(L) and the Chern pieces S_0..S_s of V:
 * sum_i c1(L)^i S_{s-i}. */
GradedClass euler_line_twist(const GradedClass& line_c1, const std::vector<GradedClass>& pieces);

/* Degree-2 part of 1 / (c(E) c(Sym^2 E*)) for E of rank r+1, in c1, c2. */
GradedClass porteous_ind0(int r);

}  // namespace grasscalc::chowring
