/* Symmetric-function kernel: GL weights, Littlewood-Richardson products,
 * Schur expansion of symmetric polynomials, wedge powers of symmetric powers,
 * the Weyl dimension formula, and reduction to elementary symmetric generators. */
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grasscalc/common.hpp"

namespace grasscalc::symfunc {

/* A GL(n) weight: integer entries, weakly decreasing, fixed length n. */
using Weight = std::vector<int>;

/* Formal Z-linear combination of weights, keyed lexicographically descending. */
using SchurVector = std::map<Weight, Int, std::greater<Weight>>;

/* Monomial polynomial with exact integer coefficients, lex-descending keys. */
using MonoMap = std::map<std::vector<int>, Int, std::greater<std::vector<int>>>;

bool is_dominant(const Weight& w);
Weight padded(Weight w, int n);
int weight_sum(const Weight& w);

std::string weight_str(const Weight& w);
std::string schurvec_str(const SchurVector& v);
SchurVector schurvec_parse(const std::string& s);

/* Littlewood-Richardson product of two dominant weights in GL(nvars).
 * Negative entries are handled by determinant shifts; output weights have
 * length nvars. The cached variant consults the process memo and the
 * persistent cache directory when one is configured. */
SchurVector lr_product(const Weight& a, const Weight& b, int nvars);
SchurVector lr_product_uncached(const Weight& a, const Weight& b, int nvars);

/* Independent oracle: expand both factors into monomials and re-expand. */
SchurVector lr_product_oracle(const Weight& a, const Weight& b, int nvars);

/* Monomial expansion of the Schur polynomial of a partition in nvars variables. */
MonoMap schur_monomials(const Weight& partition, int nvars);

/* Expand a symmetric polynomial into Schur polynomials.  Throws NotSymmetric
 * for asymmetric input; an iteration guard of (#monomials)^2 backs the
 * symmetry pre-check. */
SchurVector schur_expand(const MonoMap& p, int nvars);

/* Weight decomposition of Lambda^k Sym^d(C^nvars). */
SchurVector wedge_of_sym(int k, int d, int nvars);

/* Dimension of the irreducible GL(n) representation of highest weight xi. */
Int weyl_dim(const Weight& xi, int n);

/* Sparse polynomial over a fixed symbol table with exact rational
 * coefficients.  Slots play three roles: alphabet variables to be eliminated,
 * generator slots receiving elementary symmetric images, and passive named
 * generators that ride along. */
struct Symbol {
    std::string name;
    int degree = 1;
};

struct SymPoly {
    std::vector<Symbol> symbols;
    std::map<std::vector<int>, Rat> terms;

    explicit SymPoly(std::vector<Symbol> syms) : symbols(std::move(syms)) {}

    void add_term(const std::vector<int>& exp, const Rat& c);
    SymPoly operator*(const SymPoly& other) const;
    SymPoly operator+(const SymPoly& other) const;
    SymPoly operator-(const SymPoly& other) const;
    bool operator==(const SymPoly& other) const;

    static SymPoly constant(std::vector<Symbol> syms, const Rat& c);
    static SymPoly variable(std::vector<Symbol> syms, int slot);
};

/* Rewrite a polynomial symmetric in the alphabet slots
 * [alpha_first, alpha_first + alpha_count) as a polynomial in the elementary
 * symmetric functions of that alphabet, placed in slots
 * [gen_first, gen_first + alpha_count).  Non-alphabet content is untouched.
 * Throws NotSymmetric when the input is not symmetric in the alphabet. */
SymPoly elementary_reduce(const SymPoly& p, int alpha_first, int alpha_count, int gen_first);

}  // namespace grasscalc::symfunc
