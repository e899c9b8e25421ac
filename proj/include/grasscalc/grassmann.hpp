/* Schubert calculus on Gr(k, N): box-truncated Schur classes, conversion of
 * Chern monomials to Schur expansions, degrees, and pushforwards. */
#pragma once

#include <vector>

#include "grasscalc/chowring.hpp"
#include "grasscalc/common.hpp"
#include "grasscalc/symfunc.hpp"

namespace grasscalc::grassmann {

struct GrassSpec {
    int k = 0;  // rank of the tautological subbundle
    int N = 0;  // dimension of the ambient vector space
    int cols() const { return N - k; }
    long dim() const { return static_cast<long>(k) * cols(); }
};

/* Weights are padded to length k and lie in the k x (N-k) box. */
using SchurClass = symfunc::SchurVector;

SchurClass schur_one(const GrassSpec& g);
SchurClass box_truncate(const symfunc::SchurVector& v, const GrassSpec& g);
SchurClass mul_truncated(const SchurClass& a, const symfunc::Weight& w, const GrassSpec& g);

/* Schubert expansion of prod C_i^{c_exp[i-1]} prod d_j^{d_exp[j-1]}, where
 * C_i is the i-th Chern class of the dual subbundle (a column s_(1^i)) and
 * d_j the j-th Chern class of the quotient (a row s_(j)). */
SchurClass to_schur(const GrassSpec& g, const std::vector<int>& c_exp,
                    const std::vector<int>& d_exp);

/* Coefficient of the fundamental Schubert point class. */
Int degree(const SchurClass& v, const GrassSpec& g);

/* Role of one generator slot of a mixed class under pushforward. */
struct SlotRole {
    enum Kind { XPart, SubDualChern, QuotChern } kind = XPart;
    int index = 0;  // 1-based Chern index for the bundle roles
};

/* Integrate the Grassmannian fibre directions of a mixed class: every term
 * splits into a base part and a fibre Chern monomial, and the fibre part is
 * replaced by its Schubert degree (zero unless it has top degree). */
chowring::GradedClass pushforward_to_x(const chowring::GradedClass& mixed, const GrassSpec& g,
                                       const std::vector<SlotRole>& roles);

}  // namespace grasscalc::grassmann
