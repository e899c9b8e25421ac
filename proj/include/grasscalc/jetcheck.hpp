/* First-order verification of the self-map differential at a triple-contact
 * plane of a randomly sampled cubic, over a prime field and optionally over
 * the rationals. */
#pragma once

#include <cstdint>
#include <vector>

#include "grasscalc/common.hpp"

namespace grasscalc::jetcheck {

/* A cubic through the coordinate r-plane with triple contact along the
 * coordinate (r+1)-plane: x_{r+1}^3 plus sum_{i >= r+2} x_i Q_i, with each
 * quadric sampled on the (r+1)-plane and split as
 * Q_i = Q_i|_P + x_{r+1} L_i + c_i x_{r+1}^2. */
struct CubicSample {
    int r = 0;
    int n = 0;
    long long prime = 0;
    std::uint64_t seed = 0;
    int attempts_used = 0;
    std::vector<std::vector<long long>> qp;  // per quadric: plane part, monomials (a<=b<=r)
    std::vector<std::vector<long long>> lin;  // per quadric: L_i coefficients, a = 0..r
    std::vector<long long> quad;              // per quadric: c_i
};

/* Deterministic coefficient stream; identical integers feed the exact run. */
std::uint64_t coeff_stream(std::uint64_t seed, std::uint64_t attempt, std::uint64_t quadric,
                           std::uint64_t index);

/* Resamples until the plane parts span all quadrics on the plane;
 * GenericityFailure after 16 attempts. */
CubicSample sample_cubic(int r, std::uint64_t seed, long long prime);

/* Basis of the tangent space of the plane locus at the coordinate plane,
 * as vectors over the (n-r)(r+1) ambient coordinates; UnexpectedDimension
 * if its dimension is not (r+1)(n-r) - binomial(r+3, 3). */
std::vector<std::vector<long long>> tangent_basis(const CubicSample& s);

/* Image of a tangent vector under the differential of the self-map. */
std::vector<long long> apply_differential(const CubicSample& s, const std::vector<long long>& y);

/* The differential in the given tangent basis. */
std::vector<std::vector<long long>> jet_matrix(const CubicSample& s,
                                               const std::vector<std::vector<long long>>& basis);

struct JetOptions {
    int r = 2;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    long long prime = 10007;
    bool exact = false;  // additionally run over the rationals (r = 1 only)
};

struct SeedReport {
    std::uint64_t seed = 0;
    int attempts_used = 0;
    bool charpoly_matches = false;  // equals (t+2)^{r+1} (t-1)^{N-r-1}
    bool det_matches = false;       // equals (-2)^{r+1}
    bool eigenspace_matches = false;  // dim ker(A + 2I) == r+1
    Int trace;                        // lifted to the symmetric range mod p
    bool exact_ran = false;
    bool exact_agrees = false;
};

struct JetReport {
    int r = 0;
    int n = 0;
    int tangent_dim = 0;
    long long prime = 0;
    std::vector<SeedReport> seeds;
    bool all_ok = false;
};

JetReport verify_eigenpoly(const JetOptions& opt);

}  // namespace grasscalc::jetcheck
