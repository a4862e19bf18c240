#pragma once

// Moment/Gram matrices: truncated binomial-basis series matrices, exact
// circle and disk moment matrices, high-precision Cholesky, determinants,
// monic orthogonal polynomial norms and a certified smallest eigenvalue.

#include "ivpcap/genfunc.hpp"
#include "ivpcap/ivp.hpp"

#include <vector>

namespace ivpcap {

enum class GramMode { L2Circle, L2TwoCircles, BergmanDisk, BergmanTwoDisks, WeightedL2, SigmaInfinity };

// Symmetric positive-definite matrix of Reals with a uniform certified
// truncation-error bound per entry. prefactor records the normalization
// applied on top of the raw series / moment integrals.
struct GramMatrix {
    unsigned dim = 0;  // (d+1) x (d+1)
    GramMode mode = GramMode::L2Circle;
    Real entry_tail_bound{0};
    Real prefactor{1};
    std::vector<Real> a;  // row-major, dim*dim

    const Real& at(unsigned i, unsigned j) const { return a[i * dim + j]; }
    Real& at(unsigned i, unsigned j) { return a[i * dim + j]; }
    Real quadratic_form(const std::vector<Int>& c) const;
};

// Truncation index M = ceil(L*d) whose certified tail bound is <= eps,
// clamped below at ceil(c_a*d). Returns the index and the bound achieved.
struct TruncationChoice {
    long long index;
    Real tail_bound;
};
TruncationChoice truncation_index(const GrowthSpec& spec, unsigned d, const Real& eps);

// Series matrices. One-sided (b absent): Xi_1(a)[j][k] = sum_n binom(n,j)
// binom(n,k) a^{-2n}; two-sided adds the negative-index sum with base b.
// Weighted variants divide each term by (n+1). Sigma normalization scales
// by 1/(2 t^2).
GramMatrix xi_gram(const GrowthSpec& spec, unsigned d, const Real& eps);
GramMatrix weighted_gram(const GrowthSpec& spec, unsigned d, const Real& eps);
GramMatrix sigma_gram(const GrowthSpec& spec, unsigned d, const Real& eps);

// Dispatch on spec.mode: LInf -> sigma, L2 -> xi, L2Weighted -> weighted.
GramMatrix gram_matrix(const GrowthSpec& spec, unsigned d, const Real& eps);

// Exact moment matrices (binomial expansion about real centers, no
// truncation): arc-length on circles, area on disks. Complex centers are
// restricted to the real axis, which is all the constructions need.
GramMatrix arc_moment_gram(const std::vector<CircleSpec>& circles, const std::vector<Real>& weights,
                           unsigned d);
GramMatrix bergman_gram(const std::vector<CircleSpec>& disks, unsigned d);
GramMatrix bergman_gram_two_disks(const CircleSpec& d1, const CircleSpec& d2, unsigned d);

// Lower-triangular factor with L L^t = matrix. Fails with
// NotPositiveDefinite when a pivot is within 8x the entry tail bound.
struct CholeskyFactor {
    unsigned dim = 0;
    std::vector<Real> l;  // row-major lower triangle, dim*dim

    const Real& at(unsigned i, unsigned j) const { return l[i * dim + j]; }
    Real pivot(unsigned k) const { return at(k, k); }
};
CholeskyFactor cholesky(const GramMatrix& g);

enum class OpKind { Szego, Bergman };

// Monic orthogonal polynomial norms: norms[k] is the k-th Cholesky pivot,
// so norms[k]^2 = ||Q_k||^2 and prod norms^2 = det.
struct OpNorms {
    OpKind kind;
    std::vector<Real> norms;
};
OpNorms op_norms(const GramMatrix& g, OpKind kind);

CertifiedReal log_det(const GramMatrix& g);

// Smallest eigenvalue by bisection on shifted Cholesky success.
CertifiedReal min_eigenvalue(const GramMatrix& g, const Real& tol);

}  // namespace ivpcap
