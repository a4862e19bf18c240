#pragma once

// Exhaustive enumeration of lattice points in the growth-constraint
// bodies: Fincke-Pohst for ellipsoids, value-space search for the
// l-infinity polytopes, Vaaler/Ball bounds and volume bookkeeping.

#include "ivpcap/gram.hpp"

#include <cstdint>
#include <vector>

namespace ivpcap {

struct Ellipsoid {
    unsigned dim = 0;            // d+1
    std::vector<Real> q;         // SPD quadratic form, row-major dim*dim
    Real threshold;              // body is { c : c^t Q c <= threshold^2 }
    Real entry_tail_bound{0};

    const Real& at(unsigned i, unsigned j) const { return q[i * dim + j]; }
    Real form(const std::vector<long long>& c) const;
};

// Q from the series Gram of the spec's mode (two-sided l2 uses the sum
// form Xi_1 + Xi_2^-, so the true body is sandwiched between thresholds t
// and sqrt(2) t).
Ellipsoid build_ellipsoid(const GrowthSpec& spec, unsigned d, const Real& eps);

Ellipsoid diagonal_ellipsoid(unsigned d, const Real& gamma, const Real& t);

struct LatticePoint {
    std::vector<long long> c;
    bool ambiguous = false;  // |c^t Q c - t^2| within the certified slack
};

// All integer points with c^t Q c <= t^2 + slack, lexicographic order,
// boundary-ambiguous points flagged. Throws DimensionCap above dim_cap.
std::vector<LatticePoint> enumerate_ellipsoid(const Ellipsoid& e, unsigned dim_cap = 12);

// Independent oracle: scan the axis-aligned bounding box.
std::vector<LatticePoint> enumerate_bruteforce(const Ellipsoid& e);

struct VaalerBall {
    Int vaaler_lower;    // guaranteed count 2*floor(det^{-1/2}), 0 if det > 1
    Real vaaler_logvol;  // -log det / 2
    Real ball_logvol;    // (N - (d+1)) log sqrt(2) - log det / 2
};
VaalerBall vaaler_ball_bounds(const GramMatrix& sigma, unsigned d, long long rows);

struct SearchReport {
    unsigned d = 0;
    Int count{0};            // nonzero coefficient vectors strictly inside
    Int count_ambiguous{0};  // boundary cases, reported separately
    Int vaaler_lower{0};
    Real logvol{0};
    Real vaaler_logvol{0};
    Real ball_logvol{0};
    std::vector<IvpCoeffs> witnesses;
    bool witnesses_truncated = false;
    Real min_nonzero_form{0};  // l2 modes: min of c^t Q c over nonzero points found
    bool min_form_valid = false;
};

struct SearchOptions {
    unsigned dim_cap = 12;
    size_t witness_cap = 1000;
    Real eps = Real("1e-40");
    // guard on the l-infinity value-box product
    double candidate_budget = 5e9;
};

SearchReport search_ivps(const GrowthSpec& spec, unsigned d, const SearchOptions& opts = {});

Real ball_volume_log(unsigned dim);   // log vol of the unit euclidean ball
Real ball_volume(unsigned dim);
CertifiedReal ellipsoid_volume_log(const Ellipsoid& e);

// Proposition-13-style check: enumerate Psi(E) for the diagonal ellipsoid
// E = { sum x_k^2 gamma^{2k} <= t^2 } and a lower-unipotent Psi.
struct CountVolumeReport {
    Int count{0};
    Real log_ratio;      // log(count / vol E)
    Real lower_bound;    // -(d+1) log 2
    Real upper_scale;    // (d+1) log min{d+1, (1-gamma)^{-1}}, infinite scale reported as 0
    Real empirical_c2;   // log_ratio / upper_scale when meaningful, else 0
};
CountVolumeReport count_vs_volume_check(unsigned d, const Real& gamma, const Real& t,
                                        const std::vector<std::vector<Real>>& psi_strict_lower,
                                        unsigned dim_cap = 12);

}  // namespace ivpcap
