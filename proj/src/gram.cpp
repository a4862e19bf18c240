#include "ivpcap/gram.hpp"

#include <algorithm>

namespace ivpcap {

Real GramMatrix::quadratic_form(const std::vector<Int>& c) const {
    Real s = 0;
    for (unsigned i = 0; i < dim; ++i) {
        for (unsigned j = 0; j < dim; ++j) s += Real(c[i] * c[j]) * at(i, j);
    }
    return s;
}

TruncationChoice truncation_index(const GrowthSpec& spec, unsigned d, const Real& eps) {
    if (eps <= 0) throw InvalidSpec("eps must be positive");
    Real la = log(spec.a);
    Real c = spec.two_sided() ? c_ab(spec.a, *spec.b) : c_a(spec.a);
    unsigned n = std::max(d, 1u);

    // L must satisfy L^{1/L} <= sqrt(a) (one side) and (2L)^{2/L} <= b
    // (negative side, where |binom(-j,k)| <= binom(2j,k) enters).
    auto side_ok = [&](const Real& l) {
        if (log(l) / l > la / 2) return false;
        if (spec.two_sided() && 2 * log(2 * l) / l > log(*spec.b)) return false;
        return true;
    };
    auto bound = [&](const Real& l) {
        Real t = spec.a / (spec.a - 1) * exp((2 - l * la) * n);
        if (spec.two_sided()) {
            const Real& b = *spec.b;
            t += b / (b - 1) * exp((2 - l * log(b)) * n);
        }
        return t;
    };

    Real l = rmax(c, exp(Real(1)) + Real("1e-6"));
    while (!side_ok(l) || bound(l) > eps) l += Real(1) / 2;
    long long m = ceil_to_int(l * std::max(d, 1u)).convert_to<long long>();
    return {m, bound(l)};
}

namespace {

enum class SeriesKind { Plain, Weighted };

// One- or two-sided series matrix sum_n binom(n,j) binom(n,k) base^{-2|n|}
// (divided by |n|+1 for the weighted kind), truncated at the certified M.
GramMatrix series_gram(const GrowthSpec& spec, unsigned d, const Real& eps, SeriesKind kind) {
    TruncationChoice tc = truncation_index(spec, d, eps);
    GramMatrix g;
    g.dim = d + 1;
    g.mode = spec.two_sided() ? GramMode::L2TwoCircles : GramMode::L2Circle;
    if (kind == SeriesKind::Weighted) g.mode = GramMode::WeightedL2;
    g.entry_tail_bound = tc.tail_bound;
    g.a.assign(g.dim * g.dim, Real(0));

    // positive side: incremental binomial row and power of a^{-2}
    {
        Real q = 1 / (spec.a * spec.a);
        std::vector<Int> row(d + 1, Int(0));
        row[0] = 1;
        std::vector<Real> rr(d + 1);
        Real w(1);
        for (long long n = 0; n <= tc.index; ++n) {
            if (n > 0) {
                for (long long k = std::min<long long>(n, d); k >= 1; --k) row[k] += row[k - 1];
                // rolling Pascal update keeps row[k] = binom(n,k)
            }
            unsigned kmax = std::min<long long>(n, d);
            for (unsigned k = 0; k <= kmax; ++k) rr[k] = Real(row[k]);
            Real wn = kind == SeriesKind::Weighted ? w / (n + 1) : w;
            for (unsigned j = 0; j <= kmax; ++j) {
                for (unsigned k = 0; k <= j; ++k) g.at(j, k) += rr[j] * rr[k] * wn;
            }
            w *= q;
        }
    }
    // negative side: binom(-n,k) = (-1)^k binom(n+k-1,k)
    if (spec.two_sided()) {
        Real q = 1 / (*spec.b * *spec.b);
        std::vector<Int> row(d + 1, Int(0));
        std::vector<Real> rr(d + 1);
        Real w = q;
        for (long long n = 1; n <= tc.index; ++n) {
            row[0] = 1;
            for (unsigned k = 1; k <= d; ++k) {
                if (n == 1) {
                    row[k] = 1;  // binom(k,k)
                } else {
                    row[k] *= n + k - 1;
                    row[k] /= n - 1;
                }
            }
            for (unsigned k = 0; k <= d; ++k) rr[k] = Real(row[k]);
            Real wn = kind == SeriesKind::Weighted ? w / (n + 1) : w;
            for (unsigned j = 0; j <= d; ++j) {
                for (unsigned k = 0; k <= j; ++k) {
                    Real term = rr[j] * rr[k] * wn;
                    if ((j + k) % 2) {
                        g.at(j, k) -= term;
                    } else {
                        g.at(j, k) += term;
                    }
                }
            }
            w *= q;
        }
    }
    for (unsigned j = 0; j < g.dim; ++j) {
        for (unsigned k = 0; k < j; ++k) g.at(k, j) = g.at(j, k);
    }
    return g;
}

}  // namespace

GramMatrix xi_gram(const GrowthSpec& spec, unsigned d, const Real& eps) {
    return series_gram(spec, d, eps, SeriesKind::Plain);
}

GramMatrix weighted_gram(const GrowthSpec& spec, unsigned d, const Real& eps) {
    return series_gram(spec, d, eps, SeriesKind::Weighted);
}

GramMatrix sigma_gram(const GrowthSpec& spec, unsigned d, const Real& eps) {
    Real pref = 1 / (2 * spec.t * spec.t);
    GramMatrix g = series_gram(spec, d, eps / pref, SeriesKind::Plain);
    for (Real& x : g.a) x *= pref;
    g.entry_tail_bound *= pref;
    g.prefactor = pref;
    g.mode = GramMode::SigmaInfinity;
    return g;
}

GramMatrix gram_matrix(const GrowthSpec& spec, unsigned d, const Real& eps) {
    switch (spec.mode) {
        case NormMode::LInf:
            return sigma_gram(spec, d, eps);
        case NormMode::L2:
            return xi_gram(spec, d, eps);
        case NormMode::L2Weighted:
            return weighted_gram(spec, d, eps);
    }
    throw InvalidSpec("unknown norm mode");
}

namespace {
Real require_real_center(const CircleSpec& c) {
    if (c.center.im != 0) throw InvalidSpec("moment matrices require real centers");
    return c.center.re;
}
}  // namespace

GramMatrix arc_moment_gram(const std::vector<CircleSpec>& circles, const std::vector<Real>& weights,
                           unsigned d) {
    if (circles.empty() || circles.size() != weights.size())
        throw InvalidSpec("arc_moment_gram needs matching circles and weights");
    GramMatrix g;
    g.dim = d + 1;
    g.mode = circles.size() == 1 ? GramMode::L2Circle : GramMode::L2TwoCircles;
    g.a.assign(g.dim * g.dim, Real(0));
    Real twopi = 2 * real_pi();
    for (size_t c = 0; c < circles.size(); ++c) {
        Real a = require_real_center(circles[c]);
        const Real& r = circles[c].radius;
        Real r2 = r * r;
        // int_{T(a,r)} w^j conj(w)^k d|w| = 2 pi r sum_p C(j,p)C(k,p) a^{j+k-2p} r^{2p}
        std::vector<Real> apow(2 * d + 1);
        apow[0] = 1;
        for (unsigned i = 1; i <= 2 * d; ++i) apow[i] = apow[i - 1] * a;
        for (unsigned j = 0; j <= d; ++j) {
            for (unsigned k = 0; k <= j; ++k) {
                Real s = 0;
                Real rp(1);
                for (unsigned p = 0; p <= k; ++p) {
                    s += binomial_real(j, p) * binomial_real(k, p) * apow[j + k - 2 * p] * rp;
                    rp *= r2;
                }
                g.at(j, k) += weights[c] * twopi * r * s;
            }
        }
    }
    for (unsigned j = 0; j <= d; ++j) {
        for (unsigned k = 0; k < j; ++k) g.at(k, j) = g.at(j, k);
    }
    return g;
}

GramMatrix bergman_gram(const std::vector<CircleSpec>& disks, unsigned d) {
    if (disks.empty()) throw InvalidSpec("bergman_gram needs at least one disk");
    if (disks.size() == 2) {
        Real a1 = require_real_center(disks[0]);
        Real a2 = require_real_center(disks[1]);
        if (abs(a1 - a2) <= disks[0].radius + disks[1].radius)
            throw DisksOverlap("bergman_gram requires disjoint disks");
    }
    GramMatrix g;
    g.dim = d + 1;
    g.mode = disks.size() == 1 ? GramMode::BergmanDisk : GramMode::BergmanTwoDisks;
    g.a.assign(g.dim * g.dim, Real(0));
    Real pi = real_pi();
    for (const CircleSpec& disk : disks) {
        Real a = require_real_center(disk);
        const Real& r = disk.radius;
        Real r2 = r * r;
        std::vector<Real> apow(2 * d + 1);
        apow[0] = 1;
        for (unsigned i = 1; i <= 2 * d; ++i) apow[i] = apow[i - 1] * a;
        // int_{D(a,r)} z^j conj(z)^k dA = pi sum_p C(j,p)C(k,p) a^{j+k-2p} r^{2p+2}/(p+1)
        for (unsigned j = 0; j <= d; ++j) {
            for (unsigned k = 0; k <= j; ++k) {
                Real s = 0;
                Real rp = r2;
                for (unsigned p = 0; p <= k; ++p) {
                    s += binomial_real(j, p) * binomial_real(k, p) * apow[j + k - 2 * p] * rp / (p + 1);
                    rp *= r2;
                }
                g.at(j, k) += pi * s;
            }
        }
    }
    for (unsigned j = 0; j <= d; ++j) {
        for (unsigned k = 0; k < j; ++k) g.at(k, j) = g.at(j, k);
    }
    return g;
}

GramMatrix bergman_gram_two_disks(const CircleSpec& d1, const CircleSpec& d2, unsigned d) {
    return bergman_gram({d1, d2}, d);
}

namespace {
// plain factorization, pivot acceptance decided by the caller
bool cholesky_raw(const std::vector<Real>& a, unsigned dim, const Real& pivot_floor,
                  std::vector<Real>& l) {
    l.assign(dim * dim, Real(0));
    for (unsigned i = 0; i < dim; ++i) {
        for (unsigned j = 0; j <= i; ++j) {
            Real s = a[i * dim + j];
            for (unsigned k = 0; k < j; ++k) s -= l[i * dim + k] * l[j * dim + k];
            if (i == j) {
                if (s <= pivot_floor) return false;
                l[i * dim + i] = sqrt(s);
            } else {
                l[i * dim + j] = s / l[j * dim + j];
            }
        }
    }
    return true;
}
}  // namespace

CholeskyFactor cholesky(const GramMatrix& g) {
    CholeskyFactor f;
    f.dim = g.dim;
    Real floor_val = 8 * g.entry_tail_bound;
    if (!cholesky_raw(g.a, g.dim, floor_val, f.l))
        throw NotPositiveDefinite("pivot within 8x the entry tail bound; raise precision or lower eps");
    return f;
}

OpNorms op_norms(const GramMatrix& g, OpKind kind) {
    CholeskyFactor f = cholesky(g);
    OpNorms out;
    out.kind = kind;
    out.norms.reserve(g.dim);
    for (unsigned k = 0; k < g.dim; ++k) out.norms.push_back(f.pivot(k));
    return out;
}

CertifiedReal log_det(const GramMatrix& g) {
    CholeskyFactor f = cholesky(g);
    Real ld = 0;
    for (unsigned k = 0; k < g.dim; ++k) ld += log(f.pivot(k));
    ld *= 2;
    // first-order sensitivity: |d log det| <= ||E||_max * sum |M^{-1}_ij|
    // <= tail * dim * tr(M^{-1}), with tr(M^{-1}) = ||L^{-1}||_F^2
    Real tr_inv = 0;
    std::vector<Real> col(g.dim);
    for (unsigned c = 0; c < g.dim; ++c) {
        for (unsigned i = 0; i < g.dim; ++i) {
            Real s = i == c ? Real(1) : Real(0);
            for (unsigned k = c; k < i; ++k) s -= f.at(i, k) * col[k];
            col[i] = i >= c ? s / f.at(i, i) : Real(0);
            if (i >= c) tr_inv += col[i] * col[i];
        }
    }
    Real err = 2 * g.entry_tail_bound * g.dim * tr_inv + rounding_eps() * (abs(ld) + 1) * g.dim * 8;
    return {ld, err};
}

CertifiedReal min_eigenvalue(const GramMatrix& g, const Real& tol) {
    if (tol <= 0) throw InvalidSpec("tol must be positive");
    std::vector<Real> l;
    Real lo = 0;
    Real hi = g.at(0, 0);
    for (unsigned i = 1; i < g.dim; ++i) hi = rmin(hi, g.at(i, i));
    std::vector<Real> shifted = g.a;
    auto pd_with_shift = [&](const Real& s) {
        shifted = g.a;
        for (unsigned i = 0; i < g.dim; ++i) shifted[i * g.dim + i] -= s;
        return cholesky_raw(shifted, g.dim, Real(0), l);
    };
    if (!pd_with_shift(Real(0))) return {Real(0), g.entry_tail_bound * g.dim};
    while (hi - lo > tol) {
        Real mid = (lo + hi) / 2;
        (pd_with_shift(mid) ? lo : hi) = mid;
    }
    return {(lo + hi) / 2, (hi - lo) / 2 + g.entry_tail_bound * g.dim};
}

}  // namespace ivpcap
