#include "ivpcap/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace ivpcap {

Real Ellipsoid::form(const std::vector<long long>& c) const {
    Real s = 0;
    for (unsigned i = 0; i < dim; ++i) {
        for (unsigned j = 0; j < dim; ++j) s += Real(c[i]) * Real(c[j]) * at(i, j);
    }
    return s;
}

Ellipsoid build_ellipsoid(const GrowthSpec& spec, unsigned d, const Real& eps) {
    if (spec.mode == NormMode::LInf)
        throw InvalidSpec("the l-infinity body is a polytope; use search_ivps");
    GramMatrix g = spec.mode == NormMode::L2 ? xi_gram(spec, d, eps) : weighted_gram(spec, d, eps);
    Ellipsoid e;
    e.dim = g.dim;
    e.q = std::move(g.a);
    e.threshold = spec.t;
    e.entry_tail_bound = g.entry_tail_bound;
    return e;
}

Ellipsoid diagonal_ellipsoid(unsigned d, const Real& gamma, const Real& t) {
    Ellipsoid e;
    e.dim = d + 1;
    e.q.assign(e.dim * e.dim, Real(0));
    Real g2 = gamma * gamma;
    Real w(1);
    for (unsigned k = 0; k <= d; ++k) {
        e.q[k * e.dim + k] = w;
        w *= g2;
    }
    e.threshold = t;
    return e;
}

namespace {

struct Classified {
    bool in = false;
    bool ambiguous = false;
};

// compares the exact form value against t^2 with the certified slack
Classified classify(const Ellipsoid& e, const std::vector<long long>& c, const Real& slack) {
    Real f = e.form(c);
    Real t2 = e.threshold * e.threshold;
    Classified r;
    if (f <= t2 + slack) {
        r.in = true;
        r.ambiguous = abs(f - t2) <= slack;
    }
    return r;
}

Real point_slack(const Ellipsoid& e, const Real& coord_sum_bound) {
    Real mx = 0;
    for (const Real& x : e.q) mx = rmax(mx, abs(x));
    return e.entry_tail_bound * coord_sum_bound * coord_sum_bound +
           rounding_eps(32) * mx * coord_sum_bound * coord_sum_bound * e.dim;
}

std::vector<Real> upper_factor(const Ellipsoid& e) {
    GramMatrix g;
    g.dim = e.dim;
    g.entry_tail_bound = e.entry_tail_bound;
    g.a = e.q;
    CholeskyFactor f = cholesky(g);  // Q = L L^t, R = L^t
    std::vector<Real> r(e.dim * e.dim, Real(0));
    for (unsigned i = 0; i < e.dim; ++i) {
        for (unsigned j = i; j < e.dim; ++j) r[i * e.dim + j] = f.at(j, i);
    }
    return r;
}

// per-coordinate box |c_i| <= t sqrt((Q^{-1})_{ii}) from the factor
std::vector<long long> box_bounds(const Ellipsoid& e, const std::vector<Real>& r) {
    unsigned n = e.dim;
    // rows of R^{-t} give Q^{-1} = R^{-1} R^{-t}; solve R^t x = e_col
    std::vector<Real> rinv(n * n, Real(0));
    for (unsigned col = 0; col < n; ++col) {
        for (unsigned i = col; i < n; ++i) {
            Real s = (i == col) ? Real(1) : Real(0);
            for (unsigned k = col; k < i; ++k) s -= r[k * n + i] * rinv[k * n + col];
            rinv[i * n + col] = s / r[i * n + i];
        }
    }
    std::vector<long long> b(n);
    for (unsigned i = 0; i < n; ++i) {
        // (Q^{-1})_{ii} = || row i of R^{-1} ||^2, (R^{-1})_{i,k} = rinv[k*n+i]
        Real qii = 0;
        for (unsigned k = i; k < n; ++k) qii += rinv[k * n + i] * rinv[k * n + i];
        b[i] = floor_to_int(e.threshold * sqrt(qii) + Real("1.000001")).convert_to<long long>();
    }
    return b;
}

}  // namespace

std::vector<LatticePoint> enumerate_ellipsoid(const Ellipsoid& e, unsigned dim_cap) {
    if (e.dim > dim_cap) throw DimensionCap("ellipsoid dimension exceeds the configured cap");
    std::vector<Real> r = upper_factor(e);
    std::vector<long long> box = box_bounds(e, r);
    Real sumbox = 1;
    for (long long b : box) sumbox += Real(b);
    Real slack = point_slack(e, sumbox);
    Real budget = e.threshold * e.threshold + slack;

    unsigned n = e.dim;
    std::vector<long long> c(n, 0);
    std::vector<Real> partial(n, Real(0));  // partial[i] = sum_{j>i} R_ij c_j
    std::vector<LatticePoint> out;

    // depth-first from the last coordinate; rem is the remaining budget
    auto rec = [&](auto&& self, unsigned level, const Real& rem) -> void {
        unsigned i = n - 1 - level;
        Real p = 0;
        for (unsigned j = i + 1; j < n; ++j) p += r[i * n + j] * Real(c[j]);
        const Real& rii = r[i * n + i];
        Real half = sqrt(rmax(rem, Real(0)));
        long long lo = ceil_to_int((-half - p) / rii - rounding_eps(40)).convert_to<long long>();
        long long hi = floor_to_int((half - p) / rii + rounding_eps(40)).convert_to<long long>();
        for (long long v = lo; v <= hi; ++v) {
            c[i] = v;
            Real term = rii * Real(v) + p;
            Real rem2 = rem - term * term;
            if (rem2 < -slack) continue;
            if (i == 0) {
                Classified cl = classify(e, c, slack);
                if (cl.in) out.push_back({c, cl.ambiguous});
            } else {
                self(self, level + 1, rem2);
            }
        }
        c[i] = 0;
    };
    rec(rec, 0, budget);
    std::sort(out.begin(), out.end(),
              [](const LatticePoint& x, const LatticePoint& y) { return x.c < y.c; });
    return out;
}

std::vector<LatticePoint> enumerate_bruteforce(const Ellipsoid& e) {
    std::vector<Real> r = upper_factor(e);
    std::vector<long long> box = box_bounds(e, r);
    Real sumbox = 1;
    for (long long b : box) sumbox += Real(b);
    Real slack = point_slack(e, sumbox);

    std::vector<long long> c(e.dim);
    for (unsigned i = 0; i < e.dim; ++i) c[i] = -box[i];
    std::vector<LatticePoint> out;
    while (true) {
        Classified cl = classify(e, c, slack);
        if (cl.in) out.push_back({c, cl.ambiguous});
        unsigned i = 0;
        while (i < e.dim && c[i] == box[i]) {
            c[i] = -box[i];
            ++i;
        }
        if (i == e.dim) break;
        ++c[i];
    }
    std::sort(out.begin(), out.end(),
              [](const LatticePoint& x, const LatticePoint& y) { return x.c < y.c; });
    return out;
}

Real ball_volume_log(unsigned dim) {
    Real half = Real(dim) / 2;
    Real lg;
    mpfr_lngamma(lg.backend().data(), Real(half + 1).backend().data(), MPFR_RNDN);
    return half * log(real_pi()) - lg;
}

Real ball_volume(unsigned dim) { return exp(ball_volume_log(dim)); }

CertifiedReal ellipsoid_volume_log(const Ellipsoid& e) {
    GramMatrix g;
    g.dim = e.dim;
    g.entry_tail_bound = e.entry_tail_bound;
    g.a = e.q;
    CertifiedReal ld = log_det(g);
    Real v = ball_volume_log(e.dim) + e.dim * log(e.threshold) - ld.value / 2;
    return {v, ld.error / 2 + rounding_eps() * (abs(v) + 1)};
}

VaalerBall vaaler_ball_bounds(const GramMatrix& sigma, unsigned d, long long rows) {
    if (sigma.mode != GramMode::SigmaInfinity)
        throw InvalidSpec("vaaler_ball_bounds expects the Sigma normalization");
    CertifiedReal ld = log_det(sigma);
    VaalerBall vb;
    vb.vaaler_logvol = -ld.value / 2;
    vb.ball_logvol = (Real(rows) - Real(d + 1)) * log(Real(2)) / 2 - ld.value / 2;
    Real lo = exp(-(ld.value + ld.error) / 2);
    Real hi = exp(-(ld.value - ld.error) / 2);
    Int rlo = floor_to_int(lo);
    Int rhi = floor_to_int(hi);
    Int r = rlo;
    if (rhi != rlo && hi - Real(rhi) <= 4 * (hi - lo)) r = rhi;  // det^{-1/2} certified-equal to an integer
    if (r < 0) r = 0;
    vb.vaaler_lower = 2 * r;
    return vb;
}

namespace {

// ---- l-infinity search over value tuples (P(0),...,P(d)) ----

struct LinfBound {
    Int lo;        // certified floor of t * base^n
    bool fuzzy;    // true when the floor is ambiguous at this precision
};

LinfBound certified_floor(const Real& x) {
    Real pad = rounding_eps(48) * (x + 1);
    Int flo = floor_to_int(x - pad);
    Int fhi = floor_to_int(x + pad);
    return {flo, fhi != flo};
}

struct LinfProblem {
    unsigned d;
    long long npos;
    long long nneg;  // 0 when one-sided
    std::vector<Int> bpos, bneg;
    std::vector<bool> fpos, fneg;
    std::vector<int64_t> bpos64, bneg64;  // saturated at SAT
    static constexpr int64_t SAT = int64_t(1) << 60;
    static constexpr int64_t OVER = int64_t(1) << 61;
};

LinfProblem linf_problem(const GrowthSpec& spec, unsigned d) {
    LinfProblem pr;
    pr.d = d;
    pr.npos = linf_check_range(spec, d, Side::Positive);
    pr.npos = std::max<long long>(pr.npos, d);
    pr.nneg = spec.two_sided() ? linf_check_range(spec, d, Side::Negative) : 0;
    // the stored bound is the over-inclusive floor; certified membership of
    // every surviving candidate is re-established afterwards
    Real w = spec.t;
    for (long long n = 0; n <= pr.npos; ++n) {
        LinfBound b = certified_floor(w);
        Int wide = b.fuzzy ? b.lo + 1 : b.lo;
        pr.bpos.push_back(wide);
        pr.fpos.push_back(b.fuzzy);
        pr.bpos64.push_back(wide > LinfProblem::SAT ? LinfProblem::SAT : wide.convert_to<int64_t>());
        w *= spec.a;
    }
    if (spec.two_sided()) {
        Real v = spec.t * *spec.b;
        for (long long n = 1; n <= pr.nneg; ++n) {
            LinfBound b = certified_floor(v);
            Int wide = b.fuzzy ? b.lo + 1 : b.lo;
            pr.bneg.push_back(wide);
            pr.fneg.push_back(b.fuzzy);
            pr.bneg64.push_back(wide > LinfProblem::SAT ? LinfProblem::SAT : wide.convert_to<int64_t>());
            v *= *spec.b;
        }
    }
    return pr;
}

// Extends the difference table in exact arithmetic and finishes the checks;
// used when the int64 fast path would overflow.
bool extend_exact(const LinfProblem& pr, const std::vector<int64_t>& values, long long from_pos,
                  bool check_neg) {
    unsigned d = pr.d;
    std::vector<std::vector<Int>> table(d + 1);
    table[0].assign(values.begin(), values.end());
    for (unsigned i = 1; i <= d; ++i) {
        table[i].resize(d + 1 - i);
        for (unsigned j = 0; j + i <= d; ++j) table[i][j] = table[i - 1][j + 1] - table[i - 1][j];
    }
    std::vector<Int> diag(d + 1);
    for (unsigned i = 0; i <= d; ++i) diag[i] = table[i][d - i];
    long long n = d;
    // replay the forward extension from scratch up to from_pos, then continue
    while (n < pr.npos) {
        for (long long i = d - 1; i >= 0; --i) diag[i] += diag[i + 1];
        ++n;
        if (n > from_pos) {
            Int v = diag[0] < 0 ? Int(-diag[0]) : diag[0];
            if (v > pr.bpos[n]) return false;
        }
    }
    if (check_neg && pr.nneg > 0) {
        std::vector<Int> left(d + 1);
        for (unsigned i = 0; i <= d; ++i) left[i] = table[i][0];
        for (long long m = 1; m <= pr.nneg; ++m) {
            for (long long i = d - 1; i >= 0; --i) left[i] -= left[i + 1];
            Int v = left[0] < 0 ? Int(-left[0]) : left[0];
            if (v > pr.bneg[m - 1]) return false;
        }
    }
    return true;
}

// int64 check of the extension rows; falls back to exact on overflow risk.
bool leaf_passes(const LinfProblem& pr, const std::vector<int64_t>& values) {
    unsigned d = pr.d;
    int64_t table[16][16];
    for (unsigned j = 0; j <= d; ++j) table[0][j] = values[j];
    for (unsigned i = 1; i <= d; ++i) {
        for (unsigned j = 0; j + i <= d; ++j) table[i][j] = table[i - 1][j + 1] - table[i - 1][j];
    }
    // negative side first: it prunes earliest when present
    if (pr.nneg > 0) {
        int64_t left[16];
        for (unsigned i = 0; i <= d; ++i) left[i] = table[i][0];
        for (long long m = 1; m <= pr.nneg; ++m) {
            int64_t mx = 0;
            for (long long i = d - 1; i >= 0; --i) {
                left[i] -= left[i + 1];
                int64_t a = std::llabs(left[i]);
                if (a > mx) mx = a;
            }
            if (mx > LinfProblem::OVER) return extend_exact(pr, values, d, true);
            int64_t v = std::llabs(left[0]);
            if (pr.bneg64[m - 1] < LinfProblem::SAT && v > pr.bneg64[m - 1]) return false;
        }
    }
    int64_t diag[16];
    for (unsigned i = 0; i <= d; ++i) diag[i] = table[i][d - i];
    for (long long n = d + 1; n <= pr.npos; ++n) {
        int64_t mx = 0;
        for (long long i = d - 1; i >= 0; --i) {
            diag[i] += diag[i + 1];
            int64_t a = std::llabs(diag[i]);
            if (a > mx) mx = a;
        }
        if (mx > LinfProblem::OVER) return extend_exact(pr, values, n - 1, false);
        int64_t v = std::llabs(diag[0]);
        if (pr.bpos64[n] < LinfProblem::SAT && v > pr.bpos64[n]) return false;
    }
    return true;
}

IvpCoeffs coeffs_from_values(const std::vector<int64_t>& values) {
    unsigned d = static_cast<unsigned>(values.size() - 1);
    std::vector<Int> row(values.begin(), values.end());
    std::vector<Int> c(d + 1);
    for (unsigned k = 0; k <= d; ++k) {
        c[k] = row[0];
        for (unsigned j = 0; j + k + 1 <= d; ++j) row[j] = row[j + 1] - row[j];
    }
    return IvpCoeffs::make(std::move(c));
}

struct VerifyResult {
    bool in = false;
    bool ambiguous = false;
};

// certified membership of the candidate at doubled precision; the bases and
// threshold are the exact mpfr values the caller supplied
VerifyResult verify_candidate(const IvpCoeffs& p, const GrowthSpec& spec, const Real& eps) {
    PrecisionGuard guard(precision_bits() * 2);
    Real lim = spec.mode == NormMode::LInf ? spec.t : spec.t * spec.t;
    VerifyResult r;
    r.in = true;
    for (Side side : {Side::Positive, Side::Negative}) {
        if (side == Side::Negative && !spec.two_sided()) break;
        CertifiedReal v = growth_functional(p, spec, side, eps);
        if (v.value - v.error > lim) {
            r.in = false;
            return r;
        }
        if (v.value + v.error > lim) r.ambiguous = true;
    }
    return r;
}

SearchReport search_linf(const GrowthSpec& spec, unsigned d, const SearchOptions& opts) {
    if (d + 1 > opts.dim_cap) throw DimensionCap("degree exceeds the enumeration cap");
    if (d + 1 > 15) throw DimensionCap("l-infinity search supports degree <= 14");
    LinfProblem pr = linf_problem(spec, d);
    double product = 1;
    for (unsigned n = 0; n <= d; ++n) {
        if (pr.bpos64[n] >= LinfProblem::SAT) throw EnclosureTooLoose("value box is unbounded");
        product *= 2.0 * double(pr.bpos64[n]) + 1.0;
        if (product > opts.candidate_budget) throw EnclosureTooLoose("candidate budget exceeded");
    }

    SearchReport rep;
    rep.d = d;
    std::vector<std::vector<int64_t>> accepted;
    std::vector<int64_t> values(d + 1, 0);

    auto rec = [&](auto&& self, unsigned n) -> void {
        if (n > d) {
            bool zero = std::all_of(values.begin(), values.end(), [](int64_t v) { return v == 0; });
            if (!zero && leaf_passes(pr, values)) accepted.push_back(values);
            return;
        }
        int64_t b = pr.bpos64[n];
        for (int64_t v = -b; v <= b; ++v) {
            values[n] = v;
            self(self, n + 1);
        }
        values[n] = 0;
    };
    rec(rec, 0);

    // certified re-verification of every accepted tuple
    std::vector<IvpCoeffs> strict;
    for (const auto& vals : accepted) {
        IvpCoeffs p = coeffs_from_values(vals);
        VerifyResult vr = verify_candidate(p, spec, opts.eps);
        if (!vr.in) continue;
        if (vr.ambiguous) {
            rep.count_ambiguous += 1;
        } else {
            rep.count += 1;
            strict.push_back(std::move(p));
        }
    }
    std::sort(strict.begin(), strict.end(), [](const IvpCoeffs& x, const IvpCoeffs& y) {
        return std::lexicographical_compare(x.coeffs.begin(), x.coeffs.end(), y.coeffs.begin(),
                                            y.coeffs.end());
    });
    if (strict.size() > opts.witness_cap) {
        strict.resize(opts.witness_cap);
        rep.witnesses_truncated = true;
    }
    rep.witnesses = std::move(strict);

    GramMatrix sigma = sigma_gram(spec, d, opts.eps);
    long long rows = spec.two_sided() ? pr.npos + pr.nneg + 1 : pr.npos + 1;
    VaalerBall vb = vaaler_ball_bounds(sigma, d, rows);
    rep.vaaler_lower = vb.vaaler_lower;
    rep.vaaler_logvol = vb.vaaler_logvol;
    rep.ball_logvol = vb.ball_logvol;
    rep.logvol = (vb.vaaler_logvol + vb.ball_logvol) / 2;
    return rep;
}

SearchReport search_l2(const GrowthSpec& spec, unsigned d, const SearchOptions& opts) {
    bool two = spec.two_sided();
    GrowthSpec espec = spec;
    if (two) espec.t = spec.t * sqrt(Real(2));  // sum-form enclosure of the intersection
    Ellipsoid e = build_ellipsoid(espec, d, opts.eps);
    std::vector<LatticePoint> pts = enumerate_ellipsoid(e, opts.dim_cap);

    SearchReport rep;
    rep.d = d;
    std::vector<IvpCoeffs> strict;
    for (const LatticePoint& pt : pts) {
        bool zero = std::all_of(pt.c.begin(), pt.c.end(), [](long long v) { return v == 0; });
        if (zero) continue;
        std::vector<Int> cz(pt.c.begin(), pt.c.end());
        IvpCoeffs p = IvpCoeffs::make(std::move(cz));
        VerifyResult vr = verify_candidate(p, spec, opts.eps);
        if (!vr.in) continue;
        CertifiedReal f = growth_functional(p, spec, Side::Positive, opts.eps);
        if (two) {
            CertifiedReal fneg = growth_functional(p, spec, Side::Negative, opts.eps);
            f.value = rmax(f.value, fneg.value);
            f.error = rmax(f.error, fneg.error);
        }
        if (!rep.min_form_valid || f.value < rep.min_nonzero_form) {
            rep.min_nonzero_form = f.value;
            rep.min_form_valid = true;
        }
        if (vr.ambiguous) {
            rep.count_ambiguous += 1;
        } else {
            rep.count += 1;
            strict.push_back(std::move(p));
        }
    }
    std::sort(strict.begin(), strict.end(), [](const IvpCoeffs& x, const IvpCoeffs& y) {
        return std::lexicographical_compare(x.coeffs.begin(), x.coeffs.end(), y.coeffs.begin(),
                                            y.coeffs.end());
    });
    if (strict.size() > opts.witness_cap) {
        strict.resize(opts.witness_cap);
        rep.witnesses_truncated = true;
    }
    rep.witnesses = std::move(strict);
    CertifiedReal lv = ellipsoid_volume_log(build_ellipsoid(spec, d, opts.eps));
    rep.logvol = lv.value;
    return rep;
}

}  // namespace

SearchReport search_ivps(const GrowthSpec& spec, unsigned d, const SearchOptions& opts) {
    if (d + 1 > opts.dim_cap) throw DimensionCap("degree exceeds the enumeration cap");
    return spec.mode == NormMode::LInf ? search_linf(spec, d, opts) : search_l2(spec, d, opts);
}

CountVolumeReport count_vs_volume_check(unsigned d, const Real& gamma, const Real& t,
                                        const std::vector<std::vector<Real>>& psi_strict_lower,
                                        unsigned dim_cap) {
    if (gamma <= 0 || gamma > 1 || t < 1) throw InvalidSpec("requires 0 < gamma <= 1 <= t");
    unsigned n = d + 1;
    // Psi = I + strict lower part; z in Psi(E) iff z^t (Psi^{-t} D Psi^{-1}) z <= t^2
    std::vector<Real> psi(n * n, Real(0));
    for (unsigned i = 0; i < n; ++i) {
        psi[i * n + i] = 1;
        for (unsigned j = 0; j < i; ++j) psi[i * n + j] = psi_strict_lower[i][j];
    }
    // unit lower triangular inverse by forward substitution
    std::vector<Real> w(n * n, Real(0));
    for (unsigned c = 0; c < n; ++c) {
        for (unsigned i = c; i < n; ++i) {
            Real s = (i == c) ? Real(1) : Real(0);
            for (unsigned k = c; k < i; ++k) s -= psi[i * n + k] * w[k * n + c];
            w[i * n + c] = s;
        }
    }
    Ellipsoid e;
    e.dim = n;
    e.threshold = t;
    e.q.assign(n * n, Real(0));
    Real g2 = gamma * gamma;
    std::vector<Real> dpow(n);
    dpow[0] = 1;
    for (unsigned k = 1; k < n; ++k) dpow[k] = dpow[k - 1] * g2;
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = 0; j <= i; ++j) {
            Real s = 0;
            for (unsigned k = std::max(i, j); k < n; ++k) s += w[k * n + i] * dpow[k] * w[k * n + j];
            e.q[i * n + j] = s;
            e.q[j * n + i] = s;
        }
    }
    std::vector<LatticePoint> pts = enumerate_ellipsoid(e, dim_cap);

    CountVolumeReport rep;
    rep.count = Int(pts.size());
    Real logvol = ball_volume_log(n) + n * log(t) - Real(d) * n / 2 * log(gamma);
    rep.log_ratio = log(Real(rep.count)) - logvol;
    rep.lower_bound = -Real(n) * log(Real(2));
    Real cap_term = gamma < 1 ? rmin(Real(n), 1 / (1 - gamma)) : Real(n);
    rep.upper_scale = Real(n) * log(cap_term);
    rep.empirical_c2 = rep.upper_scale > 0 && rep.log_ratio > 0 ? rep.log_ratio / rep.upper_scale : Real(0);
    return rep;
}

}  // namespace ivpcap
