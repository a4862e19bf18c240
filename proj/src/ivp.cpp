#include "ivpcap/ivp.hpp"

#include <algorithm>

namespace ivpcap {

Int binomial(long long n, unsigned k) {
    if (k == 0) return 1;
    if (n >= 0 && static_cast<unsigned long long>(n) < k) return 0;
    // falling factorial n(n-1)...(n-k+1) / k!, exact for any integer n
    Int num = 1;
    for (unsigned i = 0; i < k; ++i) num *= Int(n) - i;
    Int den = 1;
    for (unsigned i = 2; i <= k; ++i) den *= i;
    return num / den;
}

Real binomial_real(long long n, unsigned k) { return Real(binomial(n, k)); }

IvpCoeffs IvpCoeffs::make(std::vector<Int> c) {
    while (c.size() > 1 && c.back() == 0) c.pop_back();
    if (c.empty()) c.push_back(Int(0));
    IvpCoeffs p;
    p.degree = static_cast<unsigned>(c.size() - 1);
    p.coeffs = std::move(c);
    return p;
}

Int eval(const IvpCoeffs& p, long long n) {
    Int s = 0;
    for (unsigned k = 0; k <= p.degree; ++k) s += p.coeffs[k] * binomial(n, k);
    return s;
}

std::vector<Rat> to_monomial(const IvpCoeffs& p) {
    // binom(x,k) coefficients by the recurrence b_k = b_{k-1} * (x-(k-1))/k
    std::vector<Rat> acc(p.degree + 1, Rat(0));
    std::vector<Rat> basis{Rat(1)};
    for (unsigned k = 0; k <= p.degree; ++k) {
        if (k > 0) {
            std::vector<Rat> next(k + 1, Rat(0));
            for (unsigned j = 0; j < basis.size(); ++j) {
                next[j + 1] += basis[j] / k;
                next[j] -= basis[j] * Rat(Int(k) - 1, Int(k));
            }
            basis = std::move(next);
        }
        Rat ck(p.coeffs[k]);
        for (unsigned j = 0; j < basis.size(); ++j) acc[j] += ck * basis[j];
    }
    return acc;
}

Rat eval_monomial(const std::vector<Rat>& q, long long n) {
    Rat s = 0;
    for (auto it = q.rbegin(); it != q.rend(); ++it) s = s * n + *it;
    return s;
}

IvpCoeffs from_monomial(const std::vector<Rat>& q) {
    size_t sz = q.size();
    while (sz > 1 && q[sz - 1] == 0) --sz;
    unsigned d = static_cast<unsigned>(sz == 0 ? 0 : sz - 1);
    // c_k is the k-th forward difference of the value sequence at 0
    std::vector<Rat> row(d + 1);
    for (unsigned n = 0; n <= d; ++n) row[n] = eval_monomial(q, n);
    std::vector<Int> c(d + 1);
    for (unsigned k = 0; k <= d; ++k) {
        if (denominator(row[0]) != 1) throw NotIntegerValued("monomial polynomial is not integer-valued");
        c[k] = numerator(row[0]);
        for (unsigned j = 0; j + k + 1 <= d; ++j) row[j] = row[j + 1] - row[j];
    }
    return IvpCoeffs::make(std::move(c));
}

GrowthSpec::GrowthSpec(Real a_, std::optional<Real> b_, NormMode m, Real t_)
    : a(std::move(a_)), b(std::move(b_)), mode(m), t(std::move(t_)) {
    if (a <= 1) throw InvalidSpec("base a must exceed 1");
    if (b && *b <= 1) throw InvalidSpec("base b must exceed 1");
    if (t <= 0) throw InvalidSpec("threshold t must be positive");
}

Real c_a(const Real& a) {
    if (a <= 1) throw InvalidBase("c_a requires a > 1");
    Real la = log(a);
    auto ok = [&](const Real& c) {
        return exp(Real(2) / c) <= a && 6 * a * c <= exp(c / 2 * la) && 1 / (a - 1) <= exp(c / 2 * la);
    };
    Real e = exp(Real(1));
    Real lo = e + Real("1e-6");
    if (ok(lo)) return lo;
    Real hi = lo;
    while (!ok(hi)) hi *= 2;
    for (int i = 0; i < 80; ++i) {
        Real mid = (lo + hi) / 2;
        (ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

Real c_ab(const Real& a, const Real& b) { return rmax(c_a(a), c_a(b)); }

long long linf_check_range(const GrowthSpec& spec, unsigned d, Side side) {
    if (side == Side::Positive) {
        return ceil_to_int(c_a(spec.a) * d).convert_to<long long>();
    }
    if (!spec.b) throw InvalidSpec("negative side requires base b");
    // the degree shift P(-n) -> Q(n-1) costs one extra point
    return ceil_to_int(c_a(*spec.b) * d).convert_to<long long>() + 1;
}

namespace {

// Exact value |P(s*n)| for the requested side (s = +1 or -1).
Int abs_value_at(const IvpCoeffs& p, long long n, Side side) {
    Int v = eval(p, side == Side::Positive ? n : -n);
    return v < 0 ? -v : v;
}

CertifiedReal linf_functional(const IvpCoeffs& p, const GrowthSpec& spec, Side side) {
    const Real& base = side == Side::Positive ? spec.a : *spec.b;
    long long n0 = side == Side::Positive ? 0 : 1;
    long long n1 = linf_check_range(spec, p.degree, side);
    if (side == Side::Negative) n1 = std::max(n1, (long long)1);
    Real inv = 1 / base;
    Real w = side == Side::Positive ? Real(1) : inv;
    Real best = 0;
    for (long long n = n0; n <= n1; ++n) {
        Real v = Real(abs_value_at(p, n, side)) * w;
        if (v > best) best = v;
        w *= inv;
    }
    return {best, rounding_eps() * (best + 1) * (n1 + 4)};
}

CertifiedReal l2_functional(const IvpCoeffs& p, const GrowthSpec& spec, Side side, const Real& eps,
                            bool weighted) {
    const Real& base = side == Side::Positive ? spec.a : *spec.b;
    long long n0 = side == Side::Positive ? 0 : 1;
    unsigned d = p.degree;
    Real q = 1 / (base * base);
    Real norm1 = 0;
    for (const Int& c : p.coeffs) norm1 += Real(c < 0 ? -c : c);
    if (norm1 == 0) return {Real(0), Real(0)};

    Real sum = 0;
    Real qn = side == Side::Positive ? Real(1) : q;
    long long n = n0;
    Real tail;
    while (true) {
        Int v = abs_value_at(p, n, side);
        Real term = Real(v * v) * qn;
        if (weighted) term /= (n + 1);
        sum += term;
        if (n >= 2 * d + 2) {
            // |P(+-m)| <= |c|_1 binom(m+d,d) for m > 2d on either side, and the
            // term ratio ((m+1+d)/(m+1))^2 q is below 1 from here on
            Real ratio = pow((Real(n) + 1 + d) / (Real(n) + 1), 2) * q;
            if (ratio < 1) {
                Real first = pow(norm1 * Real(binomial(n + 1 + d, d)), 2) * qn * q;
                tail = first / (1 - ratio);
                if (tail <= eps) break;
            }
        }
        qn *= q;
        ++n;
        if (n > 100000000) throw InvalidSpec("l2 series failed to reach tolerance");
    }
    return {sum, tail + rounding_eps() * (sum + 1) * (n + 4)};
}

}  // namespace

CertifiedReal growth_functional(const IvpCoeffs& p, const GrowthSpec& spec, Side side, const Real& eps) {
    if (side == Side::Negative && !spec.b) throw InvalidSpec("negative side requires base b");
    if (p.is_zero()) return {Real(0), Real(0)};
    switch (spec.mode) {
        case NormMode::LInf:
            return linf_functional(p, spec, side);
        case NormMode::L2:
            return l2_functional(p, spec, side, eps, false);
        case NormMode::L2Weighted:
            return l2_functional(p, spec, side, eps, true);
    }
    throw InvalidSpec("unknown norm mode");
}

}  // namespace ivpcap
