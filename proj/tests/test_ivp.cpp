#include <doctest.h>

#include "ivpcap/ivp.hpp"

#include <random>

using namespace ivpcap;

namespace {
IvpCoeffs make_ivp(std::initializer_list<long long> cs) {
    std::vector<Int> v;
    for (long long c : cs) v.emplace_back(c);
    return IvpCoeffs::make(std::move(v));
}

IvpCoeffs random_ivp(std::mt19937_64& rng, unsigned dmax, long long cmax) {
    std::uniform_int_distribution<unsigned> dd(0, dmax);
    std::uniform_int_distribution<long long> cd(-cmax, cmax);
    unsigned d = dd(rng);
    std::vector<Int> v;
    for (unsigned k = 0; k <= d; ++k) v.emplace_back(cd(rng));
    return IvpCoeffs::make(std::move(v));
}
}  // namespace

TEST_CASE("binomial basics") {
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(10, 0) == 1);
    CHECK(binomial(3, 5) == 0);
    // binom(-1,k) = (-1)^k
    for (unsigned k = 0; k <= 5; ++k) CHECK(binomial(-1, k) == (k % 2 ? -1 : 1));
    CHECK(binomial(-3, 2) == 6);
    CHECK(binomial(6, 2) == 15);
    CHECK(abs(binomial(-3, 2)) <= binomial(6, 2));
    // identity binom(-n,k) = (-1)^k binom(n+k-1,k)
    for (long long n = 1; n <= 8; ++n) {
        for (unsigned k = 0; k <= 6; ++k) {
            Int lhs = binomial(-n, k);
            Int rhs = binomial(n + k - 1, k);
            if (k % 2) rhs = -rhs;
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("eval") {
    IvpCoeffs one = make_ivp({1});
    CHECK(eval(one, 100) == 1);

    // c=(0,2,1) is n(n+3)/2
    IvpCoeffs p = make_ivp({0, 2, 1});
    for (long long n = 0; n <= 10; ++n) CHECK(eval(p, n) == Int(n) * (n + 3) / 2);
    CHECK(eval(p, 0) == 0);
    CHECK(eval(p, 1) == 2);
    CHECK(eval(p, 2) == 5);
    CHECK(eval(p, 3) == 9);
    CHECK(eval(p, 4) == 14);

    // binom(-2,2) = 3
    IvpCoeffs q = make_ivp({0, 0, 1});
    CHECK(eval(q, -2) == 3);
}

TEST_CASE("canonical form") {
    IvpCoeffs z = make_ivp({0, 0, 0});
    CHECK(z.degree == 0);
    CHECK(z.is_zero());
    IvpCoeffs p = make_ivp({1, 2, 0});
    CHECK(p.degree == 1);
}

TEST_CASE("monomial conversion") {
    // binom(x,2) = (x^2 - x)/2
    IvpCoeffs q = make_ivp({0, 0, 1});
    auto mono = to_monomial(q);
    REQUIRE(mono.size() == 3);
    CHECK(mono[0] == 0);
    CHECK(mono[1] == Rat(-1, 2));
    CHECK(mono[2] == Rat(1, 2));

    IvpCoeffs one = make_ivp({1});
    auto m1 = to_monomial(one);
    REQUIRE(m1.size() == 1);
    CHECK(m1[0] == 1);

    // round trip on random polynomials
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 40; ++trial) {
        IvpCoeffs p = random_ivp(rng, 8, 50);
        CHECK(from_monomial(to_monomial(p)) == p);
    }

    // x/2 is not integer-valued
    CHECK_THROWS_AS(from_monomial(std::vector<Rat>{Rat(0), Rat(1, 2)}), NotIntegerValued);
}

TEST_CASE("binomial-basis eval agrees with monomial eval") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 25; ++trial) {
        IvpCoeffs p = random_ivp(rng, 10, 30);
        auto mono = to_monomial(p);
        for (long long n = -50; n <= 50; n += 7) {
            Rat mv = eval_monomial(mono, n);
            CHECK(denominator(mv) == 1);
            CHECK(numerator(mv) == eval(p, n));
        }
    }
}

TEST_CASE("growth functional l2 explicit values") {
    set_precision_bits(256);
    Real phi = golden_ratio();
    GrowthSpec spec(phi, std::nullopt, NormMode::L2, Real(1));
    CertifiedReal v = growth_functional(make_ivp({1}), spec, Side::Positive, Real("1e-45"));
    CHECK(abs(v.value - phi) < Real("1e-30"));
    CHECK(v.error < Real("1e-38"));

    // weighted sum for P(x) = x(x-3)/2, the explicit constant
    GrowthSpec wspec(phi, std::nullopt, NormMode::L2Weighted, Real(1));
    CertifiedReal w = growth_functional(make_ivp({0, -1, 1}), wspec, Side::Positive, Real("1e-45"));
    Real target = 4 * phi * phi * log(phi) - Real(15) / (2 * phi);
    CHECK(abs(w.value - target) < Real("1e-30"));

    // zero polynomial
    CertifiedReal z = growth_functional(make_ivp({0}), spec, Side::Positive);
    CHECK(z.value == 0);
    CHECK(z.error == 0);
}

TEST_CASE("growth functional error paths") {
    GrowthSpec spec(Real(2), std::nullopt, NormMode::L2, Real(1));
    CHECK_THROWS_AS(growth_functional(make_ivp({1}), spec, Side::Negative), InvalidSpec);
    CHECK_THROWS_AS(GrowthSpec(Real(1), std::nullopt, NormMode::L2, Real(1)), InvalidSpec);
    CHECK_THROWS_AS(GrowthSpec(Real(2), Real("0.5"), NormMode::L2, Real(1)), InvalidSpec);
    CHECK_THROWS_AS(GrowthSpec(Real(2), std::nullopt, NormMode::L2, Real(0)), InvalidSpec);
}

TEST_CASE("linf supremum is attained within the scanned range") {
    set_precision_bits(192);
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 15; ++trial) {
        IvpCoeffs p = random_ivp(rng, 10, 20);
        if (p.is_zero()) continue;
        for (Real base : {Real(2), golden_ratio()}) {
            GrowthSpec spec(base, base, NormMode::LInf, Real(1));
            for (Side side : {Side::Positive, Side::Negative}) {
                CertifiedReal sup = growth_functional(p, spec, side);
                // extending the range four-fold never changes the maximum
                long long n1 = linf_check_range(spec, p.degree, side);
                Real inv = 1 / base;
                Real w = side == Side::Positive ? Real(1) : inv;
                Real best = 0;
                for (long long n = side == Side::Positive ? 0 : 1; n <= 4 * n1; ++n) {
                    Int v = eval(p, side == Side::Positive ? n : -n);
                    if (v < 0) v = -v;
                    Real x = Real(v) * w;
                    if (x > best) best = x;
                    w *= inv;
                }
                CHECK(abs(sup.value - best) <= 2 * sup.error + Real("1e-40"));
            }
        }
    }
}

TEST_CASE("l2 series tail bound dominates the doubled-truncation remainder") {
    set_precision_bits(256);
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        IvpCoeffs p = random_ivp(rng, 6, 10);
        GrowthSpec spec(Real(2), std::nullopt, NormMode::L2, Real(1));
        CertifiedReal coarse = growth_functional(p, spec, Side::Positive, Real("1e-10"));
        CertifiedReal fine = growth_functional(p, spec, Side::Positive, Real("1e-60"));
        CHECK(fine.value >= coarse.value - coarse.error);  // monotone up to slack
        CHECK(abs(fine.value - coarse.value) <= coarse.error);
    }
}

TEST_CASE("c_a explicit conditions") {
    set_precision_bits(128);
    Real c2 = c_a(Real(2));
    CHECK(c2 >= Real(2) / log(Real(2)));
    CHECK(c2 > Real(14));
    CHECK(c2 < Real(16));
    // conditions hold at c2 and fail slightly below
    Real la = log(Real(2));
    CHECK(6 * 2 * c2 <= exp(c2 / 2 * la) + Real("1e-20"));
    Real below = c2 - Real("0.05");
    bool all_hold = exp(Real(2) / below) <= 2 && 6 * 2 * below <= exp(below / 2 * la) &&
                    Real(1) <= exp(below / 2 * la);
    CHECK(!all_hold);

    // nonincreasing in a, clamped above e
    Real prev = c_a(Real("1.3"));
    for (Real a : {Real("1.6"), Real(2), Real(3), Real(10), Real(1000000)}) {
        Real c = c_a(a);
        CHECK(c <= prev + Real("1e-25"));
        CHECK(c > exp(Real(1)));
        prev = c;
    }
    CHECK(c_ab(Real(2), Real(3)) == c_a(Real(2)));
}
