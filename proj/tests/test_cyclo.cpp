#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "qh/cyclo.hpp"
#include "qh/linalg.hpp"

using namespace qh;
using cd = std::complex<double>;

namespace {

cd numeric(const CycloNum& z) {
    const double pi = std::acos(-1.0);
    cd r = 0;
    for (auto& [e, c] : z.terms()) {
        double v = c.to_mpq().get_d();
        r += v * std::polar(1.0, 2 * pi * double(e) / z.order());
    }
    return r;
}

CycloNum random_num(uint32_t N, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coef(-5, 5), den(1, 4), ex(0, 2 * N);
    CycloNum z = CycloNum::zero(N);
    for (int i = 0; i < 4; ++i) z += CycloNum::root(N, ex(rng)) * Rational(coef(rng), den(rng));
    return z;
}

}  // namespace

TEST(Rational, OverflowPromotesAndDemotes) {
    Rational big(INT64_MAX);
    Rational sq = big * big;
    EXPECT_FALSE(sq.is_small());
    mpq_class ref = mpq_class(INT64_MAX) * mpq_class(INT64_MAX);
    EXPECT_EQ(sq.to_mpq(), ref);
    Rational back = sq / big;
    EXPECT_TRUE(back.is_small());
    EXPECT_EQ(back, big);
}

TEST(Rational, RandomAgainstGmp) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int64_t> d(-(int64_t(1) << 40), int64_t(1) << 40);
    for (int i = 0; i < 2000; ++i) {
        int64_t a = d(rng), b = d(rng) | 1, c = d(rng), e = d(rng) | 1;
        Rational x(a, b), y(c, e);
        mpq_class X(mpz_class(std::to_string(a)), mpz_class(std::to_string(b)));
        mpq_class Y(mpz_class(std::to_string(c)), mpz_class(std::to_string(e)));
        X.canonicalize();
        Y.canonicalize();
        ASSERT_EQ((x + y).to_mpq(), mpq_class(X + Y));
        ASSERT_EQ((x * y).to_mpq(), mpq_class(X * Y));
        ASSERT_EQ((x - y).to_mpq(), mpq_class(X - Y));
        if (!y.is_zero()) ASSERT_EQ((x / y).to_mpq(), mpq_class(X / Y));
    }
}

TEST(Rational, ParseRoundTrip) {
    for (std::string s : {"0", "1", "-3/7", "123456789012345678901234567891/7"}) EXPECT_EQ(Rational::parse(s).str(), s);
}

TEST(Cyclo, KnownPolynomials) {
    EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<int64_t>{-1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(8), (std::vector<int64_t>{1, 0, 0, 0, 1}));
    EXPECT_EQ(cyclotomic_polynomial(12), (std::vector<int64_t>{1, 0, -1, 0, 1}));
    EXPECT_EQ(cyclotomic_polynomial(18), (std::vector<int64_t>{1, 0, 0, -1, 0, 0, 1}));
    EXPECT_EQ(euler_phi(32), 16u);
    EXPECT_EQ(euler_phi(18), 6u);
}

TEST(Cyclo, RootsHaveExactOrder) {
    for (uint32_t N : {2u, 8u, 18u, 32u}) {
        CycloNum z = CycloNum::root(N, 1);
        EXPECT_TRUE(z.pow(N).is_one());
        for (uint32_t d = 1; d < N; ++d)
            if (N % d == 0) EXPECT_FALSE(z.pow(d).is_one()) << N << " " << d;
    }
}

// arithmetic agrees with evaluation at exp(2 pi i / N)
TEST(Cyclo, FieldOpsMatchComplexEmbedding) {
    std::mt19937_64 rng(11);
    for (uint32_t N : {8u, 18u, 32u, 50u}) {
        for (int it = 0; it < 200; ++it) {
            CycloNum a = random_num(N, rng), b = random_num(N, rng);
            ASSERT_LT(std::abs(numeric(a * b) - numeric(a) * numeric(b)), 1e-9);
            ASSERT_LT(std::abs(numeric(a + b) - (numeric(a) + numeric(b))), 1e-9);
            if (!b.is_zero()) {
                CycloNum c = a / b;
                ASSERT_EQ(c * b, a);
            }
        }
    }
}

TEST(Cyclo, CanonicalFormIsUnique) {
    // 1 + i^2 = 0 in Q(zeta_8) and zeta_18^9 = -1
    CycloNum i = CycloNum::root(8, 2);
    EXPECT_TRUE((CycloNum::one(8) + i * i).is_zero());
    EXPECT_EQ(CycloNum::root(18, 9), -CycloNum::one(18));
    EXPECT_EQ(CycloNum::root(18, -1), CycloNum::root(18, 17));
}

TEST(Cyclo, ParseRoundTrip) {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 50; ++it) {
        CycloNum a = random_num(18, rng);
        EXPECT_EQ(CycloNum::parse(a.str()), a);
    }
}

TEST(Cyclo, EmbedPreservesValue) {
    CycloNum a = CycloNum::root(8, 3) + CycloNum::one(8) * Rational(2, 3);
    CycloNum b = a.embed(32);
    EXPECT_LT(std::abs(numeric(a) - numeric(b)), 1e-12);
    EXPECT_EQ(b.order(), 32u);
}

// q-Pascal against the factorial formula
TEST(Cyclo, QBinomialMatchesFactorialQuotient) {
    for (uint32_t N : {18u, 32u}) {
        CycloNum h = CycloNum::root(N, -1);
        auto qint = [&](uint32_t k) {
            CycloNum r = CycloNum::zero(N);
            for (uint32_t j = 0; j < k; ++j) r += h.pow(j);
            return r;
        };
        auto qfact = [&](uint32_t k) {
            CycloNum r = CycloNum::one(N);
            for (uint32_t j = 1; j <= k; ++j) r *= qint(j);
            return r;
        };
        for (uint32_t l = 0; l < 6; ++l)
            for (uint32_t m = 0; m < 6; ++m) {
                CycloNum den = qfact(l) * qfact(m);
                if (den.is_zero()) continue;
                EXPECT_EQ(q_binomial(l, m, h), qfact(l + m) / den) << l << "," << m;
            }
    }
}

// floor((i + j mod n)/n) = floor((i+j)/n) - floor(j/n)
TEST(Cyclo, FloorIdentityExhaustive) {
    for (int64_t n = 2; n <= 8; ++n)
        for (int64_t i = 0; i < 3 * n; ++i)
            for (int64_t j = 0; j < 3 * n; ++j)
                EXPECT_EQ(floor_frac(i + qh::remainder(j, n), n), floor_frac(i + j, n) - floor_frac(j, n)) << n << i << j;
    EXPECT_EQ(floor_frac(2 + qh::remainder(int64_t(4), 3), 3), 1);
}

TEST(Params, RejectsNonDivisor) {
    EXPECT_THROW(Params(3, 2), std::invalid_argument);
    Params p(4, 2);
    EXPECT_EQ(p.M(), 32u);
    EXPECT_EQ(p.nil(), 8u);
    EXPECT_EQ(p.dim(), 32u);
    EXPECT_TRUE(p.obar(p.n).is_one());
    EXPECT_EQ(p.minus_one_root().pow(p.s), -p.one());
}

TEST(Linalg, InverseAndRank) {
    std::mt19937_64 rng(5);
    const uint32_t N = 18;
    CycloMatrix a(5, 5, N);
    for (size_t i = 0; i < 5; ++i)
        for (size_t j = 0; j < 5; ++j) a(i, j) = random_num(N, rng);
    CycloMatrix inv = invert(a);
    EXPECT_EQ(a * inv, CycloMatrix::identity(5, N));
    EXPECT_EQ(rank(a), 5u);
    for (size_t j = 0; j < 5; ++j) a(4, j) = a(0, j) + a(1, j) * CycloNum::root(N, 1);
    EXPECT_EQ(rank(a), 4u);
    EXPECT_THROW(invert(a), std::domain_error);
    std::vector<SparseRow> rows(5);
    for (size_t i = 0; i < 5; ++i)
        for (size_t j = 0; j < 5; ++j)
            if (!a(i, j).is_zero()) rows[i][j] = a(i, j);
    EXPECT_EQ(sparse_rank(rows), 4u);
}
