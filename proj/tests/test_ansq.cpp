#include <gtest/gtest.h>

#include "qh/ansq.hpp"

using namespace qh;

class AnsqAxioms : public ::testing::TestWithParam<std::pair<uint32_t, uint32_t>> {};

TEST_P(AnsqAxioms, QuasiHopf) {
    auto [n, s] = GetParam();
    Ansq A = build_ansq(Params(n, s));
    EXPECT_EQ(A.H.dim, n * n * n / s);
    Report r = check_quasi_bialgebra(A.H);
    r.append(check_antipode(A.H));
    EXPECT_TRUE(r.ok()) << r.first_failure();
}

INSTANTIATE_TEST_SUITE_P(Small, AnsqAxioms,
                         ::testing::Values(std::make_pair(2u, 1u), std::make_pair(2u, 2u), std::make_pair(3u, 1u),
                                           std::make_pair(3u, 3u), std::make_pair(4u, 2u), std::make_pair(4u, 4u)));

TEST(Ansq, PhiAtN2S1) {
    Params p(2, 1);
    Ansq A = build_ansq(p);
    // obar = -1 and obar^{i floor((j+k)/2)} differs from 1 only at i = j = k = 1
    size_t off = 0;
    for (auto& [key, c] : A.H.phi.entries()) {
        auto idx = A.H.phi.unpack(key);
        for (uint32_t t : idx) EXPECT_EQ(A.degree(t), 0u);
        if (!c.is_one()) {
            ++off;
            EXPECT_EQ(c, -p.one());
            EXPECT_EQ(idx, (std::vector<uint32_t>{A.index(1, 0), A.index(1, 0), A.index(1, 0)}));
        }
    }
    EXPECT_EQ(off, 1u);
    EXPECT_EQ(A.H.phi.entries().size(), 8u);
}

TEST(Ansq, AlphaBeta) {
    for (auto [n, s] : {std::make_pair(2u, 1u), std::make_pair(3u, 1u), std::make_pair(4u, 2u)}) {
        Ansq A = build_ansq(Params(n, s));
        EXPECT_EQ(A.H.alpha, A.g2_pow(-int64_t(s)));
        EXPECT_EQ(A.H.beta, A.H.unit);
    }
}

TEST(Ansq, Idempotents) {
    Params p(3, 1);
    Ansq A = build_ansq(p);
    auto e = idempotents(A);
    SparseTensor sum = A.H.zero(1);
    for (uint32_t i = 0; i < p.n; ++i) {
        sum += e[i];
        for (uint32_t j = 0; j < p.n; ++j) EXPECT_EQ(A.H.mul(e[i], e[j]), i == j ? e[i] : A.H.zero(1));
    }
    EXPECT_EQ(sum, A.H.unit);
    EXPECT_EQ(A.H.mul(A.g2_pow(1), e[1]), p.obar(1) * e[1]);
    // the group-basis formula 1_i = (1/n) sum_j (obar^{n-i})^j g2^j
    for (uint32_t i = 0; i < p.n; ++i) {
        SparseTensor f = A.H.zero(1);
        for (uint32_t j = 0; j < p.n; ++j) f += (p.obar(int64_t(p.n - i) * j) * CycloNum(p.M(), Rational(1, p.n))) * A.g2_pow(j);
        EXPECT_EQ(f, e[i]) << i;
    }
}

TEST(Ansq, DualBasis) {
    Ansq A = build_ansq(Params(2, 1));
    auto f = dual_basis_functionals(A);
    for (uint32_t a = 0; a < A.H.dim; ++a)
        for (uint32_t b = 0; b < A.H.dim; ++b)
            EXPECT_EQ(evaluate(f[a], A.H.basis(b)), a == b ? A.p.one() : A.p.zero());
    // eps(g2) = 1 gives eps(1_i) = delta_{i0}, and eps(x) = 0
    EXPECT_EQ(counit_functional(A.H), f[A.index(0, 0)]);
}

TEST(Ansq, NilpotencyIndex) {
    for (auto [n, s] : {std::make_pair(2u, 1u), std::make_pair(4u, 2u), std::make_pair(3u, 3u)}) {
        Ansq A = build_ansq(Params(n, s));
        SparseTensor x = A.H.unit;
        for (uint32_t k = 1; k < A.p.nil(); ++k) x = A.H.mul(x, A.x());
        EXPECT_FALSE(x.entries().empty());
        EXPECT_TRUE(A.H.mul(x, A.x()).entries().empty());
    }
}

TEST(Ansq, CounitIdentities) {
    Ansq A = build_ansq(Params(3, 1));
    for (uint32_t a = 0; a < A.H.dim; ++a) {
        const SparseTensor& d = A.H.comult.images[a];
        SparseTensor l = A.H.eps(d, 0), r = A.H.eps(d, 1);
        EXPECT_EQ(l, A.H.basis(a));
        EXPECT_EQ(r, A.H.basis(a));
    }
}

TEST(Ansq, RejectsNonDivisor) { EXPECT_THROW(build_ansq(Params(4, 3)), std::invalid_argument); }

// damaged structure must be caught
TEST(Ansq, TrivialReassociatorFails) {
    Ansq A = build_ansq(Params(2, 1));
    QuasiHopfData H = A.H;
    H.phi = H.unit_tensor(3);
    H.phi_inv = H.phi;
    EXPECT_FALSE(check_quasi_bialgebra(H).ok());
}

TEST(Ansq, UnitAlphaFails) {
    Ansq A = build_ansq(Params(2, 1));
    QuasiHopfData H = A.H;
    H.alpha = H.unit;
    EXPECT_FALSE(check_antipode(H).ok());
}
