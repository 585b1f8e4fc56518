#include <gtest/gtest.h>

#include "qh/majid.hpp"

using namespace qh;

TEST(Majid, SmallProducts) {
    Params p(3, 1);
    MajidData M = build_mnsq(p);
    // p_0^1 p_0^1 = (1 + q^{-s}) p_0^2
    SparseTensor sq = M.mul(M.basis(M.index(0, 1)), M.basis(M.index(0, 1)));
    EXPECT_EQ(sq, (p.one() + p.q(-1)) * M.basis(M.index(0, 2)));
    for (uint32_t i = 0; i < p.n; ++i)
        for (uint32_t j = 0; j < p.n; ++j)
            EXPECT_EQ(M.mul(M.basis(M.index(i, 0)), M.basis(M.index(j, 0))), M.basis(M.index(i + j, 0)));
    EXPECT_EQ(M.dim, 27u);
}

// the left-nested power (..((p p) p)..) p of p = p_0^1 vanishes exactly at n^2/s factors
TEST(Majid, NestedPowerNilpotency) {
    for (auto [n, s] : {std::pair{2u, 1u}, std::pair{3u, 1u}, std::pair{4u, 2u}}) {
        MajidData M = build_mnsq(Params(n, s));
        SparseTensor y = M.basis(M.index(0, 1)), acc = y;
        for (uint32_t l = 2; l <= M.p.nil(); ++l) {
            acc = M.mul(acc, y);
            if (l < M.p.nil()) EXPECT_FALSE(acc.is_zero()) << n << "," << s << " l=" << l;
        }
        EXPECT_TRUE(acc.is_zero());
    }
}

TEST(Majid, AntipodeSignOfP01) {
    for (auto [n, s] : {std::pair{2u, 1u}, std::pair{3u, 1u}, std::pair{4u, 2u}}) {
        MajidData M = build_mnsq(Params(n, s));
        SparseTensor derived = M.antipode.images[M.index(0, 1)];
        SparseTensor printed = printed_antipode_p01(M);
        EXPECT_EQ(derived, -M.p.one() * printed);
        EXPECT_TRUE(antipode_alpha_residual_p01(M, derived).is_zero());
        EXPECT_FALSE(antipode_alpha_residual_p01(M, printed).is_zero());
        for (uint32_t i = 0; i < n; ++i)
            EXPECT_EQ(M.antipode.images[M.index(i, 0)], M.basis(M.index(n - i, 0)));
    }
}

class MajidAxioms : public ::testing::TestWithParam<std::pair<uint32_t, uint32_t>> {};

TEST_P(MajidAxioms, AllPass) {
    auto [n, s] = GetParam();
    MajidData M = build_mnsq(Params(n, s));
    Report r = check_majid_axioms(M);
    EXPECT_TRUE(r.ok()) << r.first_failure();
    EXPECT_EQ(r.checks.size(), 11u);
}

TEST_P(MajidAxioms, DualToAnsq) {
    auto [n, s] = GetParam();
    Params p(n, s);
    Ansq A = build_ansq(p);
    MajidData M = build_mnsq(p);
    Pairing pr;
    Report r = duality_iso(A, M, &pr);
    EXPECT_TRUE(r.ok()) << r.first_failure();
    // <1_a x^c, p_i^l> = delta_{lc} delta_{a, i+c}
    for (uint32_t a = 0; a < n; ++a)
        for (uint32_t c = 0; c < p.nil(); ++c)
            for (uint32_t i = 0; i < n; ++i)
                for (uint32_t l = 0; l < p.nil(); ++l) {
                    bool nz = l == c && a == (i + c) % n;
                    EXPECT_EQ(pr.P[A.index(a, c)][M.index(i, l)], nz ? p.one() : p.zero());
                }
}

INSTANTIATE_TEST_SUITE_P(Small, MajidAxioms,
                         ::testing::Values(std::make_pair(2u, 1u), std::make_pair(2u, 2u), std::make_pair(3u, 1u)));

TEST(Majid, TrivialPhiBreaksQuasiAssociativity) {
    MajidData M = build_mnsq(Params(2, 1));
    SparseTensor triv({M.dim, M.dim, M.dim}, M.order);
    for (uint32_t i = 0; i < 2; ++i)
        for (uint32_t j = 0; j < 2; ++j)
            for (uint32_t k = 0; k < 2; ++k) triv.add({M.index(i, 0), M.index(j, 0), M.index(k, 0)}, M.p.one());
    Report r = check_majid_axioms(M, &triv);
    const CheckRecord* qa = r.find("quasi_associativity");
    ASSERT_NE(qa, nullptr);
    EXPECT_EQ(qa->status, Status::fail);
    EXPECT_FALSE(qa->witness.empty());
}
