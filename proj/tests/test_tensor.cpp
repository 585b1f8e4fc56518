#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "qh/qha.hpp"

using namespace qh;

using qh_test::group_algebra;

TEST(Tensor, PackUnpackRoundTrip) {
    SparseTensor t({3, 5, 7}, 4);
    for (uint32_t a = 0; a < 3; ++a)
        for (uint32_t b = 0; b < 5; ++b)
            for (uint32_t c = 0; c < 7; ++c) EXPECT_EQ(t.unpack(t.pack({a, b, c})), (std::vector<uint32_t>{a, b, c}));
    EXPECT_THROW(t.pack({3, 0, 0}), std::out_of_range);
}

TEST(Tensor, JsonRoundTrip) {
    SparseTensor t({4, 4}, 8);
    t.add({1, 2}, CycloNum::root(8, 3));
    t.add({3, 0}, CycloNum::one(8) * Rational(-2, 5));
    EXPECT_EQ(SparseTensor::from_json(t.to_json()), t);
}

TEST(Tensor, PermuteAndApply) {
    SparseTensor t({2, 3}, 4);
    t.add({1, 2}, CycloNum::one(4));
    SparseTensor p = permute_legs(t, {1, 0});
    EXPECT_EQ(p.dims(), (std::vector<uint32_t>{3, 2}));
    EXPECT_TRUE(p.at({2, 1}).is_one());
    LinearMap f(3, {2, 2}, 4);
    f.images[2].add({0, 1}, CycloNum::root(4, 1));
    SparseTensor r = apply_map_to_leg(t, 1, f);
    EXPECT_EQ(r.dims(), (std::vector<uint32_t>{2, 2, 2}));
    EXPECT_EQ(r.at({1, 0, 1}), CycloNum::root(4, 1));
}

TEST(Tensor, GroupAlgebraPassesAllChecks) {
    QuasiHopfData H = group_algebra(4, 8);
    Report r = check_quasi_bialgebra(H);
    r.append(check_antipode(H));
    EXPECT_TRUE(r.ok()) << r.first_failure();
}

TEST(Tensor, BrokenAssociativityIsCaught) {
    QuasiHopfData H = group_algebra(3, 6);
    auto t = std::make_shared<MultTable>(*H.mult);
    t->set(1, 1, {{2, CycloNum::root(6, 1)}});
    H.mult = t;
    EXPECT_FALSE(check_associative_exhaustive(*t).empty());
}

TEST(Tensor, InverseStrategies) {
    QuasiHopfData H = group_algebra(3, 6);
    // 1 + g is invertible in kZ_3 since -1 is not a cube root of unity
    SparseTensor x = H.unit + H.basis(1);
    auto inv = invert_element(x, H.tables(1), H.unit);
    EXPECT_EQ(inv.strategy, "linear");
    EXPECT_EQ(H.mul(x, inv.inverse), H.unit);
    SparseTensor bad = H.unit + H.basis(1) + H.basis(2);
    EXPECT_THROW(invert_element(bad, H.tables(1), H.unit), std::domain_error);
}

// a coboundary twist of a Hopf algebra stays coassociative up to the new phi
TEST(Tensor, TwistOfGroupAlgebraStaysQuasiHopf) {
    const uint32_t m = 3, N = 6;
    QuasiHopfData H = group_algebra(m, N);
    // J = sum_{a,b} c_ab g^a (x) g^b normalized so that eps(x)id(J) = 1 = id(x)eps(J)
    SparseTensor J = H.unit_tensor(2);
    J.add({1, 2}, CycloNum::one(N) * Rational(1, 3));
    J.add({1, 0}, -CycloNum::one(N) * Rational(1, 3));
    J.add({0, 2}, -CycloNum::one(N) * Rational(1, 3));
    J.add({0, 0}, CycloNum::one(N) * Rational(1, 3));
    ASSERT_EQ(H.eps(J, 0), H.unit);
    ASSERT_EQ(H.eps(J, 1), H.unit);
    TwistResult t = twist(H, J);
    EXPECT_TRUE(t.report.ok()) << t.report.first_failure();
}

TEST(Functionals, ConvolutionAndActions) {
    QuasiHopfData H = group_algebra(4, 8);
    // characters chi_k(g^a) = i^{ka}
    auto chi = [&](int k) {
        Functional f = H.zero(1);
        for (uint32_t a = 0; a < 4; ++a) f.add(a, CycloNum::root(8, 2 * k * a));
        return f;
    };
    EXPECT_EQ(convolution(chi(1), chi(2), H), chi(3));
    EXPECT_EQ(convolution(counit_functional(H), chi(1), H), chi(1));
    EXPECT_EQ(act_left(H.basis(1), chi(1), H), CycloNum::root(8, 2) * chi(1));
    EXPECT_EQ(act_right(chi(1), H.basis(3), H), CycloNum::root(8, 6) * chi(1));
}
