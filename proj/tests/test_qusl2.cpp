#include <gtest/gtest.h>

#include <random>

#include "qh/qusl2.hpp"

using namespace qh;

namespace {

void expect_all_pass(const Report& r) {
    for (auto& c : r.checks) EXPECT_EQ(c.status, Status::pass) << c.name << ": " << c.witness;
}

const QuslBuild& cached_q(uint32_t n, uint32_t s) {
    static std::map<std::pair<uint32_t, uint32_t>, std::unique_ptr<QuslBuild>> cache;
    auto& slot = cache[{n, s}];
    if (!slot) slot = std::make_unique<QuslBuild>(build_qusl2(Params(n, s)));
    return *slot;
}

const DoubleAlgebra& cached_d(uint32_t n, uint32_t s) {
    static std::map<std::pair<uint32_t, uint32_t>, std::unique_ptr<DoubleAlgebra>> cache;
    auto& slot = cache[{n, s}];
    if (!slot) slot = make_double(Params(n, s));
    return *slot;
}

// Oracle: rewriting on words over the letters a = g1, b = g2, x, y, applying one
// rule at a time to the leftmost offending spot until every word is a* b* x* y*.
struct WordRewriter {
    Params p;
    using Word = std::string;

    std::map<Word, CycloNum> run(std::map<Word, CycloNum> cur) const {
        const uint32_t n = p.n, N = p.nil(), s = p.s;
        const int64_t is = s, in = n;
        for (bool changed = true; changed;) {
            changed = false;
            std::map<Word, CycloNum> next;
            auto put = [&](const Word& w, const CycloNum& c) {
                if (c.is_zero()) return;
                auto it = next.find(w);
                if (it == next.end()) next.emplace(w, c);
                else it->second += c;
            };
            for (auto& [w, c] : cur) {
                bool done = false;
                for (size_t i = 0; i + 1 < w.size() && !done; ++i) {
                    std::string pre = w.substr(0, i), post = w.substr(i + 2);
                    char l = w[i], r = w[i + 1];
                    auto swap_with = [&](const CycloNum& k) {
                        put(pre + r + l + post, k * c);
                        done = true;
                    };
                    if (l == 'b' && r == 'a') swap_with(p.one());
                    else if (l == 'x' && r == 'a') swap_with(p.q(in * is - 2 * is));
                    else if (l == 'x' && r == 'b') swap_with(p.q(-in));
                    else if (l == 'y' && r == 'a') swap_with(p.q(2 * is - in * is));
                    else if (l == 'y' && r == 'b') swap_with(p.q(in));
                    else if (l == 'y' && r == 'x') {
                        put(pre + "xy" + post, p.q(is) * c);
                        put(pre + post, c);
                        put(pre + "a" + std::string(s, 'b') + post, -c);
                        done = true;
                    }
                }
                if (!done) {
                    // powers
                    auto run_of = [&](char ch) { return std::count(w.begin(), w.end(), ch); };
                    if (run_of('x') >= long(N) || run_of('y') >= long(N)) {
                        done = true;
                    } else if (run_of('a') >= long(n)) {
                        Word v = w;
                        v.erase(v.find('a'), n);
                        v.insert(std::count(v.begin(), v.end(), 'a'), std::string(2 * s, 'b'));
                        put(v, c);
                        done = true;
                    } else if (run_of('b') >= long(n)) {
                        Word v = w;
                        v.erase(v.find('b'), n);
                        put(v, c);
                        done = true;
                    } else {
                        put(w, c);
                    }
                }
                changed = changed || done;
            }
            cur = std::move(next);
        }
        return cur;
    }
    SparseTensor to_tensor(const Qusl& Q, const std::map<Word, CycloNum>& t) const {
        SparseTensor r = Q.H.zero(1);
        for (auto& [w, c] : t) {
            auto cnt = [&](char ch) { return static_cast<uint32_t>(std::count(w.begin(), w.end(), ch)); };
            r.add(Q.index(cnt('a'), cnt('b'), cnt('x'), cnt('y')), c);
        }
        return r;
    }
    Word word_of(const Qusl& Q, uint32_t k) const {
        auto [a, b, c, d] = Q.exps(k);
        return std::string(a, 'a') + std::string(b, 'b') + std::string(c, 'x') + std::string(d, 'y');
    }
};

}  // namespace

TEST(QuslNormalForm, RewritingExamples) {
    const Qusl& Q = cached_q(3, 1).Q;
    const Params& p = Q.p;
    const uint32_t s = p.s;
    // y x = q^s x y + 1 - g1 g2^s
    SparseTensor yx = normalize(Q, {QGen::y, QGen::x});
    SparseTensor want = p.q(s) * Q.mono(0, 0, 1, 1) + Q.H.unit - Q.mono(1, s, 0, 0);
    EXPECT_EQ(yx, want);
    // g1 x = obar^-s q^2s x g1
    EXPECT_EQ(normalize(Q, {QGen::g1, QGen::x}), (p.obar(-int64_t(s)) * p.q(2 * s)) * normalize(Q, {QGen::x, QGen::g1}));
    // g1^n = g2^2s
    std::vector<QGen> w(p.n, QGen::g1);
    EXPECT_EQ(normalize(Q, w), Q.g2_pow(2 * s));
    EXPECT_EQ(normalize(Q, {QGen::g1, QGen::g1_inv}), Q.H.unit);
    EXPECT_EQ(normalize(Q, {QGen::g2_inv, QGen::g2}), Q.H.unit);
}

TEST(QuslNormalForm, Dimension) {
    EXPECT_EQ(cached_q(2, 1).Q.H.dim, 64u);
    EXPECT_EQ(cached_q(2, 2).Q.H.dim, 16u);
    EXPECT_EQ(cached_q(3, 1).Q.H.dim, 729u);
}

TEST(QuslNormalForm, GroupPartClosed) {
    const Qusl& Q = cached_q(3, 1).Q;
    for (uint32_t a = 0; a < Q.p.n; ++a)
        for (uint32_t b = 0; b < Q.p.n; ++b)
            for (uint32_t c = 0; c < Q.p.n; ++c)
                for (uint32_t d = 0; d < Q.p.n; ++d) {
                    const Terms& t = (*Q.H.mult)(Q.index(a, b, 0, 0), Q.index(c, d, 0, 0));
                    ASSERT_EQ(t.size(), 1u);
                    auto e = Q.exps(t[0].first);
                    EXPECT_EQ(e[2] + e[3], 0u);
                    EXPECT_TRUE(t[0].second.is_one());
                }
}

TEST(QuslNormalForm, TableMatchesWordRewriting) {
    for (auto [n, s] : {std::make_pair(2u, 1u), std::make_pair(2u, 2u), std::make_pair(3u, 1u)}) {
        const Qusl& Q = cached_q(n, s).Q;
        WordRewriter R{Q.p};
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<uint32_t> pick(0, Q.H.dim - 1);
        const uint32_t count = Q.H.dim <= 64 ? Q.H.dim * Q.H.dim : 300;
        for (uint32_t t = 0; t < count; ++t) {
            uint32_t a = Q.H.dim <= 64 ? t / Q.H.dim : pick(rng), b = Q.H.dim <= 64 ? t % Q.H.dim : pick(rng);
            auto w = R.run({{R.word_of(Q, a) + R.word_of(Q, b), Q.p.one()}});
            ASSERT_EQ(Q.H.mul(Q.H.basis(a), Q.H.basis(b)), R.to_tensor(Q, w)) << n << "," << s << " pair " << a << "," << b;
        }
    }
}

class QuslParams : public ::testing::TestWithParam<std::pair<uint32_t, uint32_t>> {};

TEST_P(QuslParams, CoproductCounitAntipodeRespectRelations) {
    auto [n, s] = GetParam();
    expect_all_pass(cached_q(n, s).report);
}

TEST_P(QuslParams, CommutatorUnderCoproduct) {
    auto [n, s] = GetParam();
    const Qusl& Q = cached_q(n, s).Q;
    const QuasiHopfData& H = Q.H;
    auto t2 = H.tables(2);
    auto D = [&](const SparseTensor& a) { return H.comult.apply(a); };
    auto m2 = [&](const SparseTensor& a, const SparseTensor& b) { return legwise_multiply(a, b, t2); };
    SparseTensor lhs = m2(D(Q.y()), D(Q.x())) - Q.p.q(s) * m2(D(Q.x()), D(Q.y()));
    SparseTensor rhs = D(H.unit) - m2(D(Q.g1()), D(Q.g2_pow(s)));
    EXPECT_EQ(lhs, rhs);
}

TEST_P(QuslParams, AntipodeOfY) {
    auto [n, s] = GetParam();
    const Qusl& Q = cached_q(n, s).Q;
    const QuasiHopfData& H = Q.H;
    SparseTensor sum = H.zero(1);
    for (uint32_t i = 0; i < n; ++i) sum += Q.p.q(int64_t(s) * ((n - i) % n)) * Q.idem(i);
    SparseTensor want = -Q.p.one() * H.mul(H.mul(H.mul(Q.g1_inv(), Q.g2_pow(-int64_t(s))), Q.y()), sum);
    EXPECT_EQ(H.antipode.apply(Q.y()), want);
}

TEST_P(QuslParams, IdempotentsAreOrthogonal) {
    auto [n, s] = GetParam();
    const Qusl& Q = cached_q(n, s).Q;
    SparseTensor total = Q.H.zero(1);
    for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t j = 0; j < n; ++j)
            EXPECT_EQ(Q.H.mul(Q.idem(i), Q.idem(j)), i == j ? Q.idem(i) : Q.H.zero(1));
        total += Q.idem(i);
    }
    EXPECT_EQ(total, Q.H.unit);
}

INSTANTIATE_TEST_SUITE_P(Small, QuslParams,
                         ::testing::Values(std::make_pair(2u, 1u), std::make_pair(2u, 2u), std::make_pair(3u, 1u)));

TEST(QuslAxioms, SmallCasesExhaustive) {
    for (auto [n, s] : {std::make_pair(2u, 1u), std::make_pair(2u, 2u)}) {
        const QuasiHopfData& H = cached_q(n, s).Q.H;
        Report r = check_quasi_bialgebra(H);
        r.append(check_antipode(H));
        expect_all_pass(r);
    }
}

TEST(QuslAxioms, WrongCoproductIsRejected) {
    // the relations check is what stands between a transcription slip and a bad algebra
    const Qusl& Q = cached_q(2, 1).Q;
    const QuasiHopfData& H = Q.H;
    auto t2 = H.tables(2);
    SparseTensor dx = tensor_product(H.unit, Q.x()) + tensor_product(Q.x(), H.unit);
    SparseTensor dy = tensor_product(H.unit, Q.y()) + tensor_product(Q.y(), H.unit);
    std::string w = check_relations(
        Q.p, tensor_product(Q.g1(), Q.g1()), tensor_product(Q.g1_inv(), Q.g1_inv()), tensor_product(Q.g2(), Q.g2()),
        dx, dy, H.unit_tensor(2), [&](const SparseTensor& a, const SparseTensor& b) { return legwise_multiply(a, b, t2); });
    EXPECT_FALSE(w.empty());
}

// ---- the adapted basis used for exhaustive associativity

TEST(PeirceBasis, InverseIsExact) {
    for (auto [n, s] : {std::make_pair(2u, 1u), std::make_pair(3u, 1u)}) {
        const Qusl& Q = cached_q(n, s).Q;
        PeirceBasis P = peirce_basis(*Q.H.mult, {Q.g1(), Q.g2()});
        ASSERT_EQ(P.vecs.size(), Q.H.dim);
        for (uint32_t i = 0; i < Q.H.dim; ++i) {
            std::map<uint32_t, CycloNum> back;
            for (auto& [a, x] : P.vecs[i])
                for (auto& [j, y] : P.inv[a]) {
                    auto it = back.find(j);
                    if (it == back.end()) back.emplace(j, x * y);
                    else it->second += x * y;
                }
            std::erase_if(back, [](auto& kv) { return kv.second.is_zero(); });
            ASSERT_EQ(back.size(), 1u);
            EXPECT_EQ(back.begin()->first, i);
            EXPECT_TRUE(back.begin()->second.is_one());
        }
    }
}

TEST(PeirceBasis, AgreesWithDirectCheck) {
    const Qusl& Q = cached_q(2, 1).Q;
    PeirceBasis P = peirce_basis(*Q.H.mult, {Q.g1(), Q.g2()});
    MultTable T = transform_table(*Q.H.mult, P);
    EXPECT_EQ(check_associative_exhaustive(T), "");
    EXPECT_EQ(check_associative_exhaustive_generic(*Q.H.mult), "");
    // structure constants really are those of the same algebra: P(e_i e_j) = P(e_i) P(e_j)
    for (uint32_t i = 0; i < Q.H.dim; ++i)
        for (uint32_t j = 0; j < Q.H.dim; ++j) {
            SparseTensor vi = Q.H.zero(1), vj = Q.H.zero(1), l = Q.H.zero(1);
            for (auto& [a, x] : P.vecs[i]) vi.add(a, x);
            for (auto& [a, x] : P.vecs[j]) vj.add(a, x);
            for (auto& [k, c] : T(i, j))
                for (auto& [a, x] : P.vecs[k]) l.add(a, c * x);
            ASSERT_EQ(l, Q.H.mul(vi, vj));
        }
}

TEST(PeirceBasis, BrokenTableIsCaught) {
    const Qusl& Q = cached_q(2, 1).Q;
    auto bad = std::make_shared<MultTable>(*Q.H.mult);
    Terms t = (*bad)(Q.index(0, 0, 0, 1), Q.index(0, 0, 1, 0));
    t.front().second += Q.p.one();
    bad->set(Q.index(0, 0, 0, 1), Q.index(0, 0, 1, 0), t);
    PeirceBasis P = peirce_basis(*bad, {Q.g1(), Q.g2()});
    EXPECT_NE(check_associative_exhaustive(transform_table(*bad, P)), "");
    EXPECT_NE(check_associative_exhaustive(*bad), "");
    EXPECT_NE(check_associative_exhaustive_generic(*bad), "");
}

TEST(PeirceBasis, IntegerAndGenericCheckersAgree) {
    const DoubleAlgebra& X = cached_d(2, 1);
    auto T = IntTable::from(*X.D.mult);
    ASSERT_TRUE(T.has_value());
    EXPECT_EQ(check_associative_int(*T), check_associative_exhaustive_generic(*X.D.mult));
}

// ---- the isomorphism onto the double

TEST(PsiIso, SmallCases) {
    for (auto [n, s] : {std::make_pair(2u, 1u), std::make_pair(2u, 2u)}) {
        Report r = psi_iso(cached_q(n, s).Q, cached_d(n, s));
        expect_all_pass(r);
        EXPECT_EQ(r.find("algebra_morphism")->detail["mode"], "exhaustive");
    }
}

TEST(PsiIso, RankIsDim) {
    const Qusl& Q = cached_q(2, 1).Q;
    PsiMap P = build_psi(Q, cached_d(2, 1));
    std::vector<SparseRow> rows(Q.H.dim);
    for (uint32_t a = 0; a < Q.H.dim; ++a)
        for (auto& [k, c] : P.images[a].entries()) rows[a][static_cast<uint32_t>(k)] = c;
    EXPECT_EQ(sparse_rank(rows), 64u);
}

TEST(PsiIso, GeneratorImages) {
    const Qusl& Q = cached_q(3, 1).Q;
    const DoubleAlgebra& X = cached_d(3, 1);
    PsiMap P = build_psi(Q, X);
    DoubleNames nm = double_names(X);
    EXPECT_EQ(P.images[Q.index(0, 1, 0, 0)], nm.g2);
    EXPECT_EQ(P.images[Q.index(0, 0, 1, 0)], nm.x);
    // Psi(y)Psi(x) - q^s Psi(x)Psi(y) = 1 - Psi(g1 g2^s)
    SparseTensor l = X.mul(nm.y, nm.x) - Q.p.q(1) * X.mul(nm.x, nm.y);
    SparseTensor r = X.D.unit - P.images[Q.index(1, 1, 0, 0)];
    EXPECT_EQ(l, r);
}
