#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qh/double.hpp"
#include "qh/qha.hpp"

namespace qh {

// Q_s u_q(sl2) over the normal form g1^a g2^b x^c y^d, 0 <= a,b < n, 0 <= c,d < N.
struct Qusl {
    Params p;
    QuasiHopfData H;

    uint32_t index(uint32_t a, uint32_t b, uint32_t c, uint32_t d) const {
        return ((a * p.n + b) * p.nil() + c) * p.nil() + d;
    }
    std::array<uint32_t, 4> exps(uint32_t k) const {
        const uint32_t N = p.nil();
        return {k / (N * N * p.n), (k / (N * N)) % p.n, (k / N) % N, k % N};
    }
    SparseTensor mono(uint32_t a, uint32_t b, uint32_t c, uint32_t d) const { return H.basis(index(a, b, c, d)); }
    SparseTensor g1() const { return mono(1 % p.n, 0, 0, 0); }
    SparseTensor g2() const { return mono(0, 1 % p.n, 0, 0); }
    SparseTensor x() const { return p.nil() > 1 ? mono(0, 0, 1, 0) : H.zero(1); }
    SparseTensor y() const { return p.nil() > 1 ? mono(0, 0, 0, 1) : H.zero(1); }
    // g2^t
    SparseTensor g2_pow(int64_t t) const { return mono(0, static_cast<uint32_t>(remainder(t, p.n)), 0, 0); }
    // g1^-1 = g1^{n-1} g2^{-2s}
    SparseTensor g1_inv() const {
        return mono(p.n - 1, static_cast<uint32_t>(remainder(-2 * int64_t(p.s), p.n)), 0, 0);
    }
    // 1_i = (1/n) sum_j obar^{-ij} g2^j
    SparseTensor idem(int64_t i) const {
        SparseTensor r = H.zero(1);
        Rational inv_n(1, p.n);
        for (uint32_t j = 0; j < p.n; ++j) r.add(index(0, j, 0, 0), p.obar(-i * int64_t(j)) * inv_n);
        return r;
    }
    SparseTensor pow(const SparseTensor& a, uint32_t k) const {
        SparseTensor r = H.unit;
        for (uint32_t i = 0; i < k; ++i) r = H.mul(r, a);
        return r;
    }
};

namespace detail {

// Normal-form multiplication built from right multiplication by generators:
//   x g1 = q^{ns-2s} g1 x,  y g1 = q^{2s-ns} g1 y,  x g2 = q^-n g2 x,  y g2 = q^n g2 y,
//   y x = q^s x y + 1 - g1 g2^s.
struct QuslRewriter {
    const Qusl& Q;
    uint32_t n, N, s;
    std::vector<Terms> times_x;  // m * x for every monomial m

    explicit QuslRewriter(const Qusl& q) : Q(q), n(q.p.n), N(q.p.nil()), s(q.p.s) {}

    // monomial * g1^a' g2^b' as (coefficient, monomial)
    std::pair<CycloNum, uint32_t> times_group(uint32_t m, uint32_t a2, uint32_t b2) const {
        auto [a, b, c, d] = Q.exps(m);
        // g1 x = q^{2s-ns} x g1, g2 x = q^n x g2 and inverse constants for y
        int64_t cd = int64_t(c) - int64_t(d);
        CycloNum coef = Q.p.q(int64_t(a2) * cd * (int64_t(n) * s - 2 * int64_t(s)) - int64_t(b2) * n * cd);
        uint32_t A = a + a2, B = b + b2;
        B += (A / n) * 2 * s;
        A %= n;
        B %= n;
        return {coef, Q.index(A, B, c, d)};
    }
    // monomial * y^k
    std::optional<uint32_t> times_y(uint32_t m, uint32_t k) const {
        auto [a, b, c, d] = Q.exps(m);
        if (d + k >= N) return std::nullopt;
        return Q.index(a, b, c, d + k);
    }

    void build() {
        const uint32_t dim = Q.H.dim;
        times_x.assign(dim, {});
        const CycloNum qs = Q.p.q(s);
        // increasing d: m x = G x^c y^{d-1} (q^s x y + 1 - g1 g2^s)
        for (uint32_t d = 0; d < N; ++d)
            for (uint32_t a = 0; a < n; ++a)
                for (uint32_t b = 0; b < n; ++b)
                    for (uint32_t c = 0; c < N; ++c) {
                        uint32_t m = Q.index(a, b, c, d);
                        std::map<uint32_t, CycloNum> acc;
                        auto add = [&](uint32_t k, const CycloNum& v) {
                            auto it = acc.find(k);
                            if (it == acc.end()) acc.emplace(k, v);
                            else it->second += v;
                        };
                        if (d == 0) {
                            if (c + 1 < N) add(Q.index(a, b, c + 1, 0), Q.p.one());
                        } else {
                            uint32_t prev = Q.index(a, b, c, d - 1);
                            for (auto& [t, v] : times_x[prev])
                                if (auto ty = times_y(t, 1)) add(*ty, qs * v);
                            add(prev, Q.p.one());
                            auto [cf, k] = times_group(prev, 1, s % n);
                            // g2^s with s = n wraps to the identity
                            add(k, -cf);
                        }
                        for (auto& [k, v] : acc)
                            if (!v.is_zero()) times_x[m].emplace_back(k, v);
                    }
    }

    // m * x^c for every monomial m and 0 <= c < N
    std::vector<std::vector<Terms>> x_powers;

    void build_powers() {
        const uint32_t dim = Q.H.dim;
        x_powers.assign(dim, std::vector<Terms>(N));
        for (uint32_t m = 0; m < dim; ++m) {
            x_powers[m][0] = {{m, Q.p.one()}};
            for (uint32_t c = 1; c < N; ++c) {
                std::map<uint32_t, CycloNum> acc;
                for (auto& [t, v] : x_powers[m][c - 1])
                    for (auto& [u, w] : times_x[t]) {
                        auto it = acc.find(u);
                        if (it == acc.end()) acc.emplace(u, v * w);
                        else it->second += v * w;
                    }
                for (auto& [k, v] : acc)
                    if (!v.is_zero()) x_powers[m][c].emplace_back(k, v);
            }
        }
    }

    // right multiplication by y^d is injective on monomials, so no terms merge
    Terms product(uint32_t m1, uint32_t m2) const {
        auto [a2, b2, c2, d2] = Q.exps(m2);
        auto [cf, g] = times_group(m1, a2, b2);
        Terms r;
        for (auto& [t, v] : x_powers[g][c2])
            if (auto ty = times_y(t, d2)) r.emplace_back(*ty, cf * v);
        std::sort(r.begin(), r.end(), [](auto& l, auto& rr) { return l.first < rr.first; });
        return r;
    }
};

}  // namespace detail

enum class QGen { g1, g2, x, y, g1_inv, g2_inv };

// A word in the generators and the two group inverses, rewritten to normal form.
inline SparseTensor normalize(const Qusl& Q, const std::vector<QGen>& word) {
    SparseTensor r = Q.H.unit;
    for (QGen g : word) {
        switch (g) {
            case QGen::g1: r = Q.H.mul(r, Q.g1()); break;
            case QGen::g2: r = Q.H.mul(r, Q.g2()); break;
            case QGen::x: r = Q.H.mul(r, Q.x()); break;
            case QGen::y: r = Q.H.mul(r, Q.y()); break;
            case QGen::g1_inv: r = Q.H.mul(r, Q.g1_inv()); break;
            case QGen::g2_inv: r = Q.H.mul(r, Q.g2_pow(-1)); break;
        }
    }
    return r;
}

struct QuslBuild {
    Qusl Q;
    Report report;  // relation checks for Delta, eps, S
};

// the defining relations evaluated in an algebra through images of the generators;
// returns "" or the name of the first broken relation with a witness
template <class Mul>
std::string check_relations(const Params& p, const SparseTensor& G1, const SparseTensor& G1inv, const SparseTensor& G2,
                            const SparseTensor& X, const SparseTensor& Y, const SparseTensor& one, Mul mul,
                            bool anti = false) {
    const uint32_t n = p.n, N = p.nil(), s = p.s;
    auto m = [&](const SparseTensor& a, const SparseTensor& b) { return anti ? mul(b, a) : mul(a, b); };
    auto pw = [&](const SparseTensor& a, uint32_t k) {
        SparseTensor r = one;
        for (uint32_t i = 0; i < k; ++i) r = m(r, a);
        return r;
    };
    auto w = [&](const std::string& name, const SparseTensor& l, const SparseTensor& r) -> std::string {
        std::string c = coeff_witness(l, r);
        return c.empty() ? "" : name + " " + c;
    };
    std::string e;
    if (!(e = w("g1^n = g2^2s", pw(G1, n), pw(G2, 2 * s))).empty()) return e;
    if (!(e = w("g2^n = 1", pw(G2, n), one)).empty()) return e;
    if (!(e = w("g1 g1^-1 = 1", m(G1, G1inv), one)).empty()) return e;
    if (!(e = w("g1 g2 = g2 g1", m(G1, G2), m(G2, G1))).empty()) return e;
    if (!pw(X, N).is_zero()) return "x^N = 0";
    if (!pw(Y, N).is_zero()) return "y^N = 0";
    if (!(e = w("g1 x = k x g1", m(G1, X), (p.obar(-int64_t(s)) * p.q(2 * s)) * m(X, G1))).empty()) return e;
    if (!(e = w("g2 x = obar x g2", m(G2, X), p.obar(1) * m(X, G2))).empty()) return e;
    if (!(e = w("g1 y = k y g1", m(G1, Y), (p.obar(s) * p.q(-2 * int64_t(s))) * m(Y, G1))).empty()) return e;
    if (!(e = w("g2 y = obar^-1 y g2", m(G2, Y), p.obar(-1) * m(Y, G2))).empty()) return e;
    SparseTensor lhs = m(Y, X) - p.q(s) * m(X, Y);
    SparseTensor rhs = one - m(G1, pw(G2, s));
    return w("yx - q^s xy = 1 - g1 g2^s", lhs, rhs);
}

namespace detail {

// phi = sum obar^{s i floor((j+k)/n)} 1_i (x) 1_j (x) 1_k, phi^-1 with the opposite exponent
inline void set_qusl_phi(Qusl& Q) {
    const Params& p = Q.p;
    const uint32_t n = p.n;
    QuasiHopfData& H = Q.H;
    H.phi = H.zero(3);
    H.phi_inv = H.zero(3);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j)
            for (uint32_t k = 0; k < n; ++k) {
                int64_t e = int64_t(p.s) * i * floor_frac(j + k, n);
                SparseTensor t = tensor_product(tensor_product(Q.idem(i), Q.idem(j)), Q.idem(k));
                H.phi += p.obar(e) * t;
                H.phi_inv += p.obar(-e) * t;
            }
}

}  // namespace detail

// Indexing, unit and reassociator only, no multiplication table. Enough for
// anything that reads phi on group-likes, at sizes where the full build is out of reach.
inline Qusl qusl_skeleton(const Params& p) {
    Qusl Q;
    Q.p = p;
    Q.H.name = "qusl2";
    Q.H.dim = p.n * p.n * p.nil() * p.nil();
    Q.H.order = p.M();
    Q.H.unit = Q.H.basis(0);
    detail::set_qusl_phi(Q);
    return Q;
}

inline QuslBuild build_qusl2(const Params& p) {
    QuslBuild out;
    Qusl& Q = out.Q;
    Q.p = p;
    const uint32_t n = p.n, N = p.nil(), s = p.s;
    QuasiHopfData& H = Q.H;
    H.name = "qusl2";
    H.dim = n * n * N * N;
    H.order = p.M();
    for (uint32_t k = 0; k < H.dim; ++k) {
        auto e = Q.exps(k);
        H.labels.push_back("g1^" + std::to_string(e[0]) + " g2^" + std::to_string(e[1]) + " x^" + std::to_string(e[2]) +
                           " y^" + std::to_string(e[3]));
    }
    detail::QuslRewriter rw(Q);
    rw.build();
    rw.build_powers();
    auto mt = std::make_shared<MultTable>(H.dim, H.order);
    for (uint32_t a = 0; a < H.dim; ++a)
        for (uint32_t b = 0; b < H.dim; ++b) mt->set(a, b, rw.product(a, b));
    H.mult = mt;
    H.unit = Q.mono(0, 0, 0, 0);

    auto t2 = H.tables(2);
    auto mul2 = [&](const SparseTensor& a, const SparseTensor& b) { return legwise_multiply(a, b, t2); };
    auto tp = [](const SparseTensor& a, const SparseTensor& b) { return tensor_product(a, b); };
    SparseTensor qd = H.zero(1), rest = H.zero(1);
    for (uint32_t i = 0; i < n; ++i) qd += p.q(int64_t(s) * i) * Q.idem(i);
    for (uint32_t i = 1; i < n; ++i) rest += Q.idem(i);
    SparseTensor qdm = H.zero(1);
    for (uint32_t i = 0; i < n; ++i) qdm += p.q(-int64_t(s) * i) * Q.idem(i);
    SparseTensor K = H.mul(Q.g1(), Q.g2_pow(s));

    // Delta on generators
    SparseTensor dg1 = tp(Q.g1(), Q.g1()), dg2 = tp(Q.g2(), Q.g2());
    SparseTensor dg1inv = tp(Q.g1_inv(), Q.g1_inv());
    SparseTensor dx = tp(H.unit, H.mul(rest, Q.x())) + tp(Q.g2_pow(s), H.mul(Q.idem(0), Q.x())) + tp(Q.x(), qdm);
    SparseTensor dy = tp(Q.y(), qd) + tp(K, H.mul(Q.y(), rest)) + tp(Q.g1(), H.mul(Q.y(), Q.idem(0)));
    out.report.add(run_check("delta_respects_relations", [&] {
        return check_relations(p, dg1, dg1inv, dg2, dx, dy, H.unit_tensor(2), mul2);
    }));
    // eps on generators; relations in the ground field
    out.report.add(run_check("counit_respects_relations", [&] {
        SparseTensor one({1}, H.order);
        one.add(0, p.one());
        SparseTensor zero({1}, H.order);
        auto m1 = [&](const SparseTensor& a, const SparseTensor& b) {
            SparseTensor r({1}, H.order);
            r.add(0, a.at({0}) * b.at({0}));
            return r;
        };
        return check_relations(p, one, one, one, zero, zero, one, m1);
    }));
    // S on generators, anti-multiplicative
    SparseTensor Sg1 = Q.g1_inv(), Sg2 = Q.g2_pow(-1), Sg1inv = Q.g1();
    SparseTensor dS = H.zero(1);
    for (uint32_t i = 0; i < n; ++i) dS += p.q(int64_t(s) * (int64_t(i) - n)) * Q.idem(i);
    SparseTensor Sx = -p.one() * H.mul(Q.x(), dS);
    SparseTensor dSy = H.zero(1);
    for (uint32_t i = 0; i < n; ++i) dSy += p.q(int64_t(s) * remainder(int64_t(n) - i, n)) * Q.idem(i);
    SparseTensor Sy = -p.one() * H.mul(H.mul(H.mul(Q.g1_inv(), Q.g2_pow(-int64_t(s))), Q.y()), dSy);
    auto mul1 = [&](const SparseTensor& a, const SparseTensor& b) { return H.mul(a, b); };
    out.report.add(run_check("antipode_respects_relations", [&] {
        return check_relations(p, Sg1, Sg1inv, Sg2, Sx, Sy, H.unit, mul1, true);
    }));

    if (!out.report.ok()) throw std::runtime_error("build_qusl2: " + out.report.first_failure());

    // extend: Delta(m) = Delta(g1)^a Delta(g2)^b Delta(x)^c Delta(y)^d, S(m) = S(y)^d S(x)^c S(g2)^b S(g1)^a
    H.comult = LinearMap(H.dim, {H.dim, H.dim}, H.order);
    H.antipode = LinearMap(H.dim, {H.dim}, H.order);
    H.counit.assign(H.dim, p.zero());
    for (uint32_t k = 0; k < H.dim; ++k) {
        auto [a, b, c, d] = Q.exps(k);
        if (k == 0) {
            H.comult.images[k] = H.unit_tensor(2);
            H.antipode.images[k] = H.unit;
        } else {
            uint32_t prev;
            const SparseTensor *dgen, *sgen;
            if (d > 0) prev = Q.index(a, b, c, d - 1), dgen = &dy, sgen = &Sy;
            else if (c > 0) prev = Q.index(a, b, c - 1, 0), dgen = &dx, sgen = &Sx;
            else if (b > 0) prev = Q.index(a, b - 1, 0, 0), dgen = &dg2, sgen = &Sg2;
            else prev = Q.index(a - 1, 0, 0, 0), dgen = &dg1, sgen = &Sg1;
            H.comult.images[k] = mul2(H.comult.images[prev], *dgen);
            H.antipode.images[k] = H.mul(*sgen, H.antipode.images[prev]);
        }
        if (c == 0 && d == 0) H.counit[k] = p.one();
    }

    detail::set_qusl_phi(Q);
    H.alpha = Q.g2_pow(-int64_t(s));
    H.beta = H.unit;
    return out;
}

inline std::vector<SparseTensor> qusl_generators(const Qusl& Q) { return {Q.g1(), Q.g2(), Q.x(), Q.y()}; }

inline CheckOptions qusl_check_options(const Qusl& Q, uint64_t seed = 1) {
    CheckOptions o;
    o.seed = seed;
    o.max_exhaustive_dim = 256;
    o.max_literal_pair_dim = 256;
    o.generators = qusl_generators(Q);
    o.units = {Q.g1(), Q.g2()};
    return o;
}

// ---- the isomorphism Q_s u_q(sl2) -> D(A(n,s,q))

struct PsiMap {
    std::vector<SparseTensor> images;  // Psi of every monomial, elements of D
};

inline PsiMap build_psi(const Qusl& Q, const DoubleAlgebra& X) {
    DoubleNames nm = double_names(X);
    PsiMap P;
    P.images.assign(Q.H.dim, X.D.zero(1));
    for (uint32_t k = 0; k < Q.H.dim; ++k) {
        auto [a, b, c, d] = Q.exps(k);
        if (k == 0) {
            P.images[k] = X.D.unit;
            continue;
        }
        uint32_t prev;
        const SparseTensor* gen;
        if (d > 0) prev = Q.index(a, b, c, d - 1), gen = &nm.y;
        else if (c > 0) prev = Q.index(a, b, c - 1, 0), gen = &nm.x;
        else if (b > 0) prev = Q.index(a, b - 1, 0, 0), gen = &nm.g2;
        else prev = Q.index(a - 1, 0, 0, 0), gen = &nm.g1;
        P.images[k] = X.mul(P.images[prev], *gen);
    }
    return P;
}

inline SparseTensor psi_apply(const PsiMap& P, const SparseTensor& t, const QuasiHopfData& D) {
    SparseTensor r = D.zero(t.legs());
    for (auto& [k, c] : t.entries()) {
        auto idx = t.unpack(k);
        SparseTensor acc(std::vector<uint32_t>{}, D.order);
        acc.add(0, c);
        for (uint32_t i : idx) acc = tensor_product(acc, P.images[i]);
        r += acc;
    }
    return r;
}

struct PsiOptions {
    // pairs for the algebra-morphism check: all of them up to this dim, else closure over generators
    uint64_t max_exhaustive_dim = 1024;
    uint64_t samples = 10000;
    uint64_t seed = 1;
};

inline Report psi_iso(const Qusl& Q, const DoubleAlgebra& X, const PsiOptions& opt = {}) {
    Report rep;
    const QuasiHopfData& H = Q.H;
    const QuasiHopfData& D = X.D;
    PsiMap P = build_psi(Q, X);
    DoubleNames nm = double_names(X);
    rep.add(run_check("generator_images", [&]() -> std::string {
        if (P.images[Q.index(0, 1 % Q.p.n, 0, 0)] != nm.g2) return "Psi(g2) != g2 |x| eps";
        if (Q.p.nil() > 1 && P.images[Q.index(0, 0, 1, 0)] != nm.x) return "Psi(x) != x |x| eps";
        return "";
    }));
    auto ra = run_check("algebra_morphism", [&]() -> std::string {
        auto check_pair = [&](uint32_t a, uint32_t b) -> std::string {
            SparseTensor l = D.zero(1);
            for (auto& [k, c] : (*H.mult)(a, b)) l += c * P.images[k];
            SparseTensor r = X.mul(P.images[a], P.images[b]);
            std::string w = coeff_witness(l, r);
            return w.empty() ? "" : "pair " + pair_name(a, b) + " " + w;
        };
        if (H.dim <= opt.max_exhaustive_dim) {
            for (uint32_t a = 0; a < H.dim; ++a)
                for (uint32_t b = 0; b < H.dim; ++b) {
                    std::string w = check_pair(a, b);
                    if (!w.empty()) return w;
                }
        } else {
            for (auto [a, b] : sampled_pairs(H.dim, opt.samples, opt.seed)) {
                std::string w = check_pair(a, b);
                if (!w.empty()) return w;
            }
        }
        return "";
    });
    ra.detail = {{"mode", H.dim <= opt.max_exhaustive_dim ? "exhaustive" : "sampled"}};
    rep.add(ra);
    rep.add(run_check("coalgebra_morphism", [&]() -> std::string {
        for (uint32_t a = 0; a < H.dim; ++a) {
            std::string w = coeff_witness(psi_apply(P, H.comult.images[a], D), D.comult.apply(P.images[a]));
            if (!w.empty()) return "basis " + std::to_string(a) + " " + w;
        }
        return "";
    }));
    auto rr = run_check("bijective", [&]() -> std::string {
        std::vector<SparseRow> rows(H.dim);
        for (uint32_t a = 0; a < H.dim; ++a)
            for (auto& [k, c] : P.images[a].entries()) rows[a][static_cast<uint32_t>(k)] = c;
        size_t r = sparse_rank(rows);
        if (r != H.dim || H.dim != D.dim) return "rank " + std::to_string(r) + " of " + std::to_string(D.dim);
        return "";
    });
    rep.add(rr);
    rep.add(run_check("counit", [&]() -> std::string {
        for (uint32_t a = 0; a < H.dim; ++a)
            if (D.eps_value(P.images[a]) != H.counit[a]) return "basis " + std::to_string(a);
        return "";
    }));
    rep.add(run_check("reassociator", [&] { return coeff_witness(psi_apply(P, H.phi, D), D.phi); }));
    rep.add(run_check("antipode", [&]() -> std::string {
        for (uint32_t a = 0; a < H.dim; ++a) {
            std::string w = coeff_witness(psi_apply(P, H.antipode.images[a], D), D.antipode.apply(P.images[a]));
            if (!w.empty()) return "basis " + std::to_string(a) + " " + w;
        }
        return "";
    }));
    rep.add(run_check("alpha_beta", [&]() -> std::string {
        std::string w = coeff_witness(psi_apply(P, H.alpha, D), D.alpha);
        if (!w.empty()) return "alpha " + w;
        return coeff_witness(psi_apply(P, H.beta, D), D.beta);
    }));
    return rep;
}

}  // namespace qh
