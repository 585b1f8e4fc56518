#pragma once

#include <string>
#include <vector>

#include "qh/qha.hpp"

namespace qh {

// A(n,s,q) in the basis 1_i x^j, index i*N + j with N = n^2/s.
struct Ansq {
    Params p;
    QuasiHopfData H;

    uint32_t index(uint32_t i, uint32_t j) const { return i * p.nil() + j; }
    uint32_t vertex(uint32_t k) const { return k / p.nil(); }
    uint32_t degree(uint32_t k) const { return k % p.nil(); }

    SparseTensor idem(int64_t i) const { return H.basis(index(static_cast<uint32_t>(remainder(i, p.n)), 0)); }
    // g_2^t = sum_i obar^{ti} 1_i
    SparseTensor g2_pow(int64_t t) const {
        SparseTensor r = H.zero(1);
        for (uint32_t i = 0; i < p.n; ++i) r.add(index(i, 0), p.obar(t * i));
        return r;
    }
    // x = sum_i 1_i x
    SparseTensor x() const {
        SparseTensor r = H.zero(1);
        if (p.nil() < 2) return r;
        for (uint32_t i = 0; i < p.n; ++i) r.add(index(i, 1), p.one());
        return r;
    }
};

inline std::vector<SparseTensor> idempotents(const Ansq& A) {
    std::vector<SparseTensor> v;
    for (uint32_t i = 0; i < A.p.n; ++i) v.push_back(A.idem(i));
    return v;
}

// e_k^* for the monomial basis: raw coordinates of H^*.
inline std::vector<Functional> dual_basis_functionals(const Ansq& A) {
    std::vector<Functional> v;
    for (uint32_t k = 0; k < A.H.dim; ++k) v.push_back(A.H.basis(k));
    return v;
}

inline Ansq build_ansq(const Params& p) {
    Ansq A;
    A.p = p;
    const uint32_t n = p.n, N = p.nil(), s = p.s, M = p.M();
    QuasiHopfData& H = A.H;
    H.name = "ansq";
    H.dim = n * N;
    H.order = M;
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < N; ++j) H.labels.push_back("1_{" + std::to_string(i) + "}x^{" + std::to_string(j) + "}");

    // (1_i x^a)(1_j x^b) = delta_{i, j+a} 1_i x^{a+b}, from x 1_j = 1_{j+1} x
    auto mt = std::make_shared<MultTable>(H.dim, M);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t a = 0; a < N; ++a)
            for (uint32_t j = 0; j < n; ++j)
                for (uint32_t b = 0; b < N; ++b) {
                    Terms t;
                    if (i == (j + a) % n && a + b < N) t.emplace_back(A.index(i, a + b), p.one());
                    mt->set(A.index(i, a), A.index(j, b), std::move(t));
                }
    H.mult = mt;
    H.unit = H.zero(1);
    for (uint32_t i = 0; i < n; ++i) H.unit.add(A.index(i, 0), p.one());

    H.counit.assign(H.dim, p.zero());
    H.counit[A.index(0, 0)] = p.one();

    // Delta(x) = 1 (x) sum_{i>=1} 1_i x + g_2^s (x) 1_0 x + x (x) sum_i q^{-si} 1_i
    SparseTensor dx = H.zero(2);
    if (N >= 2) {
        SparseTensor rest = H.zero(1);
        for (uint32_t i = 1; i < n; ++i) rest.add(A.index(i, 1), p.one());
        dx += tensor_product(H.unit, rest);
        dx += tensor_product(A.g2_pow(s), H.basis(A.index(0, 1)));
        SparseTensor diag = H.zero(1);
        for (uint32_t i = 0; i < n; ++i) diag.add(A.index(i, 0), p.q(-static_cast<int64_t>(s * i)));
        dx += tensor_product(A.x(), diag);
    }
    H.comult = LinearMap(H.dim, {H.dim, H.dim}, M);
    auto t2 = H.tables(2);
    for (uint32_t i = 0; i < n; ++i) {
        SparseTensor d = H.zero(2);
        for (uint32_t j = 0; j < n; ++j) d.add({A.index(j, 0), A.index(static_cast<uint32_t>(remainder(int64_t(i) - j, n)), 0)}, p.one());
        SparseTensor cur = d;
        for (uint32_t a = 0; a < N; ++a) {
            H.comult.images[A.index(i, a)] = cur;
            if (a + 1 < N) cur = legwise_multiply(cur, dx, t2);
        }
    }

    // phi_s = sum obar^{s i [(j+k)/n]} 1_i (x) 1_j (x) 1_k
    H.phi = H.zero(3);
    H.phi_inv = H.zero(3);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j)
            for (uint32_t k = 0; k < n; ++k) {
                int64_t e = int64_t(s) * i * floor_frac(j + k, n);
                H.phi.add({A.index(i, 0), A.index(j, 0), A.index(k, 0)}, p.obar(e));
            }
    H.phi_inv = invert_element(H.phi, H.tables(3), H.unit_tensor(3)).inverse;

    H.alpha = A.g2_pow(-static_cast<int64_t>(s));
    H.beta = H.unit;

    // S(1_i) = 1_{-i}, S(x) = -x sum_i q^{s(i-n)} 1_i, extended anti-multiplicatively
    H.antipode = LinearMap(H.dim, {H.dim}, M);
    SparseTensor Sx = H.zero(1);
    if (N >= 2) {
        SparseTensor diag = H.zero(1);
        for (uint32_t i = 0; i < n; ++i) diag.add(A.index(i, 0), -p.q(int64_t(s) * (int64_t(i) - n)));
        Sx = H.mul(A.x(), diag);
    }
    for (uint32_t i = 0; i < n; ++i) {
        SparseTensor cur = A.idem(-static_cast<int64_t>(i));
        for (uint32_t a = 0; a < N; ++a) {
            H.antipode.images[A.index(i, a)] = cur;
            cur = H.mul(Sx, cur);
        }
    }
    return A;
}

}  // namespace qh
