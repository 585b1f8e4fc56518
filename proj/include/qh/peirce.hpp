#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "qh/linalg.hpp"
#include "qh/tensor.hpp"

namespace qh {

// Change of basis adapted to left and right multiplication by a few units that act
// monomially on the basis. Basis vectors are grouped into orbits of those maps and
// each orbit is replaced by the joint eigenvectors found by projecting its first
// element, so products of the new basis are mostly zero. Only invertibility of the
// block-diagonal change matters for exactness; orbits where the projection does
// not yield a basis keep their original vectors.
struct PeirceBasis {
    std::vector<SparseRow> vecs;  // new basis in old coordinates
    std::vector<SparseRow> inv;   // old basis in new coordinates
};

namespace detail {

struct MonomialOp {
    std::vector<uint32_t> to;
    std::vector<CycloNum> c;
    uint32_t order = 0;  // T^order = id, 0 if not found within the field's roots
};

inline std::optional<MonomialOp> monomial_op(const MultTable& m, const SparseTensor& u, bool left) {
    const uint32_t d = m.dim();
    MonomialOp T;
    T.to.resize(d);
    T.c.assign(d, CycloNum::zero(m.order()));
    for (uint32_t b = 0; b < d; ++b) {
        std::map<uint32_t, CycloNum> acc;
        for (auto& [k, x] : u.entries()) {
            const Terms& t = left ? m(static_cast<uint32_t>(k), b) : m(b, static_cast<uint32_t>(k));
            for (auto& [j, y] : t) {
                auto it = acc.find(j);
                if (it == acc.end()) acc.emplace(j, x * y);
                else it->second += x * y;
            }
        }
        std::erase_if(acc, [](auto& kv) { return kv.second.is_zero(); });
        if (acc.size() != 1) return std::nullopt;
        T.to[b] = acc.begin()->first;
        T.c[b] = acc.begin()->second;
    }
    // smallest o dividing the field order with T^o = id
    std::vector<uint32_t> pos(d);
    std::iota(pos.begin(), pos.end(), 0);
    std::vector<CycloNum> sc(d, CycloNum::one(m.order()));
    for (uint32_t o = 1; o <= m.order(); ++o) {
        bool id = true;
        for (uint32_t b = 0; b < d; ++b) {
            sc[b] = sc[b] * T.c[pos[b]];
            pos[b] = T.to[pos[b]];
            if (pos[b] != b || !sc[b].is_one()) id = false;
        }
        if (id) {
            if (m.order() % o == 0) T.order = o;
            break;
        }
    }
    return T;
}

inline SparseRow apply_op(const MonomialOp& T, const SparseRow& v) {
    SparseRow r;
    for (auto& [b, x] : v) r.emplace(T.to[b], x * T.c[b]);
    return r;
}

}  // namespace detail

inline PeirceBasis peirce_basis(const MultTable& m, const std::vector<SparseTensor>& units) {
    const uint32_t d = m.dim(), M = m.order();
    std::vector<detail::MonomialOp> ops;
    for (auto& u : units)
        for (bool left : {true, false})
            if (auto T = detail::monomial_op(m, u, left); T && T->order > 0) ops.push_back(std::move(*T));
    // orbits
    std::vector<uint32_t> parent(d);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto& T : ops)
        for (uint32_t b = 0; b < d; ++b) parent[find(b)] = find(T.to[b]);
    std::map<uint32_t, std::vector<uint32_t>> orbits;
    for (uint32_t b = 0; b < d; ++b) orbits[find(b)].push_back(b);

    PeirceBasis P;
    P.inv.assign(d, {});
    for (auto& [root, orb] : orbits) {
        std::vector<SparseRow> cur{SparseRow{{orb.front(), CycloNum::one(M)}}};
        for (auto& T : ops) {
            std::vector<SparseRow> next;
            for (auto& v : cur) {
                std::vector<SparseRow> pw{v};
                for (uint32_t j = 1; j < T.order; ++j) pw.push_back(detail::apply_op(T, pw.back()));
                for (uint32_t t = 0; t < T.order; ++t) {
                    // projection onto the eigenvalue zeta^{(M/o) t}, unnormalized
                    SparseRow w;
                    for (uint32_t j = 0; j < T.order; ++j) {
                        CycloNum lam = CycloNum::root(M, -int64_t(M / T.order) * t * j);
                        for (auto& [b, x] : pw[j]) {
                            auto it = w.find(b);
                            if (it == w.end()) w.emplace(b, lam * x);
                            else it->second += lam * x;
                        }
                    }
                    std::erase_if(w, [](auto& kv) { return kv.second.is_zero(); });
                    if (!w.empty()) next.push_back(std::move(w));
                }
            }
            cur = std::move(next);
        }
        std::map<uint32_t, uint32_t> local;
        for (uint32_t i = 0; i < orb.size(); ++i) local[orb[i]] = i;
        std::optional<std::vector<SparseRow>> blk_inv;
        if (cur.size() == orb.size()) {
            std::vector<SparseRow> cols;
            for (auto& v : cur) {
                SparseRow c;
                for (auto& [b, x] : v) c.emplace(local.at(b), x);
                cols.push_back(std::move(c));
            }
            blk_inv = sparse_inverse(cols, M);
        }
        if (!blk_inv) {
            cur.clear();
            for (uint32_t b : orb) cur.push_back(SparseRow{{b, CycloNum::one(M)}});
            blk_inv.emplace();
            for (uint32_t i = 0; i < orb.size(); ++i) blk_inv->push_back(SparseRow{{i, CycloNum::one(M)}});
        }
        const uint32_t base = static_cast<uint32_t>(P.vecs.size());
        for (auto& v : cur) P.vecs.push_back(std::move(v));
        for (uint32_t i = 0; i < orb.size(); ++i)
            for (auto& [j, x] : (*blk_inv)[i]) P.inv[orb[i]].emplace(base + j, x);
    }
    return P;
}

// Structure constants of the same algebra in the new basis, P^-1 m(P u, P v).
// Computed row by row: first P^-1(v_i b) for every old basis b, which stays
// sparse since v_i b lies in one left component, then summed over the support of v_j.
inline MultTable transform_table(const MultTable& m, const PeirceBasis& P) {
    const uint32_t d = m.dim();
    const CycloNum zero = CycloNum::zero(m.order());
    MultTable out(d, m.order());
    std::vector<CycloNum> acc(d, zero), mid(d, zero);
    std::vector<uint8_t> mark(d, 0), mmark(d, 0);
    std::vector<uint32_t> touched, mtouched;
    std::vector<Terms> row(d);
    auto flush = [&](Terms& r) {
        std::sort(touched.begin(), touched.end());
        r.clear();
        for (uint32_t k : touched) {
            if (!acc[k].is_zero()) r.emplace_back(k, acc[k]);
            acc[k] = zero;
            mark[k] = 0;
        }
        touched.clear();
    };
    auto add = [&](uint32_t k, const CycloNum& v) {
        if (!mark[k]) mark[k] = 1, touched.push_back(k);
        acc[k] += v;
    };
    for (uint32_t i = 0; i < d; ++i) {
        for (uint32_t b = 0; b < d; ++b) {
            for (auto& [a, x] : P.vecs[i])
                for (auto& [k, z] : m(a, b)) {
                    if (!mmark[k]) mmark[k] = 1, mtouched.push_back(k);
                    mid[k] += x * z;
                }
            for (uint32_t k : mtouched) {
                if (!mid[k].is_zero())
                    for (auto& [nk, w] : P.inv[k]) add(nk, mid[k] * w);
                mid[k] = zero;
                mmark[k] = 0;
            }
            mtouched.clear();
            flush(row[b]);
        }
        for (uint32_t j = 0; j < d; ++j) {
            for (auto& [b, y] : P.vecs[j])
                for (auto& [k, v] : row[b]) add(k, y * v);
            Terms r;
            flush(r);
            out.set(i, j, std::move(r));
        }
    }
    return out;
}

}  // namespace qh
