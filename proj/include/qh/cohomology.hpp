#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qh/qusl2.hpp"

namespace qh {

// 3-cochains on Z_m with values in roots of unity, written additively as
// exponents in Q/Z: the value exp(2 pi i e) is stored as e in [0, 1).
//
// Coefficients: every value met here is a root of unity, i.e. torsion in k^x.
// k^x is the torsion group Q/Z times a uniquely divisible group, so a torsion
// cocycle is a coboundary over k^x iff it is one over Q/Z: project a k^x-valued
// primitive onto the torsion summand. That is why the solver works in Q/Z.

inline Rational frac_part(const Rational& r) {
    mpq_class q = r.to_mpq();
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(mpq_class(q - f));
}

struct CocycleExponents {
    uint32_t m = 1;
    std::vector<Rational> e;  // index (i*m + j)*m + k

    explicit CocycleExponents(uint32_t m_ = 1) : m(m_), e(size_t(m_) * m_ * m_) {}
    Rational& at(uint32_t i, uint32_t j, uint32_t k) { return e[(size_t(i) * m + j) * m + k]; }
    const Rational& at(uint32_t i, uint32_t j, uint32_t k) const { return e[(size_t(i) * m + j) * m + k]; }
    void reduce() {
        for (auto& x : e) x = frac_part(x);
    }
    CocycleExponents operator-(const CocycleExponents& o) const {
        CocycleExponents r(m);
        for (size_t t = 0; t < e.size(); ++t) r.e[t] = e[t] - o.e[t];
        r.reduce();
        return r;
    }
    CocycleExponents operator+(const CocycleExponents& o) const {
        CocycleExponents r(m);
        for (size_t t = 0; t < e.size(); ++t) r.e[t] = e[t] + o.e[t];
        r.reduce();
        return r;
    }
    bool operator==(const CocycleExponents& o) const { return m == o.m && e == o.e; }
    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (uint32_t i = 0; i < m; ++i)
            for (uint32_t j = 0; j < m; ++j)
                for (uint32_t k = 0; k < m; ++k) arr.push_back({{"ijk", {i, j, k}}, {"exp", at(i, j, k).str()}});
        return arr;
    }
};

// e(i,j,k) = a i floor((j+k)/m) / m mod 1
inline CocycleExponents standard_cocycle(uint32_t m, int64_t a) {
    CocycleExponents c(m);
    for (uint32_t i = 0; i < m; ++i)
        for (uint32_t j = 0; j < m; ++j)
            for (uint32_t k = 0; k < m; ++k) c.at(i, j, k) = Rational(a * i * ((j + k) / m), m);
    c.reduce();
    return c;
}

// 2-cochain b on Z_m, index i*m + j
using Cochain2 = std::vector<Rational>;

inline CocycleExponents coboundary(uint32_t m, const Cochain2& b) {
    CocycleExponents c(m);
    auto B = [&](uint32_t i, uint32_t j) { return b[size_t(i % m) * m + j % m]; };
    for (uint32_t i = 0; i < m; ++i)
        for (uint32_t j = 0; j < m; ++j)
            for (uint32_t k = 0; k < m; ++k) c.at(i, j, k) = B(j, k) - B(i + j, k) + B(i, j + k) - B(i, j);
    c.reduce();
    return c;
}

// "" or the 4-tuple where the cocycle identity fails
inline std::string is_cocycle(const CocycleExponents& c) {
    const uint32_t m = c.m;
    for (uint32_t i = 0; i < m; ++i)
        for (uint32_t j = 0; j < m; ++j)
            for (uint32_t k = 0; k < m; ++k)
                for (uint32_t l = 0; l < m; ++l) {
                    Rational v = c.at(j, k, l) - c.at((i + j) % m, k, l) + c.at(i, (j + k) % m, l) -
                                 c.at(i, j, (k + l) % m) + c.at(i, j, k);
                    if (!frac_part(v).is_zero())
                        return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + "," +
                               std::to_string(l) + ") gives " + frac_part(v).str();
                }
    return "";
}

// Smith normal form U A V = D of the integer matrix of d: C^2 -> C^3 on Z_m.
// Rows of A are indexed by (i,j,k), columns by (u,v). U is kept as sparse rows.
struct CoboundarySNF {
    uint32_t m = 0;
    std::vector<mpz_class> diag;                   // D_tt for t < number of columns
    std::vector<std::map<uint32_t, mpz_class>> U;  // m^3 rows
    std::vector<std::vector<mpz_class>> V;         // m^2 x m^2
    std::vector<std::map<uint32_t, int64_t>> A;    // the original matrix, for certificates
};

inline CoboundarySNF coboundary_snf(uint32_t m) {
    const uint32_t R = m * m * m, C = m * m;
    CoboundarySNF S;
    S.m = m;
    std::vector<std::vector<mpz_class>> a(R, std::vector<mpz_class>(C, 0));
    S.A.assign(R, {});
    for (uint32_t i = 0; i < m; ++i)
        for (uint32_t j = 0; j < m; ++j)
            for (uint32_t k = 0; k < m; ++k) {
                uint32_t r = (i * m + j) * m + k;
                auto add = [&](uint32_t u, uint32_t v, int sgn) {
                    a[r][(u % m) * m + v % m] += sgn;
                    S.A[r][(u % m) * m + v % m] += sgn;
                };
                add(j, k, 1);
                add(i + j, k, -1);
                add(i, j + k, 1);
                add(i, j, -1);
            }
    for (auto& row : S.A) std::erase_if(row, [](auto& kv) { return kv.second == 0; });
    S.U.assign(R, {});
    for (uint32_t r = 0; r < R; ++r) S.U[r][r] = 1;
    S.V.assign(C, std::vector<mpz_class>(C, 0));
    for (uint32_t c = 0; c < C; ++c) S.V[c][c] = 1;

    auto row_axpy = [&](uint32_t dst, uint32_t src, const mpz_class& f) {  // row dst -= f * row src
        for (uint32_t c = 0; c < C; ++c)
            if (a[src][c] != 0) a[dst][c] -= f * a[src][c];
        for (auto& [k, v] : S.U[src]) {
            mpz_class& t = S.U[dst][k];
            t -= f * v;
        }
        std::erase_if(S.U[dst], [](auto& kv) { return kv.second == 0; });
    };
    auto col_axpy = [&](uint32_t dst, uint32_t src, const mpz_class& f) {  // col dst -= f * col src
        for (uint32_t r = 0; r < R; ++r)
            if (a[r][src] != 0) a[r][dst] -= f * a[r][src];
        for (uint32_t r = 0; r < C; ++r) S.V[r][dst] -= f * S.V[r][src];
    };
    auto swap_rows = [&](uint32_t x, uint32_t y) {
        std::swap(a[x], a[y]);
        std::swap(S.U[x], S.U[y]);
    };
    auto swap_cols = [&](uint32_t x, uint32_t y) {
        for (uint32_t r = 0; r < R; ++r) std::swap(a[r][x], a[r][y]);
        for (uint32_t r = 0; r < C; ++r) std::swap(S.V[r][x], S.V[r][y]);
    };

    const uint32_t T = std::min(R, C);
    for (uint32_t t = 0; t < T; ++t) {
        for (;;) {
            // smallest nonzero entry of the remaining block
            uint32_t br = R, bc = C;
            for (uint32_t r = t; r < R; ++r)
                for (uint32_t c = t; c < C; ++c)
                    if (a[r][c] != 0 && (br == R || abs(a[r][c]) < abs(a[br][bc]))) br = r, bc = c;
            if (br == R) break;
            swap_rows(t, br);
            swap_cols(t, bc);
            bool clean = true;
            for (uint32_t r = t + 1; r < R; ++r)
                if (a[r][t] != 0) {
                    mpz_class f;
                    mpz_fdiv_q(f.get_mpz_t(), a[r][t].get_mpz_t(), a[t][t].get_mpz_t());
                    row_axpy(r, t, f);
                    if (a[r][t] != 0) clean = false;
                }
            for (uint32_t c = t + 1; c < C; ++c)
                if (a[t][c] != 0) {
                    mpz_class f;
                    mpz_fdiv_q(f.get_mpz_t(), a[t][c].get_mpz_t(), a[t][t].get_mpz_t());
                    col_axpy(c, t, f);
                    if (a[t][c] != 0) clean = false;
                }
            if (!clean) continue;
            // divisibility of the rest by the pivot
            uint32_t bad = R;
            for (uint32_t r = t + 1; r < R && bad == R; ++r)
                for (uint32_t c = t + 1; c < C; ++c)
                    if (a[r][c] % a[t][t] != 0) {
                        bad = r;
                        break;
                    }
            if (bad == R) break;
            row_axpy(t, bad, -1);
        }
        S.diag.push_back(a[t][t]);
    }
    return S;
}

inline const CoboundarySNF& cached_snf(uint32_t m) {
    static std::map<uint32_t, std::unique_ptr<CoboundarySNF>> cache;
    auto& slot = cache[m];
    if (!slot) slot = std::make_unique<CoboundarySNF>(coboundary_snf(m));
    return *slot;
}

struct CoboundaryResult {
    bool yes = false;
    Cochain2 b;                                // primitive when yes
    std::map<uint32_t, mpz_class> certificate; // integer row u with u A = 0 and u.e not in Z, when no
    Rational pairing;                          // u.e mod 1 for the certificate
    std::string detail;
};

// Solve d b = e over Q/Z through the Smith form: with b = V c, row t reads
// D_tt c_t = (U e)_t mod 1. Nonzero D_tt always solve by divisibility; zero rows
// need (U e)_t = 0 mod 1 and otherwise give the certificate.
inline CoboundaryResult is_coboundary(const CocycleExponents& e) {
    const CoboundarySNF& S = cached_snf(e.m);
    const uint32_t R = e.m * e.m * e.m, C = e.m * e.m;
    CoboundaryResult out;
    std::vector<Rational> Ue(R);
    for (uint32_t r = 0; r < R; ++r) {
        Rational acc(0);
        for (auto& [k, v] : S.U[r]) acc += Rational(mpq_class(v)) * e.e[k];
        Ue[r] = frac_part(acc);
    }
    for (uint32_t r = 0; r < R; ++r) {
        bool zero_row = r >= S.diag.size() || S.diag[r] == 0;
        if (zero_row && !Ue[r].is_zero()) {
            out.yes = false;
            out.certificate = S.U[r];
            out.pairing = Ue[r];
            // recheck: u A = 0
            std::map<uint32_t, mpz_class> uA;
            for (auto& [k, v] : S.U[r])
                for (auto& [c, x] : S.A[k]) uA[c] += v * x;
            for (auto& [c, x] : uA)
                if (x != 0) throw std::logic_error("is_coboundary: certificate row is not in the left kernel");
            out.detail = "row " + std::to_string(r) + " of U annihilates d but pairs to " + Ue[r].str();
            return out;
        }
    }
    std::vector<Rational> c(C, Rational(0));
    for (uint32_t t = 0; t < C && t < S.diag.size(); ++t)
        if (S.diag[t] != 0) c[t] = Ue[t] / Rational(mpq_class(S.diag[t]));
    out.b.assign(C, Rational(0));
    for (uint32_t r = 0; r < C; ++r) {
        Rational acc(0);
        for (uint32_t t = 0; t < C; ++t)
            if (S.V[r][t] != 0 && !c[t].is_zero()) acc += Rational(mpq_class(S.V[r][t])) * c[t];
        out.b[r] = frac_part(acc);
    }
    if (!(coboundary(e.m, out.b) == e)) throw std::logic_error("is_coboundary: primitive fails substitution");
    out.yes = true;
    return out;
}

// the unique a with e - standard_cocycle(m, a) a coboundary
inline uint32_t cocycle_class(const CocycleExponents& e) {
    std::vector<uint32_t> hits;
    for (uint32_t a = 0; a < e.m; ++a)
        if (is_coboundary(e - standard_cocycle(e.m, a)).yes) hits.push_back(a);
    if (hits.size() != 1)
        throw std::logic_error("cocycle_class: " + std::to_string(hits.size()) + " classes matched on Z_" +
                               std::to_string(e.m));
    return hits.front();
}

// ---- the restriction to the subcategory generated by a 1-dimensional module

struct CharacterData {
    CycloNum g1, g2, x, y;
};

// g1 -> -1, g2 -> (-1)^{1/s}, x, y -> 0
inline CharacterData sign_character(const Params& p) {
    return {-p.one(), p.minus_one_root(), p.zero(), p.zero()};
}

inline std::string character_respects_relations(const Params& p, const CharacterData& chi) {
    auto scalar = [&](const CycloNum& v) {
        SparseTensor t({1}, p.M());
        t.add(0, v);
        return t;
    };
    if (chi.g1.is_zero()) return "g1 maps to 0";
    auto mul = [&](const SparseTensor& a, const SparseTensor& b) { return scalar(a.at({0}) * b.at({0})); };
    return check_relations(p, scalar(chi.g1), scalar(chi.g1.inverse()), scalar(chi.g2), scalar(chi.x), scalar(chi.y),
                           scalar(p.one()), mul);
}

// exponent t / M of a root of unity zeta_M^t, or nullopt
inline std::optional<Rational> root_exponent(const CycloNum& v, uint32_t M) {
    for (uint32_t t = 0; t < M; ++t)
        if (v == CycloNum::root(M, t)) return Rational(t, M);
    return std::nullopt;
}

struct Restriction {
    CocycleExponents table;
    CocycleExponents closed_form;
    Report report;
};

// phi_s acting on X^i (x) X^j (x) X^k, for the 2s objects X^i with X of character chi.
// chi^i sends a group monomial g to chi(g)^i and kills everything with x or y:
// Delta(x) and Delta(y) carry x resp. y in every term.
inline Restriction restrict_reassociator(const Qusl& Q, const CharacterData& chi) {
    const Params& p = Q.p;
    const uint32_t m = 2 * p.s, M = p.M();
    Restriction out{CocycleExponents(m), CocycleExponents(m), {}};
    std::string rel = character_respects_relations(p, chi);
    out.report.add(run_check("character_respects_relations", [&] { return rel; }));
    if (!rel.empty()) return out;
    auto chi_pow = [&](uint32_t mono, uint32_t i) {
        auto [a, b, c, d] = Q.exps(mono);
        if (c + d > 0) return p.zero();
        return (chi.g1.pow(a) * chi.g2.pow(b)).pow(i);
    };
    std::string bad;
    for (uint32_t i = 0; i < m; ++i)
        for (uint32_t j = 0; j < m; ++j)
            for (uint32_t k = 0; k < m; ++k) {
                CycloNum v = p.zero();
                for (auto& [key, c] : Q.H.phi.entries()) {
                    auto idx = Q.H.phi.unpack(key);
                    v += c * chi_pow(idx[0], i) * chi_pow(idx[1], j) * chi_pow(idx[2], k);
                }
                auto e = root_exponent(v, M);
                if (!e) {
                    if (bad.empty()) bad = "value at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                           std::to_string(k) + ") is not a root of unity: " + v.str();
                    continue;
                }
                out.table.at(i, j, k) = *e;
                out.closed_form.at(i, j, k) = Rational(int64_t(i) * ((j + k) / m), 2);
            }
    out.table.reduce();
    out.closed_form.reduce();
    out.report.add(run_check("values_are_roots_of_unity", [&] { return bad; }));
    // the closed form (1/2) i floor((j+k)/2s) belongs to the sign character only
    const CharacterData sign = sign_character(p);
    if (!(chi.g1 == sign.g1 && chi.g2 == sign.g2 && chi.x.is_zero() && chi.y.is_zero())) {
        out.report.add({"matches_closed_form", Status::skipped, "", "not the sign character"});
        out.report.add(run_check("is_cocycle", [&] { return is_cocycle(out.table); }));
        return out;
    }
    out.report.add(run_check("matches_closed_form", [&]() -> std::string {
        for (uint32_t i = 0; i < m; ++i)
            for (uint32_t j = 0; j < m; ++j)
                for (uint32_t k = 0; k < m; ++k)
                    if (out.table.at(i, j, k) != out.closed_form.at(i, j, k))
                        return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + "): " +
                               out.table.at(i, j, k).str() + " vs " + out.closed_form.at(i, j, k).str();
        return "";
    }));
    out.report.add(run_check("is_cocycle", [&] { return is_cocycle(out.table); }));
    return out;
}

// ---- the twist for odd n, computed in Q_1 u_q(sl2) and carried to D by Psi

struct TwistCheck {
    SparseTensor J, J_inv;  // in Q
    SparseTensor J_double;  // (Psi (x) Psi)(J) in D, when a double is supplied
    QuasiHopfData twisted;
    Report report;
};

// 1_i = (1/n^2) sum_j q^{-ij} h^j for h = g1^{m+1}, n = 2m+1. With the exponent
// read as ij instead of j the family is not orthogonal; both are reported.
inline std::vector<SparseTensor> order_n2_idempotents(const Qusl& Q, bool product_exponent = false) {
    const Params& p = Q.p;
    const uint32_t n = p.n, n2 = n * n, half = (n - 1) / 2;
    SparseTensor h = Q.pow(Q.g1(), half + 1);
    std::vector<SparseTensor> hp{Q.H.unit};
    for (uint32_t j = 1; j < n2 * n2; ++j) hp.push_back(Q.H.mul(hp.back(), h));
    std::vector<SparseTensor> out;
    Rational inv(1, n2);
    for (uint32_t i = 0; i < n2; ++i) {
        SparseTensor e = Q.H.zero(1);
        for (uint32_t j = 0; j < n2; ++j)
            e += (p.q(-int64_t(i) * j) * CycloNum(p.M(), inv)) * hp[product_exponent ? (i * j) % (n2 * n2) : j];
        out.push_back(std::move(e));
    }
    return out;
}

inline std::string idempotent_system_witness(const QuasiHopfData& H, const std::vector<SparseTensor>& e) {
    SparseTensor total = H.zero(1);
    for (size_t i = 0; i < e.size(); ++i) {
        for (size_t j = 0; j < e.size(); ++j) {
            SparseTensor pr = H.mul(e[i], e[j]);
            if (pr != (i == j ? e[i] : H.zero(1)))
                return "1_" + std::to_string(i) + " 1_" + std::to_string(j) + " " +
                       coeff_witness(pr, i == j ? e[i] : H.zero(1));
        }
        total += e[i];
    }
    return coeff_witness(total, H.unit);
}

inline TwistCheck trivializing_twist(uint32_t n, const DoubleAlgebra* X = nullptr) {
    if (n % 2 == 0) throw std::invalid_argument("trivializing_twist: n must be odd");
    Params p(n, 1);
    TwistCheck out;
    QuslBuild B = build_qusl2(p);
    const Qusl& Q = B.Q;
    const QuasiHopfData& H = Q.H;
    const uint32_t n2 = n * n;
    out.report.add(run_check("g1_order_n2", [&]() -> std::string {
        SparseTensor g = H.unit;
        for (uint32_t k = 1; k <= n2; ++k) {
            g = H.mul(g, Q.g1());
            if (g == H.unit) return k == n2 ? "" : "g1 has order " + std::to_string(k);
        }
        return "g1^(n^2) != 1";
    }));
    out.report.add(run_check("g2_is_g1_power", [&] { return coeff_witness(Q.pow(Q.g1(), n * (n + 1) / 2), Q.g2()); }));

    std::vector<SparseTensor> e = order_n2_idempotents(Q);
    auto ri = run_check("idempotents", [&] { return idempotent_system_witness(H, e); });
    std::string printed = idempotent_system_witness(H, order_n2_idempotents(Q, true));
    ri.detail = {{"exponent_j", ri.status == Status::pass}, {"exponent_ij_printed", printed.empty()}};
    if (!printed.empty()) ri.detail["exponent_ij_witness"] = printed;
    out.report.add(ri);
    if (ri.status != Status::pass) throw std::runtime_error("trivializing_twist: " + ri.witness);

    // J = sum q^{i(j - j')} 1_i (x) 1_j with j' = j mod n; J^-1 has the conjugate coefficients
    out.J = H.zero(2);
    out.J_inv = H.zero(2);
    for (uint32_t i = 0; i < n2; ++i)
        for (uint32_t j = 0; j < n2; ++j) {
            int64_t ex = int64_t(i) * (j - j % n);
            SparseTensor t = tensor_product(e[i], e[j]);
            out.J += p.q(ex) * t;
            out.J_inv += p.q(-ex) * t;
        }
    // twisting by J^-1: Phi = (1 (x) J^-1)(id (x) Delta)(J^-1) phi (Delta (x) id)(J)(J (x) 1)
    TwistResult T = twist(H, out.J_inv, &out.J, false);
    out.twisted = std::move(T.algebra);
    const QuasiHopfData& Ht = out.twisted;
    out.report.add(run_check("phi_trivial", [&] { return coeff_witness(Ht.phi, Ht.unit_tensor(3)); }));
    out.report.add(run_check("phi_inv_trivial", [&] { return coeff_witness(Ht.phi_inv, Ht.unit_tensor(3)); }));
    out.report.add(run_check("coassociative", [&]() -> std::string {
        for (uint32_t a = 0; a < Ht.dim; ++a) {
            const SparseTensor& d = Ht.comult.images[a];
            std::string w = coeff_witness(Ht.delta(d, 0), Ht.delta(d, 1));
            if (!w.empty()) return "basis " + std::to_string(a) + " " + w;
        }
        return "";
    }));
    out.report.add(run_check("beta_invertible", [&]() -> std::string {
        return Ht.mul(T.beta_J, T.beta_J_inv) == Ht.unit ? "" : "beta_J has no inverse";
    }));
    if (X) {
        const QuasiHopfData& D = X->D;
        DoubleNames nm = double_names(*X);
        PsiMap P = build_psi(Q, *X);
        out.J_double = psi_apply(P, out.J, D);
        SparseTensor Ji_double = psi_apply(P, out.J_inv, D);
        out.report.add(run_check("double.g1_order_n2", [&]() -> std::string {
            SparseTensor g = D.unit;
            for (uint32_t k = 1; k <= n2; ++k) {
                g = X->mul(g, nm.g1);
                if (g == D.unit) return k == n2 ? "" : "g1 has order " + std::to_string(k);
            }
            return "g1^(n^2) != 1";
        }));
        out.report.add(run_check("double.g2_is_g1_power", [&]() -> std::string {
            SparseTensor g = D.unit;
            for (uint32_t k = 0; k < n * (n + 1) / 2; ++k) g = X->mul(g, nm.g1);
            return coeff_witness(g, nm.g2);
        }));
        // Phi_{J^-1} evaluated directly in D
        out.report.add(run_check("double.phi_trivial", [&]() -> std::string {
            auto t3 = D.tables(3);
            SparseTensor l = legwise_multiply(tensor_product(D.unit, Ji_double), D.delta(Ji_double, 1), t3);
            SparseTensor r = legwise_multiply(D.delta(out.J_double, 0), tensor_product(out.J_double, D.unit), t3);
            return coeff_witness(legwise_multiply(legwise_multiply(l, D.phi, t3), r, t3), D.unit_tensor(3));
        }));
    }
    return out;
}

}  // namespace qh
