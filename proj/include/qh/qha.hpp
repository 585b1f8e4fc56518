#pragma once

#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "qh/intassoc.hpp"
#include "qh/peirce.hpp"
#include "qh/report.hpp"
#include "qh/tensor.hpp"

namespace qh {

// A finite-dimensional quasi-Hopf algebra in a fixed basis.
struct QuasiHopfData {
    std::string name;
    uint32_t dim = 0;
    uint32_t order = 1;
    std::vector<std::string> labels;
    std::shared_ptr<const MultTable> mult;
    SparseTensor unit;            // 1 leg
    LinearMap comult;             // H -> H (x) H
    std::vector<CycloNum> counit;
    SparseTensor phi;             // 3 legs
    SparseTensor phi_inv;         // 3 legs
    LinearMap antipode;           // H -> H
    SparseTensor alpha, beta;     // 1 leg

    SparseTensor basis(uint32_t i) const {
        SparseTensor t({dim}, order);
        t.add(i, CycloNum::one(order));
        return t;
    }
    SparseTensor zero(size_t legs = 1) const { return SparseTensor(std::vector<uint32_t>(legs, dim), order); }
    std::vector<const MultTable*> tables(size_t legs) const { return std::vector<const MultTable*>(legs, mult.get()); }
    SparseTensor mul(const SparseTensor& a, const SparseTensor& b) const {
        return legwise_multiply(a, b, tables(a.legs()));
    }
    SparseTensor unit_tensor(size_t legs) const {
        SparseTensor r(std::vector<uint32_t>{}, order);
        r.add(0, CycloNum::one(order));
        for (size_t i = 0; i < legs; ++i) r = tensor_product(r, unit);
        return r;
    }
    SparseTensor delta(const SparseTensor& t, size_t leg) const { return apply_map_to_leg(t, leg, comult); }
    SparseTensor S(const SparseTensor& t, size_t leg) const { return apply_map_to_leg(t, leg, antipode); }
    LinearMap counit_map() const {
        LinearMap e(dim, {}, order);
        for (uint32_t i = 0; i < dim; ++i) e.images[i].add(0, counit[i]);
        return e;
    }
    SparseTensor eps(const SparseTensor& t, size_t leg) const { return apply_map_to_leg(t, leg, counit_map()); }
    CycloNum eps_value(const SparseTensor& v) const {
        CycloNum r = CycloNum::zero(order);
        for (auto& [k, c] : v.entries()) r += c * counit[k];
        return r;
    }
};

inline std::string coeff_witness(const SparseTensor& lhs, const SparseTensor& rhs) {
    SparseTensor d = lhs - rhs;
    if (d.is_zero()) return "";
    auto& [k, c] = *d.entries().begin();
    auto idx = d.unpack(k);
    std::string s = "at index [";
    for (size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
    return s + "] expected " + rhs.at(idx).str() + " got " + lhs.at(idx).str();
}

struct CheckOptions {
    // number of basis pairs/triples up to which checks run exhaustively
    uint64_t max_exhaustive_dim = 1024;
    uint64_t samples = 10000;
    uint64_t seed = 1;
    // Algebra generators. When given and dim exceeds max_literal_pair_dim, the pairwise
    // morphism checks (Delta, S) run as a closure proof: the identity for every
    // (generator, basis) pair, a certificate that the generators span the algebra, and
    // closure_samples literal pairs on top.
    std::vector<SparseTensor> generators;
    uint64_t max_literal_pair_dim = 1024;
    uint64_t closure_samples = 1000;
    // associativity runs over all basis triples up to this dim
    uint64_t max_triple_dim = 1024;
    // Commuting units acting monomially on the basis. When given, the exhaustive
    // associativity check runs in the adapted basis of peirce_basis, where almost
    // all products vanish; associativity is trilinear so any basis will do.
    std::vector<SparseTensor> units;
};

// Dimension of the span of all words in the generators (including the empty word).
inline uint32_t generated_dimension(const QuasiHopfData& H, const std::vector<SparseTensor>& gens) {
    std::map<uint32_t, std::map<uint32_t, CycloNum>> rows;  // pivot -> row with leading entry 1
    std::vector<SparseTensor> queue{H.unit};
    auto insert = [&](const SparseTensor& t) -> bool {
        std::map<uint32_t, CycloNum> v;
        for (auto& [k, c] : t.entries()) v.emplace(static_cast<uint32_t>(k), c);
        while (!v.empty()) {
            auto [k, c] = *v.begin();
            auto it = rows.find(k);
            if (it == rows.end()) {
                CycloNum inv = c.inverse();
                for (auto& [j, x] : v) x = x * inv;
                rows.emplace(k, std::move(v));
                return true;
            }
            for (auto& [j, x] : it->second) {
                auto f = v.find(j);
                CycloNum d = c * x;
                if (f == v.end()) v.emplace(j, -d);
                else {
                    f->second -= d;
                    if (f->second.is_zero()) v.erase(f);
                }
            }
        }
        return false;
    };
    insert(H.unit);
    for (size_t i = 0; i < queue.size() && rows.size() < H.dim; ++i)
        for (auto& g : gens) {
            SparseTensor w = H.mul(g, queue[i]);
            if (insert(w)) queue.push_back(std::move(w));
        }
    return static_cast<uint32_t>(rows.size());
}

// Sampled pairs used alongside a closure proof.
inline std::vector<std::pair<uint32_t, uint32_t>> sampled_pairs(uint32_t dim, uint64_t count, uint64_t seed) {
    std::vector<std::pair<uint32_t, uint32_t>> v;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint32_t> pick(0, dim - 1);
    for (uint64_t s = 0; s < count; ++s) v.emplace_back(pick(rng), pick(rng));
    return v;
}

inline bool use_closure(const QuasiHopfData& H, const CheckOptions& opt) {
    return !opt.generators.empty() && H.dim > opt.max_literal_pair_dim;
}

// Exhaustive associativity with zero skipping: (ab)c can only be nonzero when c
// is right-compatible with some term of ab, and a(bc) only when bc != 0.
inline std::string check_associative_exhaustive_generic(const MultTable& m) {
    const uint32_t d = m.dim();
    std::vector<std::vector<uint32_t>> nzr(d);
    for (uint32_t b = 0; b < d; ++b)
        for (uint32_t c = 0; c < d; ++c)
            if (!m(b, c).empty()) nzr[b].push_back(c);
    std::vector<CycloNum> acc(d, CycloNum::zero(m.order()));
    std::vector<uint32_t> touched;
    std::vector<uint8_t> mark(d, 0), cmark(d, 0);
    std::vector<uint32_t> cand;
    for (uint32_t a = 0; a < d; ++a)
        for (uint32_t b = 0; b < d; ++b) {
            const Terms& ab = m(a, b);
            cand.clear();
            for (uint32_t c : nzr[b])
                if (!cmark[c]) cmark[c] = 1, cand.push_back(c);
            for (auto& [k, x] : ab)
                for (uint32_t c : nzr[k])
                    if (!cmark[c]) cmark[c] = 1, cand.push_back(c);
            for (uint32_t c : cand) cmark[c] = 0;
            for (uint32_t c : cand) {
                touched.clear();
                for (auto& [k, x] : ab)
                    for (auto& [t, y] : m(k, c)) {
                        if (!mark[t]) mark[t] = 1, touched.push_back(t);
                        acc[t] += x * y;
                    }
                for (auto& [k, x] : m(b, c))
                    for (auto& [t, y] : m(a, k)) {
                        if (!mark[t]) mark[t] = 1, touched.push_back(t);
                        acc[t] -= x * y;
                    }
                std::string w;
                for (uint32_t t : touched) {
                    if (w.empty() && !acc[t].is_zero())
                        w = "triple (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
                            ") differs at basis " + std::to_string(t) + " by " + acc[t].str();
                    acc[t] = CycloNum::zero(m.order());
                    mark[t] = 0;
                }
                if (!w.empty()) return w;
            }
        }
    return "";
}

// Uses the exact integer table when the constants fit, the CycloNum loop otherwise.
inline std::string check_associative_exhaustive(const MultTable& m) {
    if (auto T = IntTable::from(m)) return check_associative_int(*T);
    return check_associative_exhaustive_generic(m);
}

// (gb)c = g(bc) for generators g and all basis b, c. Together with a spanning
// certificate this gives associativity everywhere: {x : (xb)c = x(bc) for all b, c}
// is closed under products, so it is a subalgebra containing the generators.
inline std::string check_associative_closure(const MultTable& m, const std::vector<SparseTensor>& gens) {
    const uint32_t d = m.dim();
    std::vector<CycloNum> acc(d, CycloNum::zero(m.order()));
    std::vector<uint8_t> mark(d, 0);
    std::vector<uint32_t> touched;
    for (size_t gi = 0; gi < gens.size(); ++gi) {
        std::vector<Terms> L(d);  // g e_b
        for (uint32_t b = 0; b < d; ++b) {
            std::map<uint32_t, CycloNum> acc_b;
            for (auto& [k, c] : gens[gi].entries())
                for (auto& [t, y] : m(static_cast<uint32_t>(k), b)) {
                    auto it = acc_b.find(t);
                    if (it == acc_b.end()) acc_b.emplace(t, c * y);
                    else it->second += c * y;
                }
            for (auto& [t, c] : acc_b)
                if (!c.is_zero()) L[b].emplace_back(t, c);
        }
        for (uint32_t b = 0; b < d; ++b)
            for (uint32_t c = 0; c < d; ++c) {
                touched.clear();
                for (auto& [k, x] : L[b])
                    for (auto& [t, y] : m(k, c)) {
                        if (!mark[t]) mark[t] = 1, touched.push_back(t);
                        acc[t] += x * y;
                    }
                for (auto& [k, x] : m(b, c))
                    for (auto& [t, y] : L[k]) {
                        if (!mark[t]) mark[t] = 1, touched.push_back(t);
                        acc[t] -= x * y;
                    }
                std::string w;
                for (uint32_t t : touched) {
                    if (w.empty() && !acc[t].is_zero())
                        w = "generator " + std::to_string(gi) + " with (" + std::to_string(b) + "," + std::to_string(c) +
                            ") differs at basis " + std::to_string(t);
                    acc[t] = CycloNum::zero(m.order());
                    mark[t] = 0;
                }
                if (!w.empty()) return w;
            }
    }
    return "";
}

inline std::string check_associative_sampled(const MultTable& m, uint64_t samples, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint32_t> pick(0, m.dim() - 1);
    for (uint64_t s = 0; s < samples; ++s) {
        uint32_t a = pick(rng), b = pick(rng), c = pick(rng);
        SparseTensor l({m.dim()}, m.order()), r({m.dim()}, m.order());
        for (auto& [k, x] : m(a, b))
            for (auto& [t, y] : m(k, c)) l.add(t, x * y);
        for (auto& [k, x] : m(b, c))
            for (auto& [t, y] : m(a, k)) r.add(t, x * y);
        if (l != r)
            return "triple (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ") " +
                   coeff_witness(l, r);
    }
    return "";
}

inline CheckRecord check_associativity(const MultTable& m, const CheckOptions& opt) {
    if (m.dim() <= opt.max_triple_dim) {
        if (!opt.units.empty()) {
            auto r = run_check("associativity", [&] {
                PeirceBasis P = peirce_basis(m, opt.units);
                return check_associative_exhaustive(transform_table(m, P));
            });
            r.detail = {{"mode", "exhaustive"}, {"basis", "peirce"}, {"dim", m.dim()}};
            return r;
        }
        auto r = run_check("associativity", [&] { return check_associative_exhaustive(m); });
        r.detail = {{"mode", "exhaustive"}, {"dim", m.dim()}};
        return r;
    }
    auto r = run_check("associativity", [&] { return check_associative_sampled(m, opt.samples, opt.seed); });
    r.detail = {{"mode", "sampled"}, {"dim", m.dim()}, {"samples", opt.samples}, {"seed", opt.seed}};
    return r;
}

inline std::string check_unit(const QuasiHopfData& H) {
    for (uint32_t a = 0; a < H.dim; ++a) {
        SparseTensor e = H.basis(a);
        if (H.mul(H.unit, e) != e) return "1*e_" + std::to_string(a) + " != e_" + std::to_string(a);
        if (H.mul(e, H.unit) != e) return "e_" + std::to_string(a) + "*1 != e_" + std::to_string(a);
    }
    return "";
}

// Pairs (a,b) for the morphism checks: all of them, or a seeded sample.
inline std::vector<std::pair<uint32_t, uint32_t>> basis_pairs(uint32_t dim, const CheckOptions& opt, bool& exhaustive) {
    std::vector<std::pair<uint32_t, uint32_t>> v;
    exhaustive = dim <= opt.max_exhaustive_dim;
    if (exhaustive) {
        v.reserve(size_t(dim) * dim);
        for (uint32_t a = 0; a < dim; ++a)
            for (uint32_t b = 0; b < dim; ++b) v.emplace_back(a, b);
    } else {
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<uint32_t> pick(0, dim - 1);
        for (uint64_t s = 0; s < opt.samples; ++s) v.emplace_back(pick(rng), pick(rng));
    }
    return v;
}

inline std::string pair_name(uint32_t a, uint32_t b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

inline Report check_quasi_bialgebra(const QuasiHopfData& H, const CheckOptions& opt = {}) {
    Report rep;
    if (H.dim > opt.max_triple_dim && !opt.generators.empty()) {
        auto r = run_check("associativity", [&]() -> std::string {
            std::string w = check_associative_closure(*H.mult, opt.generators);
            if (!w.empty()) return w;
            uint32_t span = generated_dimension(H, opt.generators);
            if (span != H.dim) return "generators span only " + std::to_string(span) + " dimensions";
            return check_associative_sampled(*H.mult, opt.samples, opt.seed);
        });
        r.detail = {{"mode", "generator_closure"}, {"generators", opt.generators.size()},
                    {"sampled_triples", opt.samples}, {"covers_all_triples", true}};
        rep.add(r);
    } else {
        rep.add(check_associativity(*H.mult, opt));
    }
    rep.add(run_check("unit", [&] { return check_unit(H); }));
    bool exh = true;
    auto pairs = basis_pairs(H.dim, opt, exh);
    // the counit check is cheap enough to stay exhaustive up to dim 1024
    CheckOptions copt = opt;
    copt.max_exhaustive_dim = std::max<uint64_t>(opt.max_exhaustive_dim, 1024);
    bool cexh = true;
    auto cpairs = basis_pairs(H.dim, copt, cexh);
    auto rc = run_check("counit_multiplicative", [&]() -> std::string {
        for (auto [a, b] : cpairs) {
            CycloNum l = CycloNum::zero(H.order);
            for (auto& [k, c] : (*H.mult)(a, b)) l += c * H.counit[k];
            if (l != H.counit[a] * H.counit[b]) return "pair " + pair_name(a, b);
        }
        if (H.eps_value(H.unit) != CycloNum::one(H.order)) return "counit(1) != 1";
        return "";
    });
    rc.detail = {{"mode", cexh ? "exhaustive" : "sampled"}, {"pairs", cpairs.size()}};
    rep.add(rc);
    auto rm = run_check("comult_multiplicative", [&]() -> std::string {
        auto t2 = H.tables(2);
        auto on_pair = [&](const SparseTensor& x, const SparseTensor& dx, uint32_t b) -> std::string {
            SparseTensor l = H.delta(H.mul(x, H.basis(b)), 0);
            SparseTensor r = legwise_multiply(dx, H.comult.images[b], t2);
            return coeff_witness(l, r);
        };
        if (H.delta(H.unit, 0) != H.unit_tensor(2)) return "Delta(1) != 1(x)1";
        if (use_closure(H, opt)) {
            for (size_t g = 0; g < opt.generators.size(); ++g) {
                SparseTensor dg = H.delta(opt.generators[g], 0);
                for (uint32_t b = 0; b < H.dim; ++b) {
                    std::string w = on_pair(opt.generators[g], dg, b);
                    if (!w.empty()) return "generator " + std::to_string(g) + " basis " + std::to_string(b) + " " + w;
                }
            }
            uint32_t span = generated_dimension(H, opt.generators);
            if (span != H.dim) return "generators span only " + std::to_string(span) + " dimensions";
            for (auto [a, b] : sampled_pairs(H.dim, opt.closure_samples, opt.seed)) {
                std::string w = on_pair(H.basis(a), H.comult.images[a], b);
                if (!w.empty()) return "pair " + pair_name(a, b) + " " + w;
            }
            return "";
        }
        for (auto [a, b] : pairs) {
            const Terms& ab = (*H.mult)(a, b);
            SparseTensor l = H.zero(2);
            for (auto& [k, c] : ab) l += c * H.comult.images[k];
            SparseTensor r = legwise_multiply(H.comult.images[a], H.comult.images[b], t2);
            if (l != r) return "pair " + pair_name(a, b) + " " + coeff_witness(l, r);
        }
        return "";
    });
    if (use_closure(H, opt))
        rm.detail = {{"mode", "generator_closure"}, {"generators", opt.generators.size()},
                     {"sampled_pairs", opt.closure_samples}, {"covers_all_pairs", true}};
    else
        rm.detail = {{"mode", exh ? "exhaustive" : "sampled"}, {"pairs", pairs.size()}};
    rep.add(rm);
    rep.add(run_check("quasi_coassociativity", [&]() -> std::string {
        auto t3 = H.tables(3);
        for (uint32_t a = 0; a < H.dim; ++a) {
            const SparseTensor& d = H.comult.images[a];
            SparseTensor l = legwise_multiply(H.delta(d, 1), H.phi, t3);
            SparseTensor r = legwise_multiply(H.phi, H.delta(d, 0), t3);
            if (l != r) return "basis " + std::to_string(a) + " " + coeff_witness(l, r);
        }
        return "";
    }));
    rep.add(run_check("pentagon", [&]() -> std::string {
        auto t4 = H.tables(4);
        SparseTensor l = legwise_multiply(H.delta(H.phi, 2), H.delta(H.phi, 0), t4);
        SparseTensor one_phi = tensor_product(H.unit, H.phi);
        SparseTensor phi_one = tensor_product(H.phi, H.unit);
        SparseTensor r = legwise_multiply(legwise_multiply(one_phi, H.delta(H.phi, 1), t4), phi_one, t4);
        return coeff_witness(l, r);
    }));
    rep.add(run_check("counit_laws", [&]() -> std::string {
        for (uint32_t a = 0; a < H.dim; ++a) {
            SparseTensor e = H.basis(a);
            const SparseTensor& d = H.comult.images[a];
            if (H.eps(d, 0) != e) return "(eps(x)id)Delta(e_" + std::to_string(a) + ")";
            if (H.eps(d, 1) != e) return "(id(x)eps)Delta(e_" + std::to_string(a) + ")";
        }
        return "";
    }));
    rep.add(run_check("phi_counit", [&]() -> std::string {
        return coeff_witness(H.eps(H.phi, 1), H.unit_tensor(2));
    }));
    rep.add(run_check("phi_invertible", [&]() -> std::string {
        auto t3 = H.tables(3);
        std::string w = coeff_witness(legwise_multiply(H.phi, H.phi_inv, t3), H.unit_tensor(3));
        if (w.empty()) w = coeff_witness(legwise_multiply(H.phi_inv, H.phi, t3), H.unit_tensor(3));
        return w;
    }));
    return rep;
}

// Contracts leg-by-leg: for a 3-leg tensor sum X(x)Y(x)Z returns
// sum f1(X) f2(Y) f3(Z) where each fi maps a basis index to an element.
template <class F>
SparseTensor contract_product(const QuasiHopfData& H, const SparseTensor& t, F&& leg_image) {
    SparseTensor r = H.zero(1);
    for (auto& [k, c] : t.entries()) {
        auto idx = t.unpack(k);
        SparseTensor acc = H.unit;
        for (size_t l = 0; l < idx.size(); ++l) acc = H.mul(acc, leg_image(l, idx[l]));
        r += c * acc;
    }
    return r;
}

inline Report check_antipode(const QuasiHopfData& H, const CheckOptions& opt = {}) {
    Report rep;
    rep.add(run_check("antipode_alpha", [&]() -> std::string {
        for (uint32_t a = 0; a < H.dim; ++a) {
            SparseTensor l = H.zero(1);
            for (auto& [k, c] : H.comult.images[a].entries()) {
                auto idx = H.comult.images[a].unpack(k);
                l += c * H.mul(H.mul(H.antipode.images[idx[0]], H.alpha), H.basis(idx[1]));
            }
            SparseTensor r = H.counit[a] * H.alpha;
            if (l != r) return "basis " + std::to_string(a) + " " + coeff_witness(l, r);
        }
        return "";
    }));
    rep.add(run_check("antipode_beta", [&]() -> std::string {
        for (uint32_t a = 0; a < H.dim; ++a) {
            SparseTensor l = H.zero(1);
            for (auto& [k, c] : H.comult.images[a].entries()) {
                auto idx = H.comult.images[a].unpack(k);
                l += c * H.mul(H.mul(H.basis(idx[0]), H.beta), H.antipode.images[idx[1]]);
            }
            SparseTensor r = H.counit[a] * H.beta;
            if (l != r) return "basis " + std::to_string(a) + " " + coeff_witness(l, r);
        }
        return "";
    }));
    rep.add(run_check("antipode_phi", [&]() -> std::string {
        SparseTensor l = contract_product(H, H.phi, [&](size_t leg, uint32_t i) -> SparseTensor {
            if (leg == 0) return H.mul(H.basis(i), H.beta);
            if (leg == 1) return H.mul(H.antipode.images[i], H.alpha);
            return H.basis(i);
        });
        return coeff_witness(l, H.unit);
    }));
    rep.add(run_check("antipode_phi_inv", [&]() -> std::string {
        SparseTensor l = contract_product(H, H.phi_inv, [&](size_t leg, uint32_t i) -> SparseTensor {
            if (leg == 0) return H.mul(H.antipode.images[i], H.alpha);
            if (leg == 1) return H.mul(H.basis(i), H.beta);
            return H.antipode.images[i];
        });
        return coeff_witness(l, H.unit);
    }));
    bool exh = true;
    auto pairs = basis_pairs(H.dim, opt, exh);
    auto ra = run_check("antipode_antimultiplicative", [&]() -> std::string {
        if (H.antipode.apply(H.unit) != H.unit) return "S(1) != 1";
        auto on_pair = [&](const SparseTensor& x, const SparseTensor& sx, uint32_t b) -> std::string {
            SparseTensor l = H.antipode.apply(H.mul(x, H.basis(b)));
            SparseTensor r = H.mul(H.antipode.images[b], sx);
            return coeff_witness(l, r);
        };
        if (use_closure(H, opt)) {
            for (size_t g = 0; g < opt.generators.size(); ++g) {
                SparseTensor sg = H.antipode.apply(opt.generators[g]);
                for (uint32_t b = 0; b < H.dim; ++b) {
                    std::string w = on_pair(opt.generators[g], sg, b);
                    if (!w.empty()) return "generator " + std::to_string(g) + " basis " + std::to_string(b) + " " + w;
                }
            }
            uint32_t span = generated_dimension(H, opt.generators);
            if (span != H.dim) return "generators span only " + std::to_string(span) + " dimensions";
            for (auto [a, b] : sampled_pairs(H.dim, opt.closure_samples, opt.seed)) {
                std::string w = on_pair(H.basis(a), H.antipode.images[a], b);
                if (!w.empty()) return "pair " + pair_name(a, b) + " " + w;
            }
            return "";
        }
        for (auto [a, b] : pairs) {
            SparseTensor l = H.zero(1);
            for (auto& [k, c] : (*H.mult)(a, b)) l += c * H.antipode.images[k];
            SparseTensor r = H.mul(H.antipode.images[b], H.antipode.images[a]);
            if (l != r) return "pair " + pair_name(a, b) + " " + coeff_witness(l, r);
        }
        return "";
    });
    if (use_closure(H, opt))
        ra.detail = {{"mode", "generator_closure"}, {"generators", opt.generators.size()},
                     {"sampled_pairs", opt.closure_samples}, {"covers_all_pairs", true}};
    else
        ra.detail = {{"mode", exh ? "exhaustive" : "sampled"}, {"pairs", pairs.size()}};
    rep.add(ra);
    return rep;
}

// ---- functionals on H, stored as 1-leg tensors of coordinates in the dual basis

using Functional = SparseTensor;

inline CycloNum evaluate(const Functional& f, const SparseTensor& v) {
    CycloNum r = CycloNum::zero(v.order());
    auto& fe = f.entries();
    for (auto& [k, c] : v.entries()) {
        auto it = fe.find(k);
        if (it != fe.end()) r += it->second * c;
    }
    return r;
}

inline Functional counit_functional(const QuasiHopfData& H) {
    Functional f = H.zero(1);
    for (uint32_t i = 0; i < H.dim; ++i) f.add(i, H.counit[i]);
    return f;
}

// (f.g)(a) = f(a_(1)) g(a_(2))
inline Functional convolution(const Functional& f, const Functional& g, const QuasiHopfData& H) {
    Functional r = H.zero(1);
    for (uint32_t a = 0; a < H.dim; ++a) {
        CycloNum v = CycloNum::zero(H.order);
        const SparseTensor& d = H.comult.images[a];
        for (auto& [k, c] : d.entries()) {
            uint32_t i = static_cast<uint32_t>(k / H.dim), j = static_cast<uint32_t>(k % H.dim);
            auto fi = f.entries().find(i);
            if (fi == f.entries().end()) continue;
            auto gj = g.entries().find(j);
            if (gj == g.entries().end()) continue;
            v += c * fi->second * gj->second;
        }
        r.add(a, v);
    }
    return r;
}

// (a -> f)(b) = f(ba)
inline Functional act_left(const SparseTensor& a, const Functional& f, const QuasiHopfData& H) {
    Functional r = H.zero(1);
    for (uint32_t b = 0; b < H.dim; ++b) r.add(b, evaluate(f, H.mul(H.basis(b), a)));
    return r;
}

// (f <- a)(b) = f(ab)
inline Functional act_right(const Functional& f, const SparseTensor& a, const QuasiHopfData& H) {
    Functional r = H.zero(1);
    for (uint32_t b = 0; b < H.dim; ++b) r.add(b, evaluate(f, H.mul(a, H.basis(b))));
    return r;
}

// ---- gauge twisting

struct TwistResult {
    QuasiHopfData algebra;
    SparseTensor J_inv;
    SparseTensor alpha_J, beta_J, beta_J_inv;
    Report report;
};

inline SparseTensor element_inverse(const QuasiHopfData& H, const SparseTensor& x) {
    return invert_element(x, H.tables(1), H.unit).inverse;
}

// H_J with Delta_J = J Delta J^-1, Phi_J = (1(x)J)(id(x)Delta)(J) phi (Delta(x)id)(J^-1)(J^-1(x)1),
// S_J = beta_J S beta_J^-1, alpha' = beta_J alpha_J, beta' = 1.
inline TwistResult twist(const QuasiHopfData& H, const SparseTensor& J, const SparseTensor* J_inv_given = nullptr,
                         bool verify = true, const CheckOptions& opt = {}) {
    auto t2 = H.tables(2), t3 = H.tables(3);
    TwistResult out;
    if (H.eps(J, 0) != H.unit || H.eps(J, 1) != H.unit)
        throw std::invalid_argument("twist: J is not counit-normalized");
    SparseTensor Ji = J_inv_given ? *J_inv_given : invert_element(J, t2, H.unit_tensor(2)).inverse;
    if (legwise_multiply(J, Ji, t2) != H.unit_tensor(2) || legwise_multiply(Ji, J, t2) != H.unit_tensor(2))
        throw std::domain_error("twist: supplied inverse of J is wrong");
    out.J_inv = Ji;

    // alpha_J = S(fbar) alpha gbar, beta_J = f beta S(g)
    out.alpha_J = H.zero(1);
    for (auto& [k, c] : Ji.entries()) {
        auto idx = Ji.unpack(k);
        out.alpha_J += c * H.mul(H.mul(H.antipode.images[idx[0]], H.alpha), H.basis(idx[1]));
    }
    out.beta_J = H.zero(1);
    for (auto& [k, c] : J.entries()) {
        auto idx = J.unpack(k);
        out.beta_J += c * H.mul(H.mul(H.basis(idx[0]), H.beta), H.antipode.images[idx[1]]);
    }
    out.beta_J_inv = element_inverse(H, out.beta_J);

    QuasiHopfData T = H;
    T.name = H.name + "_twisted";
    for (uint32_t a = 0; a < H.dim; ++a)
        T.comult.images[a] = legwise_multiply(legwise_multiply(J, H.comult.images[a], t2), Ji, t2);
    SparseTensor one_J = tensor_product(H.unit, J);
    SparseTensor Ji_one = tensor_product(Ji, H.unit);
    SparseTensor left = legwise_multiply(one_J, H.delta(J, 1), t3);
    SparseTensor right = legwise_multiply(H.delta(Ji, 0), Ji_one, t3);
    T.phi = legwise_multiply(legwise_multiply(left, H.phi, t3), right, t3);
    // inverse by the mirrored product
    SparseTensor J_one = tensor_product(J, H.unit);
    SparseTensor one_Ji = tensor_product(H.unit, Ji);
    SparseTensor ileft = legwise_multiply(J_one, H.delta(J, 0), t3);
    SparseTensor iright = legwise_multiply(H.delta(Ji, 1), one_Ji, t3);
    T.phi_inv = legwise_multiply(legwise_multiply(ileft, H.phi_inv, t3), iright, t3);
    for (uint32_t a = 0; a < H.dim; ++a)
        T.antipode.images[a] = H.mul(H.mul(out.beta_J, H.antipode.images[a]), out.beta_J_inv);
    T.alpha = H.mul(out.beta_J, out.alpha_J);
    T.beta = H.unit;
    out.algebra = std::move(T);
    if (verify) {
        out.report.append(check_quasi_bialgebra(out.algebra, opt), "twisted");
        out.report.append(check_antipode(out.algebra, opt), "twisted");
    }
    return out;
}

inline nlohmann::json algebra_json(const QuasiHopfData& H) {
    nlohmann::json j;
    j["name"] = H.name;
    j["dim"] = H.dim;
    j["field_order"] = H.order;
    j["labels"] = H.labels;
    nlohmann::json mult = nlohmann::json::array();
    for (uint32_t a = 0; a < H.dim; ++a)
        for (uint32_t b = 0; b < H.dim; ++b)
            for (auto& [k, c] : (*H.mult)(a, b)) mult.push_back({a, b, k, c.str()});
    j["mult"] = mult;
    nlohmann::json comult = nlohmann::json::array();
    for (uint32_t a = 0; a < H.dim; ++a)
        for (auto& [k, c] : H.comult.images[a].entries())
            comult.push_back({a, static_cast<uint32_t>(k / H.dim), static_cast<uint32_t>(k % H.dim), c.str()});
    j["comult"] = comult;
    nlohmann::json counit = nlohmann::json::array();
    for (auto& c : H.counit) counit.push_back(c.str());
    j["counit"] = counit;
    j["unit"] = H.unit.to_json();
    j["reassociator"] = H.phi.to_json();
    nlohmann::json S = nlohmann::json::array();
    for (uint32_t a = 0; a < H.dim; ++a)
        for (auto& [k, c] : H.antipode.images[a].entries()) S.push_back({a, static_cast<uint32_t>(k), c.str()});
    j["antipode"] = S;
    j["alpha"] = H.alpha.to_json();
    j["beta"] = H.beta.to_json();
    return j;
}

}  // namespace qh
