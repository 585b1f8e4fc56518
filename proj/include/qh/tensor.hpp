#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qh/cyclo.hpp"

namespace qh {

using Terms = std::vector<std::pair<uint32_t, CycloNum>>;

// Structure constants of a finite-dimensional algebra, e_a e_b = sum_c m^c_ab e_c.
// Entries can be supplied eagerly or produced on first use by a callback.
class MultTable {
public:
    using Producer = std::function<Terms(uint32_t, uint32_t)>;

    MultTable() = default;
    MultTable(uint32_t dim, uint32_t order) : dim_(dim), order_(order), table_(size_t(dim) * dim), done_(size_t(dim) * dim, 1) {}
    MultTable(uint32_t dim, uint32_t order, Producer p)
        : dim_(dim), order_(order), table_(size_t(dim) * dim), done_(size_t(dim) * dim, 0), produce_(std::move(p)) {}

    uint32_t dim() const { return dim_; }
    uint32_t order() const { return order_; }

    const Terms& operator()(uint32_t a, uint32_t b) const {
        size_t k = size_t(a) * dim_ + b;
        if (!done_[k]) {
            table_[k] = produce_(a, b);
            done_[k] = 1;
        }
        return table_[k];
    }
    void set(uint32_t a, uint32_t b, Terms t) {
        size_t k = size_t(a) * dim_ + b;
        table_[k] = std::move(t);
        done_[k] = 1;
    }
    void fill_all() const {
        for (uint32_t a = 0; a < dim_; ++a)
            for (uint32_t b = 0; b < dim_; ++b) (void)(*this)(a, b);
    }

private:
    uint32_t dim_ = 0;
    uint32_t order_ = 1;
    mutable std::vector<Terms> table_;
    mutable std::vector<uint8_t> done_;
    Producer produce_;
};

// Element of V_1 (x) ... (x) V_k with the multi-index packed in mixed radix.
class SparseTensor {
public:
    SparseTensor() = default;
    SparseTensor(std::vector<uint32_t> dims, uint32_t order) : dims_(std::move(dims)), order_(order) {
        uint64_t cap = 1;
        for (uint32_t d : dims_) {
            if (d == 0) throw std::invalid_argument("SparseTensor: zero leg dimension");
            if (cap > UINT64_MAX / d) throw std::overflow_error("SparseTensor: index space too large");
            cap *= d;
        }
    }

    size_t legs() const { return dims_.size(); }
    const std::vector<uint32_t>& dims() const { return dims_; }
    uint32_t order() const { return order_; }
    const std::map<uint64_t, CycloNum>& entries() const { return e_; }
    size_t nnz() const { return e_.size(); }
    bool is_zero() const { return e_.empty(); }

    uint64_t pack(const std::vector<uint32_t>& idx) const {
        if (idx.size() != dims_.size()) throw std::invalid_argument("SparseTensor: wrong number of indices");
        uint64_t k = 0;
        for (size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] >= dims_[i]) throw std::out_of_range("SparseTensor: index out of range");
            k = k * dims_[i] + idx[i];
        }
        return k;
    }
    std::vector<uint32_t> unpack(uint64_t k) const {
        std::vector<uint32_t> idx(dims_.size());
        for (size_t i = dims_.size(); i-- > 0;) {
            idx[i] = static_cast<uint32_t>(k % dims_[i]);
            k /= dims_[i];
        }
        return idx;
    }

    void add(uint64_t key, const CycloNum& c) {
        if (c.is_zero()) return;
        auto it = e_.find(key);
        if (it == e_.end()) e_.emplace(key, c);
        else {
            it->second += c;
            if (it->second.is_zero()) e_.erase(it);
        }
    }
    void add(const std::vector<uint32_t>& idx, const CycloNum& c) { add(pack(idx), c); }

    CycloNum at(const std::vector<uint32_t>& idx) const {
        auto it = e_.find(pack(idx));
        return it == e_.end() ? CycloNum::zero(order_) : it->second;
    }

    SparseTensor& operator+=(const SparseTensor& o) {
        same_shape(o);
        for (auto& [k, c] : o.e_) add(k, c);
        return *this;
    }
    SparseTensor& operator-=(const SparseTensor& o) {
        same_shape(o);
        for (auto& [k, c] : o.e_) add(k, -c);
        return *this;
    }
    friend SparseTensor operator+(SparseTensor a, const SparseTensor& b) { return a += b; }
    friend SparseTensor operator-(SparseTensor a, const SparseTensor& b) { return a -= b; }
    friend SparseTensor operator*(const CycloNum& s, const SparseTensor& a) {
        SparseTensor r(a.dims_, a.order_);
        if (s.is_zero()) return r;
        for (auto& [k, c] : a.e_) r.e_.emplace(k, s * c);
        return r;
    }
    friend bool operator==(const SparseTensor& a, const SparseTensor& b) {
        return a.dims_ == b.dims_ && a.e_ == b.e_;
    }
    friend bool operator!=(const SparseTensor& a, const SparseTensor& b) { return !(a == b); }

    // the tensor 1 (x) ... (x) 1 given the unit of each leg
    static SparseTensor basis(const std::vector<uint32_t>& dims, uint32_t order, const std::vector<uint32_t>& idx,
                              const CycloNum& c) {
        SparseTensor t(dims, order);
        t.add(idx, c);
        return t;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["legs"] = dims_.size();
        j["dims"] = dims_;
        nlohmann::json arr = nlohmann::json::array();
        for (auto& [k, c] : e_) arr.push_back({{"idx", unpack(k)}, {"coeff", c.str()}});
        j["entries"] = arr;
        return j;
    }
    static SparseTensor from_json(const nlohmann::json& j) {
        std::vector<uint32_t> dims = j.at("dims").get<std::vector<uint32_t>>();
        if (j.at("legs").get<size_t>() != dims.size()) throw std::invalid_argument("tensor json: legs/dims mismatch");
        uint32_t order = 1;
        std::vector<std::pair<std::vector<uint32_t>, CycloNum>> items;
        for (auto& e : j.at("entries")) {
            CycloNum c = CycloNum::parse(e.at("coeff").get<std::string>());
            order = c.order();
            items.emplace_back(e.at("idx").get<std::vector<uint32_t>>(), c);
        }
        SparseTensor t(dims, order);
        for (auto& [idx, c] : items) t.add(idx, c);
        return t;
    }

private:
    std::vector<uint32_t> dims_;
    uint32_t order_ = 1;
    std::map<uint64_t, CycloNum> e_;

    void same_shape(const SparseTensor& o) const {
        if (dims_ != o.dims_) throw std::invalid_argument("SparseTensor: shape mismatch");
    }
};

// Linear map from a dim-dimensional space into a tensor space.
// images[i] is the image of the i-th basis vector.
struct LinearMap {
    uint32_t src = 0;
    std::vector<uint32_t> out_dims;
    std::vector<SparseTensor> images;

    LinearMap() = default;
    LinearMap(uint32_t src_, std::vector<uint32_t> out, uint32_t order) : src(src_), out_dims(std::move(out)) {
        images.assign(src, SparseTensor(out_dims, order));
    }
    SparseTensor apply(const SparseTensor& v) const {
        if (v.legs() != 1 || v.dims()[0] != src) throw std::invalid_argument("LinearMap::apply: dimension mismatch");
        SparseTensor r(out_dims, v.order());
        for (auto& [k, c] : v.entries()) r += c * images[k];
        return r;
    }
};

inline SparseTensor tensor_product(const SparseTensor& a, const SparseTensor& b) {
    std::vector<uint32_t> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    SparseTensor r(dims, a.order());
    uint64_t bspan = 1;
    for (uint32_t d : b.dims()) bspan *= d;
    for (auto& [ka, ca] : a.entries())
        for (auto& [kb, cb] : b.entries()) r.add(ka * bspan + kb, ca * cb);
    return r;
}

inline SparseTensor legwise_multiply(const SparseTensor& a, const SparseTensor& b,
                                     const std::vector<const MultTable*>& mult) {
    if (a.dims() != b.dims()) throw std::invalid_argument("legwise_multiply: dimension mismatch");
    if (mult.size() != a.legs()) throw std::invalid_argument("legwise_multiply: one table per leg required");
    for (size_t l = 0; l < mult.size(); ++l)
        if (mult[l]->dim() != a.dims()[l]) throw std::invalid_argument("legwise_multiply: table/leg mismatch");
    const size_t k = a.legs();
    SparseTensor r(a.dims(), a.order());
    if (a.is_zero() || b.is_zero()) return r;
    std::vector<std::vector<uint32_t>> ib;
    std::vector<const CycloNum*> cb;
    ib.reserve(b.nnz());
    for (auto& [kb, c] : b.entries()) {
        ib.push_back(b.unpack(kb));
        cb.push_back(&c);
    }
    std::vector<const Terms*> parts(k);
    std::vector<size_t> pos(k);
    std::vector<uint64_t> key(k + 1);
    std::vector<CycloNum> coef(k + 1);
    for (auto& [ka, ca] : a.entries()) {
        std::vector<uint32_t> ia = a.unpack(ka);
        for (size_t j = 0; j < ib.size(); ++j) {
            bool zero = false;
            for (size_t l = 0; l < k && !zero; ++l) {
                parts[l] = &(*mult[l])(ia[l], ib[j][l]);
                zero = parts[l]->empty();
            }
            if (zero) continue;
            if (k == 0) {
                r.add(0, ca * *cb[j]);
                continue;
            }
            // odometer over the term lists of each leg
            coef[0] = ca * *cb[j];
            key[0] = 0;
            size_t l = 0;
            pos[0] = 0;
            while (true) {
                if (l == k) {
                    r.add(key[k], coef[k]);
                    --l;
                    ++pos[l];
                    continue;
                }
                if (pos[l] == parts[l]->size()) {
                    if (l == 0) break;
                    --l;
                    ++pos[l];
                    continue;
                }
                auto& [idx, v] = (*parts[l])[pos[l]];
                key[l + 1] = key[l] * a.dims()[l] + idx;
                coef[l + 1] = v.is_one() ? coef[l] : coef[l] * v;
                ++l;
                if (l < k) pos[l] = 0;
            }
        }
    }
    return r;
}

inline SparseTensor apply_map_to_leg(const SparseTensor& t, size_t leg, const LinearMap& f) {
    if (leg >= t.legs() || f.src != t.dims()[leg]) throw std::invalid_argument("apply_map_to_leg: dimension mismatch");
    std::vector<uint32_t> dims(t.dims().begin(), t.dims().begin() + leg);
    dims.insert(dims.end(), f.out_dims.begin(), f.out_dims.end());
    dims.insert(dims.end(), t.dims().begin() + leg + 1, t.dims().end());
    SparseTensor r(dims, t.order());
    uint64_t outspan = 1, tail = 1;
    for (uint32_t d : f.out_dims) outspan *= d;
    for (size_t l = leg + 1; l < t.legs(); ++l) tail *= t.dims()[l];
    for (auto& [k, c] : t.entries()) {
        uint64_t lo = k % tail;
        uint64_t rest = k / tail;
        uint32_t mid = static_cast<uint32_t>(rest % t.dims()[leg]);
        uint64_t hi = rest / t.dims()[leg];
        for (auto& [km, cm] : f.images[mid].entries()) r.add((hi * outspan + km) * tail + lo, c * cm);
    }
    return r;
}

// result leg j is source leg perm[j]
inline SparseTensor permute_legs(const SparseTensor& t, const std::vector<size_t>& perm) {
    if (perm.size() != t.legs()) throw std::invalid_argument("permute_legs: wrong permutation length");
    std::vector<bool> seen(perm.size(), false);
    for (size_t p : perm) {
        if (p >= perm.size() || seen[p]) throw std::invalid_argument("permute_legs: not a permutation");
        seen[p] = true;
    }
    std::vector<uint32_t> dims(perm.size());
    for (size_t j = 0; j < perm.size(); ++j) dims[j] = t.dims()[perm[j]];
    SparseTensor r(dims, t.order());
    std::vector<uint32_t> idx(perm.size());
    for (auto& [k, c] : t.entries()) {
        std::vector<uint32_t> src = t.unpack(k);
        for (size_t j = 0; j < perm.size(); ++j) idx[j] = src[perm[j]];
        r.add(idx, c);
    }
    return r;
}

inline SparseTensor unit_tensor(const std::vector<uint32_t>& dims, uint32_t order, const std::vector<SparseTensor>& units) {
    if (units.size() != dims.size()) throw std::invalid_argument("unit_tensor: one unit per leg required");
    SparseTensor r(std::vector<uint32_t>{}, order);
    r.add(0, CycloNum::one(order));
    for (auto& u : units) r = tensor_product(r, u);
    if (r.dims() != dims) throw std::invalid_argument("unit_tensor: unit dimensions disagree");
    return r;
}

struct InverseResult {
    SparseTensor inverse;
    std::string strategy;
};

// Inverse of t in the tensor-product algebra. Strategy 1: t supported on tuples
// of orthogonal idempotent basis vectors whose sum is the unit; strategy 2:
// t = 1 + N with N nilpotent; strategy 3: dense linear solve when small.
// Every result is checked on both sides.
inline InverseResult invert_element(const SparseTensor& t, const std::vector<const MultTable*>& mult,
                                    const SparseTensor& unit) {
    auto verified = [&](const SparseTensor& x) {
        return legwise_multiply(x, t, mult) == unit && legwise_multiply(t, x, mult) == unit;
    };
    const size_t k = t.legs();
    // strategy 1
    {
        bool ok = true;
        SparseTensor support(t.dims(), t.order());
        for (auto& [key, c] : t.entries()) {
            std::vector<uint32_t> idx = t.unpack(key);
            for (size_t l = 0; l < k && ok; ++l) {
                const Terms& sq = (*mult[l])(idx[l], idx[l]);
                ok = sq.size() == 1 && sq[0].first == idx[l] && sq[0].second.is_one();
            }
            if (!ok) break;
            support.add(key, CycloNum::one(t.order()));
        }
        if (ok && support == unit) {
            SparseTensor x(t.dims(), t.order());
            for (auto& [key, c] : t.entries()) x.add(key, c.inverse());
            if (verified(x)) return {x, "idempotent"};
        }
    }
    // strategy 2
    {
        SparseTensor nil = t - unit;
        SparseTensor x = unit, term = unit;
        bool ok = false;
        for (int step = 0; step < 4096; ++step) {
            term = legwise_multiply(term, nil, mult);
            if (term.is_zero()) {
                ok = true;
                break;
            }
            if (step % 2 == 0) x -= term;
            else x += term;
        }
        if (ok && verified(x)) return {x, "neumann"};
    }
    // strategy 3
    uint64_t space = 1;
    for (uint32_t d : t.dims()) space *= d;
    if (space <= 1024) {
        // columns: e_j * t for basis tensors e_j; solve for x with x*t = unit
        size_t n = static_cast<size_t>(space);
        std::vector<std::vector<CycloNum>> a(n, std::vector<CycloNum>(n + 1, CycloNum::zero(t.order())));
        for (uint64_t j = 0; j < space; ++j) {
            SparseTensor e(t.dims(), t.order());
            e.add(j, CycloNum::one(t.order()));
            SparseTensor col = legwise_multiply(e, t, mult);
            for (auto& [key, c] : col.entries()) a[key][j] = c;
        }
        for (auto& [key, c] : unit.entries()) a[key][n] = c;
        size_t r = 0;
        std::vector<size_t> piv;
        for (size_t c = 0; c < n && r < n; ++c) {
            size_t p = r;
            while (p < n && a[p][c].is_zero()) ++p;
            if (p == n) continue;
            std::swap(a[p], a[r]);
            CycloNum inv = a[r][c].inverse();
            for (size_t j = c; j <= n; ++j) a[r][j] = a[r][j] * inv;
            for (size_t i = 0; i < n; ++i) {
                if (i == r || a[i][c].is_zero()) continue;
                CycloNum f = a[i][c];
                for (size_t j = c; j <= n; ++j)
                    if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
            }
            piv.push_back(c);
            ++r;
        }
        if (piv.size() == n) {
            SparseTensor x(t.dims(), t.order());
            for (size_t i = 0; i < n; ++i) x.add(piv[i], a[i][n]);
            if (verified(x)) return {x, "linear"};
        }
    }
    SparseTensor residual = legwise_multiply(t, t, mult) - unit;
    throw std::domain_error("invert_element: element not invertible by any strategy (residual of t*t-1 has " +
                            std::to_string(residual.nnz()) + " terms)");
}

}  // namespace qh
