#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qh/tensor.hpp"

namespace qh {

// A multiplication table rescaled to integers: every structure constant times a
// common denominator L, stored as a dense vector over the power basis of Q(zeta).
// Products of two entries are accumulated unreduced in 128-bit integers and
// reduced mod Phi only when compared, so the arithmetic stays exact.
class IntTable {
public:
    static constexpr int64_t kBound = int64_t(1) << 40;

    static std::optional<IntTable> from(const MultTable& m) {
        IntTable T;
        const uint32_t d = m.dim();
        const CycloField& F = cyclo_field(m.order());
        T.phi_ = F.phi;
        T.dim_ = d;
        int64_t L = 1;
        for (uint32_t a = 0; a < d; ++a)
            for (uint32_t b = 0; b < d; ++b)
                for (auto& [k, c] : m(a, b))
                    for (auto& [e, r] : c.terms()) {
                        if (!r.is_small()) return std::nullopt;
                        L = std::lcm(L, r.small_den());
                        if (L > kBound) return std::nullopt;
                    }
        T.start_.assign(size_t(d) * d + 1, 0);
        for (uint32_t a = 0; a < d; ++a)
            for (uint32_t b = 0; b < d; ++b) {
                for (auto& [k, c] : m(a, b)) {
                    T.target_.push_back(k);
                    T.coef_.resize(T.coef_.size() + T.phi_, 0);
                    int64_t* v = &T.coef_[T.coef_.size() - T.phi_];
                    for (auto& [e, r] : c.terms()) {
                        __int128 x = static_cast<__int128>(r.small_num()) * (L / r.small_den());
                        if (x >= kBound || x <= -kBound) return std::nullopt;
                        v[e] = static_cast<int64_t>(x);
                    }
                }
                T.start_[size_t(a) * d + b + 1] = T.target_.size();
            }
        T.reduce_.resize(2 * T.phi_);
        for (uint32_t k = 0; k + 1 < 2 * T.phi_; ++k)
            for (auto& [j, c] : F.pow[k]) T.reduce_[k].emplace_back(j, c);
        return T;
    }

    uint32_t dim() const { return dim_; }
    uint32_t phi() const { return phi_; }
    size_t begin(uint32_t a, uint32_t b) const { return start_[size_t(a) * dim_ + b]; }
    size_t end(uint32_t a, uint32_t b) const { return start_[size_t(a) * dim_ + b + 1]; }
    bool empty(uint32_t a, uint32_t b) const { return begin(a, b) == end(a, b); }
    uint32_t target(size_t i) const { return target_[i]; }
    const int64_t* coef(size_t i) const { return &coef_[i * phi_]; }

    // acc[0 .. 2phi-2] += sign * u * v (polynomial product, unreduced)
    void mul_acc(__int128* acc, const int64_t* u, const int64_t* v, int sign) const {
        for (uint32_t i = 0; i < phi_; ++i) {
            if (!u[i]) continue;
            __int128 ui = sign * static_cast<__int128>(u[i]);
            for (uint32_t j = 0; j < phi_; ++j) acc[i + j] += ui * v[j];
        }
    }
    bool reduces_to_zero(const __int128* acc) const {
        std::vector<__int128> r(phi_, 0);
        for (uint32_t k = 0; k + 1 < 2 * phi_; ++k) {
            if (!acc[k]) continue;
            for (auto& [j, c] : reduce_[k]) r[j] += acc[k] * c;
        }
        for (auto x : r)
            if (x) return false;
        return true;
    }

private:
    uint32_t dim_ = 0, phi_ = 1;
    std::vector<size_t> start_;
    std::vector<uint32_t> target_;
    std::vector<int64_t> coef_;
    std::vector<std::vector<std::pair<uint32_t, int64_t>>> reduce_;
};

// Exhaustive (ab)c = a(bc) over the integer table, zero skipping as in the generic checker.
inline std::string check_associative_int(const IntTable& T) {
    const uint32_t d = T.dim(), w = 2 * T.phi() - 1;
    std::vector<std::vector<uint32_t>> nzr(d);
    for (uint32_t b = 0; b < d; ++b)
        for (uint32_t c = 0; c < d; ++c)
            if (!T.empty(b, c)) nzr[b].push_back(c);
    std::vector<__int128> acc(size_t(d) * w, 0);
    std::vector<uint8_t> mark(d, 0), cmark(d, 0);
    std::vector<uint32_t> touched, cand;
    for (uint32_t a = 0; a < d; ++a)
        for (uint32_t b = 0; b < d; ++b) {
            cand.clear();
            for (uint32_t c : nzr[b])
                if (!cmark[c]) cmark[c] = 1, cand.push_back(c);
            for (size_t i = T.begin(a, b); i < T.end(a, b); ++i)
                for (uint32_t c : nzr[T.target(i)])
                    if (!cmark[c]) cmark[c] = 1, cand.push_back(c);
            for (uint32_t c : cand) cmark[c] = 0;
            for (uint32_t c : cand) {
                touched.clear();
                for (size_t i = T.begin(a, b); i < T.end(a, b); ++i)
                    for (size_t j = T.begin(T.target(i), c); j < T.end(T.target(i), c); ++j) {
                        uint32_t t = T.target(j);
                        if (!mark[t]) mark[t] = 1, touched.push_back(t);
                        T.mul_acc(&acc[size_t(t) * w], T.coef(i), T.coef(j), 1);
                    }
                for (size_t i = T.begin(b, c); i < T.end(b, c); ++i)
                    for (size_t j = T.begin(a, T.target(i)); j < T.end(a, T.target(i)); ++j) {
                        uint32_t t = T.target(j);
                        if (!mark[t]) mark[t] = 1, touched.push_back(t);
                        T.mul_acc(&acc[size_t(t) * w], T.coef(i), T.coef(j), -1);
                    }
                std::string wit;
                for (uint32_t t : touched) {
                    __int128* p = &acc[size_t(t) * w];
                    if (wit.empty() && !T.reduces_to_zero(p))
                        wit = "triple (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
                              ") differs at basis " + std::to_string(t);
                    std::fill(p, p + w, 0);
                    mark[t] = 0;
                }
                if (!wit.empty()) return wit;
            }
        }
    return "";
}

}  // namespace qh
