#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qh/rational.hpp"

namespace qh {

inline int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// [a/b] of the text, extended to negative a by flooring.
inline int64_t floor_frac(int64_t a, int64_t b) {
    if (b <= 0) throw std::invalid_argument("floor_frac: non-positive divisor");
    return floor_div(a, b);
}

// i' : the least non-negative residue of i mod n.
inline int64_t remainder(int64_t a, int64_t n) {
    if (n <= 0) throw std::invalid_argument("remainder: non-positive modulus");
    int64_t r = a % n;
    return r < 0 ? r + n : r;
}

inline uint32_t euler_phi(uint32_t n) {
    uint32_t r = n;
    for (uint32_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

// Phi_N by exact division of x^N - 1 by Phi_d for the proper divisors d of N.
// Coefficients are returned lowest degree first.
inline std::vector<int64_t> cyclotomic_polynomial(uint32_t N) {
    if (N == 0) throw std::invalid_argument("cyclotomic_polynomial: N must be positive");
    std::vector<int64_t> num(N + 1, 0);
    num[0] = -1;
    num[N] = 1;
    for (uint32_t d = 1; d < N; ++d) {
        if (N % d) continue;
        std::vector<int64_t> den = cyclotomic_polynomial(d);
        size_t dn = den.size() - 1;
        std::vector<int64_t> quo(num.size() - dn, 0);
        for (size_t k = num.size(); k-- > dn;) {
            int64_t c = num[k];  // divisor is monic
            quo[k - dn] = c;
            if (c == 0) continue;
            for (size_t j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
        }
        for (size_t j = 0; j < dn; ++j)
            if (num[j] != 0) throw std::logic_error("cyclotomic_polynomial: inexact division");
        num = std::move(quo);
    }
    return num;
}

struct CycloField {
    uint32_t order = 1;
    uint32_t phi = 1;
    std::vector<int64_t> poly;
    // reduced form of x^k for 0 <= k < span, as sparse integer vectors
    std::vector<std::vector<std::pair<uint32_t, int64_t>>> pow;

    explicit CycloField(uint32_t N) : order(N) {
        poly = cyclotomic_polynomial(N);
        phi = static_cast<uint32_t>(poly.size() - 1);
        uint32_t span = std::max<uint32_t>(N, 2 * phi);
        std::vector<int64_t> cur(phi, 0);
        cur[0] = 1;
        if (phi == 0) throw std::logic_error("degenerate field");
        for (uint32_t k = 0; k < span; ++k) {
            std::vector<std::pair<uint32_t, int64_t>> sp;
            for (uint32_t j = 0; j < phi; ++j)
                if (cur[j]) sp.emplace_back(j, cur[j]);
            pow.push_back(std::move(sp));
            // multiply cur by x and reduce x^phi = -sum poly[j] x^j
            int64_t top = cur[phi - 1];
            for (uint32_t j = phi - 1; j > 0; --j) cur[j] = cur[j - 1];
            cur[0] = 0;
            if (top)
                for (uint32_t j = 0; j < phi; ++j) cur[j] -= top * poly[j];
        }
    }
};

inline const CycloField& cyclo_field(uint32_t N) {
    static std::mutex mu;
    static std::map<uint32_t, std::unique_ptr<CycloField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(N);
    if (it == cache.end()) it = cache.emplace(N, std::make_unique<CycloField>(N)).first;
    return *it->second;
}

// Element of Q(zeta_N), stored as the nonzero coefficients of its reduced
// representative modulo Phi_N, sorted by exponent.
class CycloNum {
public:
    using Term = std::pair<uint32_t, Rational>;

    CycloNum() : F_(&cyclo_field(1)) {}
    explicit CycloNum(uint32_t order) : F_(&cyclo_field(order)) {}
    CycloNum(uint32_t order, const Rational& c) : F_(&cyclo_field(order)) {
        if (!c.is_zero()) t_.emplace_back(0, c);
    }
    CycloNum(uint32_t order, const std::vector<Rational>& dense) : F_(&cyclo_field(order)) {
        std::vector<Rational> acc(dense);
        reduce_into(acc);
    }

    static CycloNum zero(uint32_t order) { return CycloNum(order); }
    static CycloNum one(uint32_t order) { return CycloNum(order, Rational(1)); }

    // zeta_N^t
    static CycloNum root(uint32_t order, int64_t t) {
        CycloNum r(order);
        const auto& p = r.F_->pow[remainder(t, order)];
        for (auto& [k, c] : p) r.t_.emplace_back(k, Rational(c));
        return r;
    }

    uint32_t order() const { return F_->order; }
    uint32_t degree() const { return F_->phi; }
    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_one() const { return t_.size() == 1 && t_[0].first == 0 && t_[0].second.is_one(); }

    std::vector<Rational> coeffs() const {
        std::vector<Rational> d(F_->phi);
        for (auto& [k, c] : t_) d[k] = c;
        return d;
    }

    CycloNum operator-() const {
        CycloNum r(*this);
        for (auto& tc : r.t_) tc.second = -tc.second;
        return r;
    }

    friend CycloNum operator+(const CycloNum& a, const CycloNum& b) {
        a.check(b);
        CycloNum r(a.F_);
        merge(a, b, false, r);
        return r;
    }
    friend CycloNum operator-(const CycloNum& a, const CycloNum& b) {
        a.check(b);
        CycloNum r(a.F_);
        merge(a, b, true, r);
        return r;
    }
    friend CycloNum operator*(const CycloNum& a, const CycloNum& b) {
        a.check(b);
        CycloNum r(a.F_);
        if (a.t_.empty() || b.t_.empty()) return r;
        if (a.t_.size() == 1 && b.t_.size() == 1) {
            Rational p = a.t_[0].second * b.t_[0].second;
            for (auto& [k, c] : a.F_->pow[a.t_[0].first + b.t_[0].first]) r.t_.emplace_back(k, p * Rational(c));
            return r;
        }
        std::vector<Rational>& acc = scratch(a.F_->phi);
        for (auto& [i, x] : a.t_)
            for (auto& [j, y] : b.t_) {
                Rational p = x * y;
                for (auto& [k, c] : a.F_->pow[i + j]) acc[k].add_mul(p, Rational(c));
            }
        r.collect(acc);
        return r;
    }
    friend CycloNum operator*(const CycloNum& a, const Rational& s) {
        CycloNum r(a.F_);
        if (s.is_zero()) return r;
        r.t_ = a.t_;
        for (auto& tc : r.t_) tc.second *= s;
        return r;
    }
    friend CycloNum operator*(const Rational& s, const CycloNum& a) { return a * s; }
    friend CycloNum operator/(const CycloNum& a, const CycloNum& b) { return a * b.inverse(); }

    CycloNum& operator+=(const CycloNum& b) { return *this = *this + b; }
    CycloNum& operator-=(const CycloNum& b) { return *this = *this - b; }
    CycloNum& operator*=(const CycloNum& b) { return *this = *this * b; }

    // this += a*b without temporaries for the common single-term case
    void add_mul(const CycloNum& a, const CycloNum& b) {
        if (a.t_.empty() || b.t_.empty()) return;
        *this += a * b;
    }

    friend bool operator==(const CycloNum& a, const CycloNum& b) {
        if (a.F_ != b.F_) return a.is_zero() && b.is_zero();
        if (a.t_.size() != b.t_.size()) return false;
        for (size_t i = 0; i < a.t_.size(); ++i)
            if (a.t_[i].first != b.t_[i].first || a.t_[i].second != b.t_[i].second) return false;
        return true;
    }
    friend bool operator!=(const CycloNum& a, const CycloNum& b) { return !(a == b); }

    // If this is c*zeta^k with a single reduced term, report it.
    bool is_monomial() const { return t_.size() == 1; }

    CycloNum inverse() const {
        if (is_zero()) throw std::domain_error("CycloNum: division by zero");
        if (t_.size() == 1) {
            CycloNum r = root(F_->order, -static_cast<int64_t>(t_[0].first));
            return r * (Rational(1) / t_[0].second);
        }
        // solve (a * x) = 1 for x in the power basis
        const uint32_t d = F_->phi;
        std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1));
        for (uint32_t j = 0; j < d; ++j) {
            CycloNum col = *this * root(F_->order, j);
            for (auto& [k, c] : col.t_) m[k][j] = c;
        }
        m[0][d] = Rational(1);
        for (uint32_t c = 0; c < d; ++c) {
            uint32_t p = c;
            while (p < d && m[p][c].is_zero()) ++p;
            if (p == d) throw std::domain_error("CycloNum: singular multiplication matrix");
            std::swap(m[p], m[c]);
            Rational inv = Rational(1) / m[c][c];
            for (uint32_t j = c; j <= d; ++j) m[c][j] *= inv;
            for (uint32_t r = 0; r < d; ++r) {
                if (r == c || m[r][c].is_zero()) continue;
                Rational f = m[r][c];
                for (uint32_t j = c; j <= d; ++j)
                    if (!m[c][j].is_zero()) m[r][j] -= f * m[c][j];
            }
        }
        std::vector<Rational> x(d);
        for (uint32_t i = 0; i < d; ++i) x[i] = m[i][d];
        return CycloNum(F_->order, x);
    }

    CycloNum pow(int64_t e) const {
        if (e < 0) return inverse().pow(-e);
        CycloNum r = one(F_->order), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    // Image under Q(zeta_N) -> Q(zeta_{N'}), zeta_N -> zeta_{N'}^{N'/N}.
    CycloNum embed(uint32_t target) const {
        if (target % F_->order) throw std::invalid_argument("embed: order does not divide target");
        uint32_t f = target / F_->order;
        CycloNum r(target);
        for (auto& [k, c] : t_) r += root(target, static_cast<int64_t>(k) * f) * c;
        return r;
    }

    // Ordering for use as a deterministic key.
    friend bool operator<(const CycloNum& a, const CycloNum& b) {
        if (a.F_->order != b.F_->order) return a.F_->order < b.F_->order;
        return std::lexicographical_compare(a.t_.begin(), a.t_.end(), b.t_.begin(), b.t_.end(),
                                            [](const Term& x, const Term& y) {
                                                if (x.first != y.first) return x.first < y.first;
                                                return x.second < y.second;
                                            });
    }

    std::string str() const {
        std::string s = "cyc(" + std::to_string(F_->order) + "){";
        for (size_t i = 0; i < t_.size(); ++i) {
            if (i) s += ", ";
            s += std::to_string(t_[i].first) + ":" + t_[i].second.str();
        }
        return s + "}";
    }

    static CycloNum parse(const std::string& text) {
        auto bad = [&]() { return std::invalid_argument("bad cyclotomic literal: " + text); };
        if (text.rfind("cyc(", 0) != 0) throw bad();
        size_t close = text.find(')');
        if (close == std::string::npos) throw bad();
        uint32_t N = static_cast<uint32_t>(std::stoul(text.substr(4, close - 4)));
        if (N == 0 || close + 1 >= text.size() || text[close + 1] != '{' || text.back() != '}') throw bad();
        std::string body = text.substr(close + 2, text.size() - close - 3);
        const CycloField& F = cyclo_field(N);
        std::vector<Rational> dense(F.phi);
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item.erase(0, item.find_first_not_of(' '));
            if (item.empty()) continue;
            size_t colon = item.find(':');
            if (colon == std::string::npos) throw bad();
            uint32_t t = static_cast<uint32_t>(std::stoul(item.substr(0, colon)));
            if (t >= F.phi) throw bad();
            dense[t] += Rational::parse(item.substr(colon + 1));
        }
        return CycloNum(N, dense);
    }

private:
    const CycloField* F_;
    std::vector<Term> t_;

    explicit CycloNum(const CycloField* F) : F_(F) {}

    void check(const CycloNum& b) const {
        if (F_ != b.F_) throw std::invalid_argument("CycloNum: order mismatch (embed first)");
    }
    static std::vector<Rational>& scratch(uint32_t d) {
        thread_local std::vector<Rational> buf;
        if (buf.size() < d) buf.resize(d);
        return buf;
    }
    // move nonzero entries of acc[0..phi) into t_ and clear acc
    void collect(std::vector<Rational>& acc) {
        for (uint32_t k = 0; k < F_->phi; ++k) {
            if (!acc[k].is_zero()) {
                t_.emplace_back(k, std::move(acc[k]));
                acc[k] = Rational();
            }
        }
    }
    void reduce_into(std::vector<Rational>& dense) {
        const uint32_t d = F_->phi;
        std::vector<Rational>& acc = scratch(d);
        for (uint32_t k = 0; k < dense.size(); ++k) {
            if (dense[k].is_zero()) continue;
            if (k < d) acc[k] += dense[k];
            else {
                const auto& p = F_->pow[k < F_->pow.size() ? k : k % F_->order];
                for (auto& [j, c] : p) acc[j].add_mul(dense[k], Rational(c));
            }
        }
        collect(acc);
    }
    static void merge(const CycloNum& a, const CycloNum& b, bool sub, CycloNum& r) {
        size_t i = 0, j = 0;
        r.t_.reserve(a.t_.size() + b.t_.size());
        while (i < a.t_.size() || j < b.t_.size()) {
            if (j == b.t_.size() || (i < a.t_.size() && a.t_[i].first < b.t_[j].first)) {
                r.t_.push_back(a.t_[i++]);
            } else if (i == a.t_.size() || b.t_[j].first < a.t_[i].first) {
                r.t_.emplace_back(b.t_[j].first, sub ? -b.t_[j].second : b.t_[j].second);
                ++j;
            } else {
                Rational c = sub ? a.t_[i].second - b.t_[j].second : a.t_[i].second + b.t_[j].second;
                if (!c.is_zero()) r.t_.emplace_back(a.t_[i].first, std::move(c));
                ++i;
                ++j;
            }
        }
    }
};

inline CycloNum root_of_unity(uint32_t N, int64_t t) { return CycloNum::root(N, t); }

// binom(l+m, l)_h by the q-Pascal rule; no division, so valid at roots of unity.
inline CycloNum q_binomial(uint32_t l, uint32_t m, const CycloNum& h) {
    const uint32_t N = h.order();
    const uint32_t top = l + m;
    std::vector<CycloNum> hp(top + 1, CycloNum::one(N));
    for (uint32_t b = 1; b <= top; ++b) hp[b] = hp[b - 1] * h;
    // row[b] = binom(a, b)_h
    std::vector<CycloNum> row(top + 1, CycloNum::zero(N));
    row[0] = CycloNum::one(N);
    for (uint32_t a = 1; a <= top; ++a) {
        for (uint32_t b = std::min(a, l); b >= 1; --b) row[b] = row[b - 1] + hp[b] * row[b];
    }
    return row[l];
}

// The constants attached to a parameter pair (n, s): everything lives in
// Q(zeta_M) with M = 2n^2, q = zeta_M^2 and obar = q^n.
struct Params {
    uint32_t n = 2;
    uint32_t s = 1;

    Params() = default;
    Params(uint32_t n_, uint32_t s_) : n(n_), s(s_) {
        if (n == 0 || s == 0 || n % s != 0)
            throw std::invalid_argument("parameters require s | n (n=" + std::to_string(n) +
                                        ", s=" + std::to_string(s) + ")");
    }
    uint32_t M() const { return 2 * n * n; }
    uint32_t nil() const { return n * n / s; }       // nilpotency index of x
    uint32_t dim() const { return n * nil(); }        // n^3/s
    CycloNum one() const { return CycloNum::one(M()); }
    CycloNum zero() const { return CycloNum::zero(M()); }
    CycloNum zeta(int64_t t) const { return CycloNum::root(M(), t); }
    CycloNum q(int64_t t) const { return zeta(2 * t); }
    CycloNum obar(int64_t t) const { return zeta(2 * static_cast<int64_t>(n) * t); }
    // the chosen value of (-1)^{1/s}
    CycloNum minus_one_root() const { return zeta(M() / (2 * s)); }
};

}  // namespace qh
