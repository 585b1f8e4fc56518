#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "qh/cyclo.hpp"

namespace qh {

class CycloMatrix {
public:
    CycloMatrix() = default;
    CycloMatrix(size_t rows, size_t cols, uint32_t order)
        : rows_(rows), cols_(cols), order_(order), a_(rows * cols, CycloNum::zero(order)) {}

    static CycloMatrix identity(size_t n, uint32_t order) {
        CycloMatrix m(n, n, order);
        for (size_t i = 0; i < n; ++i) m(i, i) = CycloNum::one(order);
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    uint32_t order() const { return order_; }
    CycloNum& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const CycloNum& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    friend CycloMatrix operator*(const CycloMatrix& x, const CycloMatrix& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
        CycloMatrix r(x.rows_, y.cols_, x.order_);
        for (size_t i = 0; i < x.rows_; ++i)
            for (size_t k = 0; k < x.cols_; ++k) {
                const CycloNum& a = x(i, k);
                if (a.is_zero()) continue;
                for (size_t j = 0; j < y.cols_; ++j)
                    if (!y(k, j).is_zero()) r(i, j) += a * y(k, j);
            }
        return r;
    }
    friend bool operator==(const CycloMatrix& x, const CycloMatrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    uint32_t order_ = 1;
    std::vector<CycloNum> a_;
};

namespace detail {

// cost of using v as a pivot: prefer units that are single roots of unity
inline size_t pivot_cost(const CycloNum& v) {
    size_t c = v.terms().size() * 4;
    for (auto& t : v.terms()) {
        if (!t.second.is_small()) c += 64;
        else if (!t.second.is_integer()) c += 2;
    }
    return c;
}

// Reduced row echelon form of [A | B] in place; returns pivot columns of A.
inline std::vector<size_t> rref(CycloMatrix& m, size_t acols) {
    std::vector<size_t> piv;
    size_t r = 0;
    for (size_t c = 0; c < acols && r < m.rows(); ++c) {
        size_t best = m.rows(), bc = 0;
        for (size_t i = r; i < m.rows(); ++i) {
            if (m(i, c).is_zero()) continue;
            size_t cost = pivot_cost(m(i, c));
            if (best == m.rows() || cost < bc) {
                best = i;
                bc = cost;
            }
        }
        if (best == m.rows()) continue;
        if (best != r)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m(best, j), m(r, j));
        CycloNum inv = m(r, c).inverse();
        for (size_t j = c; j < m.cols(); ++j)
            if (!m(r, j).is_zero()) m(r, j) = m(r, j) * inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            CycloNum f = m(i, c);
            for (size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

}  // namespace detail

inline size_t rank(const CycloMatrix& a) {
    CycloMatrix m = a;
    return detail::rref(m, m.cols()).size();
}

// Returns a solution of A x = rhs, or nullopt when the system is inconsistent.
inline std::optional<std::vector<CycloNum>> solve_linear(const CycloMatrix& a, const std::vector<CycloNum>& rhs) {
    if (rhs.size() != a.rows()) throw std::invalid_argument("solve_linear: rhs size mismatch");
    CycloMatrix m(a.rows(), a.cols() + 1, a.order());
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        m(i, a.cols()) = rhs[i];
    }
    auto piv = detail::rref(m, a.cols());
    for (size_t i = piv.size(); i < m.rows(); ++i)
        if (!m(i, a.cols()).is_zero()) return std::nullopt;
    std::vector<CycloNum> x(a.cols(), CycloNum::zero(a.order()));
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = m(i, a.cols());
    return x;
}

inline CycloMatrix invert(const CycloMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("invert: matrix not square");
    const size_t n = a.rows();
    CycloMatrix m(n, 2 * n, a.order());
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
        m(i, n + i) = CycloNum::one(a.order());
    }
    auto piv = detail::rref(m, n);
    if (piv.size() < n) throw std::domain_error("invert: singular matrix (rank " + std::to_string(piv.size()) + ")");
    CycloMatrix r(n, n, a.order());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) r(i, j) = m(i, n + j);
    return r;
}

using SparseRow = std::map<uint32_t, CycloNum>;

// Rank of a sparse matrix given by rows. Markowitz-style: eliminate the
// column with the fewest nonzeros using its shortest row.
inline size_t sparse_rank(std::vector<SparseRow> rows) {
    std::map<uint32_t, std::set<uint32_t>> col_rows;
    for (uint32_t i = 0; i < rows.size(); ++i)
        for (auto& [c, v] : rows[i]) col_rows[c].insert(i);
    std::vector<bool> used(rows.size(), false);
    size_t rk = 0;
    while (!col_rows.empty()) {
        auto best = col_rows.end();
        for (auto it = col_rows.begin(); it != col_rows.end(); ++it) {
            if (it->second.empty()) continue;
            if (best == col_rows.end() || it->second.size() < best->second.size()) best = it;
            if (best->second.size() == 1) break;
        }
        if (best == col_rows.end()) break;
        uint32_t c = best->first;
        uint32_t pr = *best->second.begin();
        for (uint32_t i : best->second)
            if (rows[i].size() < rows[pr].size()) pr = i;
        used[pr] = true;
        ++rk;
        SparseRow prow = std::move(rows[pr]);
        rows[pr].clear();
        for (auto& [cc, v] : prow) col_rows[cc].erase(pr);
        CycloNum inv = prow.at(c).inverse();
        std::vector<uint32_t> targets(col_rows[c].begin(), col_rows[c].end());
        for (uint32_t i : targets) {
            CycloNum f = rows[i].at(c) * inv;
            for (auto& [cc, v] : prow) {
                auto it = rows[i].find(cc);
                if (it == rows[i].end()) {
                    rows[i].emplace(cc, -(f * v));
                    col_rows[cc].insert(i);
                } else {
                    it->second -= f * v;
                    if (it->second.is_zero()) {
                        rows[i].erase(it);
                        col_rows[cc].erase(i);
                    }
                }
            }
        }
        col_rows.erase(c);
        for (auto it = col_rows.begin(); it != col_rows.end();) {
            if (it->second.empty()) it = col_rows.erase(it);
            else ++it;
        }
    }
    return rk;
}

// Inverse of a square sparse matrix given by its columns, by Gauss-Jordan
// elimination with Markowitz pivoting. Returns the columns of the inverse, or
// nullopt when singular.
inline std::optional<std::vector<SparseRow>> sparse_inverse(const std::vector<SparseRow>& cols, uint32_t order) {
    const uint32_t n = static_cast<uint32_t>(cols.size());
    std::vector<SparseRow> rows(n), aug(n);
    std::map<uint32_t, std::set<uint32_t>> col_rows;
    for (uint32_t j = 0; j < n; ++j)
        for (auto& [i, v] : cols[j]) {
            if (i >= n) throw std::invalid_argument("sparse_inverse: matrix not square");
            rows[i][j] = v;
            col_rows[j].insert(i);
        }
    for (uint32_t i = 0; i < n; ++i) aug[i][i] = CycloNum::one(order);
    std::vector<bool> pivoted(n, false);
    std::vector<int64_t> pivot_of_col(n, -1);
    for (uint32_t step = 0; step < n; ++step) {
        // column with the fewest unpivoted rows
        uint32_t bc = n, bcount = 0, pr = n;
        for (auto& [c, rs] : col_rows) {
            if (pivot_of_col[c] >= 0) continue;
            uint32_t cnt = 0, shortest = n;
            for (uint32_t r : rs)
                if (!pivoted[r]) {
                    ++cnt;
                    if (shortest == n || rows[r].size() < rows[shortest].size()) shortest = r;
                }
            if (cnt == 0) continue;
            if (bc == n || cnt < bcount) {
                bc = c;
                bcount = cnt;
                pr = shortest;
                if (cnt == 1) break;
            }
        }
        if (bc == n) return std::nullopt;
        pivoted[pr] = true;
        pivot_of_col[bc] = pr;
        CycloNum inv = rows[pr].at(bc).inverse();
        for (auto& [c, v] : rows[pr]) v = v * inv;
        for (auto& [c, v] : aug[pr]) v = v * inv;
        std::vector<uint32_t> targets;
        for (uint32_t r : col_rows[bc])
            if (r != pr) targets.push_back(r);
        for (uint32_t r : targets) {
            CycloNum f = rows[r].at(bc);
            for (auto& [c, v] : rows[pr]) {
                auto it = rows[r].find(c);
                if (it == rows[r].end()) {
                    rows[r].emplace(c, -(f * v));
                    col_rows[c].insert(r);
                } else {
                    it->second -= f * v;
                    if (it->second.is_zero()) {
                        rows[r].erase(it);
                        col_rows[c].erase(r);
                    }
                }
            }
            for (auto& [c, v] : aug[pr]) {
                auto it = aug[r].find(c);
                if (it == aug[r].end()) aug[r].emplace(c, -(f * v));
                else {
                    it->second -= f * v;
                    if (it->second.is_zero()) aug[r].erase(it);
                }
            }
        }
    }
    // row pr now reads x_{bc} = aug[pr]; column e of the inverse collects aug[pr][e]
    std::vector<SparseRow> out(n);
    for (uint32_t c = 0; c < n; ++c) {
        uint32_t pr = static_cast<uint32_t>(pivot_of_col[c]);
        for (auto& [e, v] : aug[pr]) out[e][c] = v;
    }
    return out;
}

}  // namespace qh
