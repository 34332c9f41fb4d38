#pragma once

// Exact linear algebra over ℚ: an incremental column echelon with
// provenance (sparse, keyed by words) and small dense helpers.

#include <map>
#include <optional>
#include <vector>

#include "series.hpp"

namespace lieworld {

template <class Key, class Less = std::less<Key>>
using SparseVector = std::map<Key, Rational, Less>;

template <class Key, class Less>
void axpy(SparseVector<Key, Less> &y, const Rational &a, const SparseVector<Key, Less> &x)
{
    if (sgn(a) == 0) return;
    for (const auto &[k, c] : x) {
        auto [it, fresh] = y.try_emplace(k, a * c);
        if (!fresh) {
            it->second += a * c;
            if (sgn(it->second) == 0) y.erase(it);
        }
    }
}

// Columns are added one at a time. Each reduced column keeps the combination
// of original columns it came from, so solutions only ever use the earliest
// independent columns (free variables are set to zero).
template <class Key, class Less = std::less<Key>>
class ColumnEchelon {
public:
    using Vec = SparseVector<Key, Less>;
    using Combo = std::map<std::size_t, Rational>;

    // Returns true when the column was independent of the previous ones.
    bool add_column(const Vec &v)
    {
        std::size_t idx = columns_++;
        Combo prov{{idx, Rational(1)}};
        Vec r = v;
        reduce(r, prov);
        if (r.empty()) {
            relations_.push_back(std::move(prov));
            independent_.push_back(false);
            return false;
        }
        Rational lead = r.begin()->second;
        Rational inv = 1 / lead;
        for (auto &kv : r) kv.second *= inv;
        for (auto &kv : prov) kv.second *= inv;
        Key pivot = r.begin()->first;
        pivots_.emplace(pivot, rows_.size());
        rows_.push_back({std::move(r), std::move(prov)});
        independent_.push_back(true);
        return true;
    }

    std::size_t columns() const { return columns_; }
    std::size_t rank() const { return rows_.size(); }
    bool independent(std::size_t col) const { return independent_.at(col); }

    // Coefficients c with Σ c_j col_j = b, or nullopt.
    std::optional<std::vector<Rational>> solve(const Vec &b) const
    {
        Vec r = b;
        Combo prov;
        reduce(r, prov);
        if (!r.empty()) return std::nullopt;
        std::vector<Rational> x(columns_, Rational(0));
        for (const auto &[j, c] : prov) x[j] = -c;
        return x;
    }

    // Residual of b after reduction (zero iff b is in the column span).
    Vec residual(const Vec &b) const
    {
        Vec r = b;
        Combo prov;
        reduce(r, prov);
        return r;
    }

    // One relation per dependent column: Σ c_j col_j = 0.
    std::vector<std::vector<Rational>> nullspace() const
    {
        std::vector<std::vector<Rational>> out;
        for (const auto &rel : relations_) {
            std::vector<Rational> x(columns_, Rational(0));
            for (const auto &[j, c] : rel) x[j] = c;
            out.push_back(std::move(x));
        }
        return out;
    }

private:
    struct Row {
        Vec vec;
        Combo prov;
    };

    // Walk keys in increasing order; each pivot row only touches larger keys.
    void reduce(Vec &r, Combo &prov) const
    {
        auto it = r.begin();
        while (it != r.end()) {
            auto p = pivots_.find(it->first);
            if (p == pivots_.end()) {
                ++it;
                continue;
            }
            Key k = it->first;
            Rational c = it->second;
            const Row &row = rows_[p->second];
            axpy(r, Rational(-c), row.vec);
            for (const auto &[j, pc] : row.prov) {
                auto [pi, fresh] = prov.try_emplace(j, -c * pc);
                if (!fresh) {
                    pi->second -= c * pc;
                    if (sgn(pi->second) == 0) prov.erase(pi);
                }
            }
            it = r.upper_bound(k);
        }
    }

    std::size_t columns_ = 0;
    std::vector<Row> rows_;
    std::map<Key, std::size_t, Less> pivots_;
    std::vector<Combo> relations_;
    std::vector<bool> independent_;
};

using QMatrix = std::vector<std::vector<Rational>>;

inline QMatrix q_zero(std::size_t r, std::size_t c) { return QMatrix(r, std::vector<Rational>(c, Rational(0))); }

inline QMatrix q_identity(std::size_t n)
{
    QMatrix m = q_zero(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline QMatrix q_mul(const QMatrix &a, const QMatrix &b)
{
    QMatrix r = q_zero(a.size(), b.empty() ? 0 : b[0].size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            if (sgn(a[i][k]) != 0)
                for (std::size_t j = 0; j < b[k].size(); ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

inline QMatrix q_transpose(const QMatrix &a)
{
    QMatrix r = q_zero(a.empty() ? 0 : a[0].size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) r[j][i] = a[i][j];
    return r;
}

// Gauss–Jordan inverse; nullopt when singular.
inline std::optional<QMatrix> q_inverse(QMatrix a)
{
    const std::size_t n = a.size();
    QMatrix inv = q_identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && sgn(a[piv][col]) == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rational s = 1 / a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] *= s;
            inv[col][j] *= s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || sgn(a[i][col]) == 0) continue;
            Rational f = a[i][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

// Null space basis of a dense matrix (as column vectors).
inline std::vector<std::vector<Rational>> q_nullspace(const QMatrix &a)
{
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    ColumnEchelon<std::size_t> e;
    for (std::size_t j = 0; j < cols; ++j) {
        SparseVector<std::size_t> v;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (sgn(a[i][j]) != 0) v.emplace(i, a[i][j]);
        e.add_column(v);
    }
    return e.nullspace();
}

inline std::size_t q_rank(const QMatrix &a)
{
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    return cols - q_nullspace(a).size();
}

} // namespace lieworld
