#pragma once

// Square matrices with entries in the free algebra. Entry-wise products use
// concatenation, so (AB)_{ij} = Σ_k A_{ik} B_{kj} in that order.

#include "lie.hpp"
#include "linalg.hpp"

namespace lieworld {

class SeriesMatrix {
public:
    SeriesMatrix() = default;
    SeriesMatrix(AlphabetPtr a, int max_weight, std::size_t dim)
        : alpha_(std::move(a)), n_(max_weight), dim_(dim), e_(dim * dim, NCSeries(alpha_, max_weight))
    {
    }

    static SeriesMatrix identity(AlphabetPtr a, int n, std::size_t dim)
    {
        SeriesMatrix m(a, n, dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = NCSeries::one(a, n);
        return m;
    }
    static SeriesMatrix from_rational(AlphabetPtr a, int n, const QMatrix &q)
    {
        SeriesMatrix m(a, n, q.size());
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j < q.size(); ++j) m(i, j) = NCSeries::constant(a, n, q[i][j]);
        return m;
    }

    std::size_t dim() const { return dim_; }
    int max_weight() const { return n_; }
    const AlphabetPtr &alphabet() const { return alpha_; }
    NCSeries &operator()(std::size_t i, std::size_t j) { return e_.at(i * dim_ + j); }
    const NCSeries &operator()(std::size_t i, std::size_t j) const { return e_.at(i * dim_ + j); }

    SeriesMatrix &operator+=(const SeriesMatrix &o)
    {
        check(o);
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
        return *this;
    }
    SeriesMatrix &operator-=(const SeriesMatrix &o)
    {
        check(o);
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
        return *this;
    }
    SeriesMatrix &operator*=(const Rational &c)
    {
        for (auto &x : e_) x *= c;
        return *this;
    }
    friend SeriesMatrix operator+(SeriesMatrix a, const SeriesMatrix &b) { return a += b; }
    friend SeriesMatrix operator-(SeriesMatrix a, const SeriesMatrix &b) { return a -= b; }
    friend SeriesMatrix operator-(SeriesMatrix a) { return a *= Rational(-1); }
    friend SeriesMatrix operator*(SeriesMatrix a, const Rational &c) { return a *= c; }
    friend SeriesMatrix operator*(const Rational &c, SeriesMatrix a) { return a *= c; }

    friend SeriesMatrix operator*(const SeriesMatrix &a, const SeriesMatrix &b)
    {
        a.check(b);
        SeriesMatrix r(a.alpha_, a.n_, a.dim_);
        for (std::size_t i = 0; i < a.dim_; ++i)
            for (std::size_t k = 0; k < a.dim_; ++k) {
                const NCSeries &aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < a.dim_; ++j) {
                    if (!b(k, j).is_zero()) r(i, j) += aik * b(k, j);
                }
            }
        return r;
    }

    friend bool operator==(const SeriesMatrix &a, const SeriesMatrix &b)
    {
        return a.dim_ == b.dim_ && a.e_ == b.e_;
    }
    friend bool operator!=(const SeriesMatrix &a, const SeriesMatrix &b) { return !(a == b); }

    bool is_zero() const
    {
        for (const auto &x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    // Transpose combined with the antipode on entries.
    SeriesMatrix adjoint() const
    {
        SeriesMatrix r(alpha_, n_, dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) r(j, i) = antipode((*this)(i, j));
        return r;
    }
    // a_{ij} + *(a_{ji}) = 0.
    bool is_skew() const { return (*this + adjoint()).is_zero(); }

    QMatrix constant_part() const
    {
        QMatrix q = q_zero(dim_, dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) q[i][j] = (*this)(i, j).constant_term();
        return q;
    }

    SeriesMatrix truncated(int n) const
    {
        SeriesMatrix r(alpha_, std::min(n, n_), dim_);
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k].truncated(n);
        return r;
    }
    SeriesMatrix with_max_weight(int n) const
    {
        SeriesMatrix r(alpha_, n, dim_);
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k].with_max_weight(n);
        return r;
    }
    SeriesMatrix homogeneous(int w) const
    {
        SeriesMatrix r(alpha_, n_, dim_);
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k].homogeneous(w);
        return r;
    }

    template <class F>
    SeriesMatrix map(F f) const
    {
        SeriesMatrix r(alpha_, n_, dim_);
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = f(e_[k]);
        return r;
    }

private:
    void check(const SeriesMatrix &o) const
    {
        if (dim_ != o.dim_) throw AlgebraError("matrix size mismatch");
        if (n_ != o.n_) throw AlgebraError("truncation order mismatch");
    }

    AlphabetPtr alpha_;
    int n_ = 0;
    std::size_t dim_ = 0;
    std::vector<NCSeries> e_;
};

// Inverse by splitting A = A₀ + A₊: invert A₀ over ℚ, then expand
// (1 + A₀⁻¹A₊)⁻¹ as a Neumann series; A₊ raises weight so this terminates.
inline SeriesMatrix matrix_inverse(const SeriesMatrix &a)
{
    auto inv0 = q_inverse(a.constant_part());
    if (!inv0) throw AlgebraError("singular constant part");
    const auto al = a.alphabet();
    const int n = a.max_weight();
    SeriesMatrix a0inv = SeriesMatrix::from_rational(al, n, *inv0);
    SeriesMatrix plus = a - SeriesMatrix::from_rational(al, n, a.constant_part());
    SeriesMatrix x = a0inv * plus;
    SeriesMatrix sum = SeriesMatrix::identity(al, n, a.dim());
    SeriesMatrix term = sum;
    for (int k = 1; k <= n; ++k) {
        term = -(term * x);
        if (term.is_zero()) break;
        sum += term;
    }
    return sum * a0inv;
}

} // namespace lieworld
