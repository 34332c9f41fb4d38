#pragma once

// Finite pieces of F(L): pairings of Lyndon basis elements, reduced to a
// basis per weight, and kernels of linear maps between such pieces.

#include <functional>

#include "geometry.hpp"
#include "linalg.hpp"

namespace lieworld {

using CyclicVector = SparseVector<Word, WordLess>;
using CyclicEchelon = ColumnEchelon<Word, WordLess>;

inline CyclicVector cyclic_vector(const CyclicSeries &f) { return CyclicVector(f.terms().begin(), f.terms().end()); }

// Basis of the span of ⟨P_u, P_v⟩ over Lyndon elements in the given letters
// with |u| + |v| = weight and exactly `odd` letters of kind `odd_kind`.
inline std::vector<CyclicSeries> function_basis(const LieSpace &s, const std::vector<Letter> &letters, int weight,
                                                LetterKind odd_kind = LetterKind::dx, int odd = 0)
{
    const Alphabet &a = *s.alphabet;
    struct Elem {
        NCSeries lie;
        int weight, odd;
    };
    std::vector<Elem> elems;
    for (int k = 1; k < weight; ++k)
        for (auto &b : lie_basis(s.alphabet, s.N, letters, k)) {
            int c = CyclicSeries::count_kind(a, b.terms().begin()->first, odd_kind);
            if (c <= odd) elems.push_back({std::move(b), k, c});
        }
    CyclicEchelon e;
    std::vector<CyclicSeries> out;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = i; j < elems.size(); ++j) {
            if (elems[i].weight + elems[j].weight != weight || elems[i].odd + elems[j].odd != odd) continue;
            CyclicSeries f = pair(elems[i].lie, elems[j].lie);
            if (f.is_zero()) continue;
            if (e.add_column(cyclic_vector(f))) out.push_back(std::move(f));
        }
    return out;
}

// Forms of the given degree and weight: functions of the (x, dx) Lie space.
inline std::vector<CyclicSeries> form_basis(const LieSpace &s, int degree, int weight)
{
    auto letters = x_letters(*s.alphabet);
    for (int i = 0; i < s.n; ++i) letters.push_back(s.alphabet->dx(i));
    if (degree == 0) return function_basis(s, x_letters(*s.alphabet), weight);
    return function_basis(s, letters, weight, LetterKind::dx, degree);
}

// Polyvectors of the given degree and weight.
inline std::vector<CyclicSeries> polyvector_basis(const LieSpace &s, int degree, int weight)
{
    auto letters = x_letters(*s.alphabet);
    for (int i = 0; i < s.n; ++i) letters.push_back(s.alphabet->p(i));
    if (degree == 0) return function_basis(s, x_letters(*s.alphabet), weight);
    return function_basis(s, letters, weight, LetterKind::p, degree);
}

struct LinearMapReport {
    std::size_t domain_dim = 0;
    std::size_t rank = 0;
    std::vector<CyclicSeries> kernel;
};

inline LinearMapReport linear_map_report(const std::vector<CyclicSeries> &basis,
                                         const std::function<CyclicSeries(const CyclicSeries &)> &f)
{
    LinearMapReport r;
    r.domain_dim = basis.size();
    CyclicEchelon e;
    for (const auto &b : basis) e.add_column(cyclic_vector(f(b)));
    r.rank = e.rank();
    for (const auto &rel : e.nullspace()) {
        CyclicSeries k = basis.empty() ? CyclicSeries() : basis.front() * Rational(0);
        for (std::size_t j = 0; j < rel.size(); ++j)
            if (sgn(rel[j]) != 0) k += basis[j] * rel[j];
        r.kernel.push_back(std::move(k));
    }
    return r;
}

// Rank of a family of cyclic series.
inline std::size_t span_rank(const std::vector<CyclicSeries> &v)
{
    CyclicEchelon e;
    for (const auto &f : v) e.add_column(cyclic_vector(f));
    return e.rank();
}

// Kernel of (−)^Π on forms of the given degree and weight.
inline LinearMapReport sharp_kernel(const CyclicSeries &pi, const LieSpace &s, int degree, int weight)
{
    auto basis = form_basis(s, degree, weight);
    return linear_map_report(basis, [&](const CyclicSeries &w) { return sharp(pi, w); });
}

// Cohomology of Ω^{k−1} → Ω^k → Ω^{k+1} in one weight: dim ker d − rank d.
inline std::size_t de_rham_cohomology(const LieSpace &s, int degree, int weight)
{
    auto here = form_basis(s, degree, weight);
    auto out = linear_map_report(here, [](const CyclicSeries &w) { return de_rham(w); });
    std::size_t incoming = 0;
    if (degree > 0) {
        auto below = form_basis(s, degree - 1, weight);
        incoming = linear_map_report(below, [](const CyclicSeries &w) { return de_rham(w); }).rank;
    }
    return out.kernel.size() - incoming;
}

} // namespace lieworld
