#pragma once

// Automorphisms of the coordinate Lie algebra, given by the images of
// x_1..x_n, and their action on functions, forms and bivectors.

#include "geometry.hpp"

namespace lieworld {

struct Automorphism {
    std::vector<NCSeries> images;
};

inline Automorphism identity_automorphism(const LieSpace &s)
{
    Automorphism a;
    for (int i = 0; i < s.n; ++i) a.images.push_back(s.x(i));
    return a;
}

// x_i ↦ Σ_a A_ia x_a.
inline Automorphism linear_automorphism(const QMatrix &A, const LieSpace &s)
{
    Automorphism a;
    for (int i = 0; i < s.n; ++i) {
        NCSeries v = s.zero();
        for (int j = 0; j < s.n; ++j) v += s.x(j) * A[i][j];
        a.images.push_back(std::move(v));
    }
    return a;
}

// x_i ↦ φ_i, dx_i ↦ dφ_i; ∂ and t are fixed.
inline LetterMap automorphism_map(const Automorphism &phi, const LieSpace &s)
{
    if (static_cast<int>(phi.images.size()) != s.n) throw AlgebraError("automorphism needs one image per coordinate");
    LetterMap m(s.alphabet, s.N);
    for (int i = 0; i < s.n; ++i) {
        NCSeries img = phi.images[i].with_max_weight(s.N);
        if (!uses_only(img, {LetterKind::x})) throw AlgebraError("automorphism images must be series in the x letters");
        m.set(s.alphabet->x(i), img);
        m.set(s.alphabet->dx(i), de_rham(img));
    }
    return m;
}

inline NCSeries apply(const Automorphism &phi, const NCSeries &f, const LieSpace &s)
{
    return hom_apply(automorphism_map(phi, s), f.with_max_weight(s.N));
}

inline CyclicSeries apply(const Automorphism &phi, const CyclicSeries &f, const LieSpace &s)
{
    return cyclic_hom_apply(automorphism_map(phi, s), f.with_max_weight(s.N));
}

// (ψ∘φ)(f) = ψ(φ(f)): substitute ψ into the images of φ.
inline Automorphism compose(const Automorphism &psi, const Automorphism &phi, const LieSpace &s)
{
    Automorphism r;
    for (const auto &im : phi.images) r.images.push_back(apply(psi, im, s));
    return r;
}

inline QMatrix linear_part(const Automorphism &phi, const LieSpace &s)
{
    QMatrix A = q_zero(static_cast<std::size_t>(s.n), static_cast<std::size_t>(s.n));
    for (int i = 0; i < s.n; ++i)
        for (const auto &[w, c] : phi.images[i].terms())
            if (w.size() == 1) A[i][s.alphabet->index(w[0])] = c;
    return A;
}

// ψ with φ_i(ψ) = x_i, by ψ = A⁻¹(x − h(ψ)) where φ = Ax + h.
inline Automorphism invert(const Automorphism &phi, const LieSpace &s)
{
    auto Ainv = q_inverse(linear_part(phi, s));
    if (!Ainv) throw AlgebraError("automorphism has a singular linear part");
    std::vector<NCSeries> h;
    for (const auto &im : phi.images) h.push_back(im - im.homogeneous(1));
    Automorphism psi = linear_automorphism(*Ainv, s);
    for (int k = 1; k < s.N; ++k) {
        std::vector<NCSeries> rhs;
        for (int i = 0; i < s.n; ++i) rhs.push_back(s.x(i) - apply(psi, h[i], s));
        Automorphism next;
        for (int i = 0; i < s.n; ++i) {
            NCSeries v = s.zero();
            for (int j = 0; j < s.n; ++j) v += rhs[j] * (*Ainv)[i][j];
            next.images.push_back(std::move(v));
        }
        psi = std::move(next);
    }
    return psi;
}

// J with dφ_i = Σ_a Ad_{J_ia} dx_a: the words of dφ_i ending in dx_a, with
// dx_a stripped.
inline SeriesMatrix jacobian(const Automorphism &phi, const LieSpace &s)
{
    SeriesMatrix J = s.mzero();
    const Alphabet &a = *s.alphabet;
    for (int i = 0; i < s.n; ++i) {
        NCSeries d = de_rham(phi.images[i].with_max_weight(s.N));
        for (const auto &[w, c] : d.terms()) {
            if (w.empty() || a.kind(w.back()) != LetterKind::dx) continue;
            Word prefix(w.begin(), w.end() - 1);
            J(i, a.index(w.back())) += NCSeries::monomial(s.alphabet, s.N, prefix, c);
        }
    }
    return J;
}

// The bivector Π' for which φ is a Poisson map from Π to Π':
// Π' = J⁻¹ φ(Π) (J⁻¹)^†. If μ is a moment map for Π then φ(μ) is one for Π'.
inline SeriesMatrix pushforward(const SeriesMatrix &pi, const Automorphism &phi, const LieSpace &s)
{
    LetterMap m = automorphism_map(phi, s);
    SeriesMatrix Jinv = matrix_inverse(jacobian(phi, s));
    SeriesMatrix moved = pi.map([&](const NCSeries &e) { return hom_apply(m, e); });
    return Jinv * moved * Jinv.adjoint();
}

inline CyclicSeries pushforward(const CyclicSeries &pi, const Automorphism &phi, const LieSpace &s)
{
    return matrix_bivector(pushforward(bivector_matrix(pi, s), phi, s), s);
}

} // namespace lieworld
