#pragma once

// Forms and polyvector fields on the Lie space with n coordinates: cyclic
// series over (x, dx) and (x, p) respectively, where p_i stands for ∂_i.
//
// Matrix convention: a 2-form is Σ_{i,j} ⟨dx_i, Ad_{a_ij} dx_j⟩ summed over
// all ordered pairs, so ⟨dx1,dx2⟩ has a_12 = 1/2 and a_21 = −1/2. Bivectors
// are treated the same way with p in place of dx.

#include "cyclic.hpp"
#include "matrix.hpp"

namespace lieworld {

struct LieSpace {
    AlphabetPtr alphabet;
    int n = 0; // coordinates
    int N = 0; // truncation order

    static LieSpace make(int coords, int max_weight) { return {Alphabet::lie_space(coords), coords, max_weight}; }

    LieSpace with_max_weight(int m) const { return {alphabet, n, m}; }

    NCSeries zero() const { return NCSeries(alphabet, N); }
    NCSeries one() const { return NCSeries::one(alphabet, N); }
    NCSeries constant(const Rational &c) const { return NCSeries::constant(alphabet, N, c); }
    NCSeries letter(Letter l) const { return NCSeries::letter(alphabet, N, l); }
    NCSeries x(int i) const { return letter(alphabet->x(i)); }
    NCSeries dx(int i) const { return letter(alphabet->dx(i)); }
    NCSeries p(int i) const { return letter(alphabet->p(i)); }
    NCSeries t() const { return letter(alphabet->t()); }
    CyclicSeries czero() const { return CyclicSeries(alphabet, N); }
    SeriesMatrix mzero() const { return SeriesMatrix(alphabet, N, static_cast<std::size_t>(n)); }
    SeriesMatrix identity() const { return SeriesMatrix::identity(alphabet, N, static_cast<std::size_t>(n)); }

    NCSeries sum_x() const { return lieworld::sum_x(alphabet, N); }
    // ρ = Σ [x_i, p_i].
    NCSeries rho() const
    {
        NCSeries r = zero();
        for (int i = 0; i < n; ++i) r += lie_bracket(x(i), p(i));
        return r;
    }
};

// ---------------------------------------------------------------------------
// de Rham differential

inline LetterMap de_rham_map(const AlphabetPtr &a, int N)
{
    LetterMap m(a, N);
    for (int i = 0; i < a->coordinates(); ++i) m.set(a->x(i), NCSeries::letter(a, N, a->dx(i)));
    return m;
}

inline NCSeries de_rham(const NCSeries &s) { return der_apply(de_rham_map(s.alphabet(), s.max_weight()), 1, s); }

inline CyclicSeries de_rham(const CyclicSeries &f)
{
    return cyclic_der_apply(de_rham_map(f.alphabet(), f.max_weight()), 1, f);
}

inline bool uses_only(const NCSeries &s, std::initializer_list<LetterKind> kinds)
{
    const Alphabet &a = *s.alphabet();
    return s.letters_satisfy([&](Letter l) {
        for (auto k : kinds)
            if (a.kind(l) == k) return true;
        return false;
    });
}

inline bool uses_only(const CyclicSeries &f, std::initializer_list<LetterKind> kinds)
{
    return uses_only(f.representative(), kinds);
}

// ---------------------------------------------------------------------------
// Lemma comp: one forms and vector fields as tuples

namespace detail {
inline Letter odd_letter(const Alphabet &a, LetterKind k, int i) { return k == LetterKind::dx ? a.dx(i) : a.p(i); }

inline void require_degree(const CyclicSeries &f, LetterKind k, int degree)
{
    LetterKind other = k == LetterKind::dx ? LetterKind::p : LetterKind::dx;
    for (const auto &kv : f.terms()) {
        const Word &w = kv.first;
        if (CyclicSeries::count_kind(*f.alphabet(), w, k) != degree
            || CyclicSeries::count_kind(*f.alphabet(), w, other) != 0
            || CyclicSeries::count_kind(*f.alphabet(), w, LetterKind::t) != 0)
            throw AlgebraError("wrong bidegree");
    }
}
} // namespace detail

// Components (α_i) of α = Σ⟨dx_i, α_i⟩ (kind dx) or of X = Σ⟨p_i, X_i⟩ (kind p).
inline std::vector<NCSeries> one_components(const CyclicSeries &alpha, LetterKind k = LetterKind::dx)
{
    detail::require_degree(alpha, k, 1);
    std::vector<NCSeries> out;
    const Alphabet &a = *alpha.alphabet();
    for (int i = 0; i < a.coordinates(); ++i) out.push_back(cyclic_derivative(alpha, detail::odd_letter(a, k, i)));
    return out;
}

inline CyclicSeries components_one(const std::vector<NCSeries> &comps, const LieSpace &s,
                                   LetterKind k = LetterKind::dx)
{
    CyclicSeries r = s.czero();
    for (int i = 0; i < s.n; ++i) r += pair(s.letter(detail::odd_letter(*s.alphabet, k, i)), comps.at(i));
    return r;
}

inline std::vector<NCSeries> one_form_components(const CyclicSeries &a) { return one_components(a, LetterKind::dx); }
inline CyclicSeries components_one_form(const std::vector<NCSeries> &c, const LieSpace &s)
{
    return components_one(c, s, LetterKind::dx);
}
inline std::vector<NCSeries> vector_field_components(const CyclicSeries &x) { return one_components(x, LetterKind::p); }
inline CyclicSeries vector_field(const std::vector<NCSeries> &c, const LieSpace &s)
{
    return components_one(c, s, LetterKind::p);
}

// ---------------------------------------------------------------------------
// Lemma comp: two forms and bivectors as skew-adjoint matrices

inline CyclicSeries matrix_two(const SeriesMatrix &m, const LieSpace &s, LetterKind k)
{
    CyclicSeries r = s.czero();
    for (int i = 0; i < s.n; ++i)
        for (int j = 0; j < s.n; ++j) {
            const NCSeries &a = m(i, j);
            if (a.is_zero()) continue;
            NCSeries zj = s.letter(detail::odd_letter(*s.alphabet, k, j));
            r += pair(s.letter(detail::odd_letter(*s.alphabet, k, i)), ad_rep(a, zj));
        }
    return r;
}

// Each class is rotated to z_i u z_j v; the entry a_ij is read off the
// rotations with v empty, halved because every class is hit by (i,j) and by
// the skew partner (j,i).
inline SeriesMatrix two_matrix(const CyclicSeries &f, const LieSpace &s, LetterKind k)
{
    detail::require_degree(f, k, 2);
    const Alphabet &a = *f.alphabet();
    SeriesMatrix m = s.mzero();
    for (const auto &[w, c] : f.terms()) {
        const std::size_t L = w.size();
        int total = word_degree(a, w);
        int du = 0;
        for (std::size_t pos = 0; pos < L; ++pos) {
            if (a.kind(w[pos]) == k && a.kind(w[(pos + L - 1) % L]) == k) {
                Word rot(w.begin() + static_cast<long>(pos), w.end());
                rot.insert(rot.end(), w.begin(), w.begin() + static_cast<long>(pos));
                int sign = ((du % 2) && ((total - du) % 2)) ? -1 : 1;
                Word inner(rot.begin() + 1, rot.end() - 1);
                int i = a.index(rot.front()), j = a.index(rot.back());
                m(i, j).add_term(inner, Rational(sign, 2) * c);
            }
            du += a[w[pos]].degree;
        }
    }
    return m;
}

inline CyclicSeries matrix_two_form(const SeriesMatrix &m, const LieSpace &s)
{
    return matrix_two(m, s, LetterKind::dx);
}
inline SeriesMatrix two_form_matrix(const CyclicSeries &f, const LieSpace &s) { return two_matrix(f, s, LetterKind::dx); }
inline CyclicSeries matrix_bivector(const SeriesMatrix &m, const LieSpace &s) { return matrix_two(m, s, LetterKind::p); }
inline SeriesMatrix bivector_matrix(const CyclicSeries &f, const LieSpace &s) { return two_matrix(f, s, LetterKind::p); }

// ---------------------------------------------------------------------------
// Contractions

// ι_{∂_i}: the odd derivation dx_j ↦ δ_ij t, read off through φ(ω) = ⟨t, ι_{∂_i}ω⟩.
inline NCSeries iota_coordinate(int i, const CyclicSeries &omega)
{
    const auto &a = omega.alphabet();
    const int N = omega.max_weight();
    LetterMap phi(a, N);
    phi.set(a->dx(i), NCSeries::letter(a, N, a->t()));
    return cyclic_derivative(cyclic_der_apply(phi, 1, omega), a->t());
}

// ι_{ρ^t}: the odd derivation dx_i ↦ [x_i, t], x_i ↦ 0.
inline LetterMap iota_rho_t_map(const AlphabetPtr &a, int N)
{
    LetterMap m(a, N);
    NCSeries t = NCSeries::letter(a, N, a->t());
    for (int i = 0; i < a->coordinates(); ++i) m.set(a->dx(i), lie_bracket(NCSeries::letter(a, N, a->x(i)), t));
    return m;
}

inline NCSeries iota_rho_t(const NCSeries &s) { return der_apply(iota_rho_t_map(s.alphabet(), s.max_weight()), 1, s); }

inline CyclicSeries iota_rho_t(const CyclicSeries &f)
{
    return cyclic_der_apply(iota_rho_t_map(f.alphabet(), f.max_weight()), 1, f);
}

// ι_ρ ω, defined by ι_{ρ^t}ω = ⟨t, ι_ρ ω⟩.
// ι_{ρ^t} raises weight by one, so it runs one order higher.
inline NCSeries iota_rho(const CyclicSeries &omega)
{
    const int n = omega.max_weight();
    return cyclic_derivative(iota_rho_t(omega.with_max_weight(n + 1)), omega.alphabet()->t()).with_max_weight(n);
}

// ---------------------------------------------------------------------------
// Schouten bracket

inline int p_degree(const Alphabet &a, const Word &w) { return CyclicSeries::count_kind(a, w, LetterKind::p); }

// Polyvector degree of a homogeneous polyvector (throws when mixed).
inline int polyvector_degree(const CyclicSeries &f)
{
    int d = -1;
    for (const auto &kv : f.terms()) {
        int k = p_degree(*f.alphabet(), kv.first);
        if (d >= 0 && k != d) throw AlgebraError("polyvector is not homogeneous");
        d = k;
    }
    return d < 0 ? 0 : d;
}

// The derivation [f, −] of parity |f|−1:
// x_i ↦ (−1)^{|f|−1} ∂f/∂p_i, p_i ↦ −∂f/∂x_i (left cyclic derivatives).
inline LetterMap schouten_map(const CyclicSeries &f, int degree)
{
    const auto &a = f.alphabet();
    const int N = f.max_weight();
    LetterMap m(a, N);
    Rational sx = (degree - 1) % 2 ? -1 : 1;
    for (int i = 0; i < a->coordinates(); ++i) {
        m.set(a->x(i), cyclic_derivative(f, a->p(i)) * sx);
        m.set(a->p(i), -cyclic_derivative(f, a->x(i)));
    }
    return m;
}

inline CyclicSeries homogeneous_pdeg(const CyclicSeries &f, int k) { return f.polyvector_degree_part(k); }

inline int max_pdeg(const CyclicSeries &f)
{
    int d = 0;
    for (const auto &kv : f.terms()) d = std::max(d, p_degree(*f.alphabet(), kv.first));
    return d;
}

// [f, b] for b a coordinate series over (x, p); bilinear over homogeneous parts.
inline NCSeries schouten(const CyclicSeries &f, const NCSeries &b)
{
    f.representative().check_compatible(b);
    NCSeries r(b.alphabet(), b.max_weight());
    for (int k = 0; k <= max_pdeg(f); ++k) {
        CyclicSeries fk = homogeneous_pdeg(f, k);
        if (fk.is_zero()) continue;
        r += der_apply(schouten_map(fk, k), (k + 1) % 2, b);
    }
    return r;
}

inline CyclicSeries schouten(const CyclicSeries &f, const CyclicSeries &g)
{
    f.check_compatible(g);
    CyclicSeries r(g.alphabet(), g.max_weight());
    for (int k = 0; k <= max_pdeg(f); ++k) {
        CyclicSeries fk = homogeneous_pdeg(f, k);
        if (fk.is_zero()) continue;
        r += cyclic_der_apply(schouten_map(fk, k), (k + 1) % 2, g);
    }
    return r;
}

// {f, g}_Π = [f, [Π, g]].
inline CyclicSeries poisson_bracket(const CyclicSeries &pi, const CyclicSeries &f, const CyclicSeries &g)
{
    return schouten(f, schouten(pi, g));
}

// ---------------------------------------------------------------------------
// Musical map and Lie derivative

// ω ↦ ω^Π: the substitution dx_i ↦ [Π, x_i], x_i ↦ x_i.
inline LetterMap sharp_map(const CyclicSeries &pi)
{
    const auto &a = pi.alphabet();
    const int N = pi.max_weight();
    LetterMap m(a, N);
    for (int i = 0; i < a->coordinates(); ++i)
        m.set(a->dx(i), schouten(pi, NCSeries::letter(a, N, a->x(i))));
    return m;
}

inline CyclicSeries sharp(const CyclicSeries &pi, const CyclicSeries &omega)
{
    if (!uses_only(omega, {LetterKind::x, LetterKind::dx})) throw AlgebraError("sharp expects a form");
    return cyclic_hom_apply(sharp_map(pi), omega);
}

inline NCSeries sharp(const CyclicSeries &pi, const NCSeries &s) { return hom_apply(sharp_map(pi), s); }

// The derivation of the (x, dx) algebra induced by a vector field X:
// x_i ↦ [X, x_i], dx_i ↦ d[X, x_i].
inline LetterMap lie_derivative_map(const CyclicSeries &X)
{
    if (polyvector_degree(X) != 1 && !X.is_zero()) throw AlgebraError("lie_derivative expects a vector field");
    const auto &a = X.alphabet();
    const int N = X.max_weight();
    LetterMap m(a, N);
    for (int i = 0; i < a->coordinates(); ++i) {
        NCSeries xi = schouten(X, NCSeries::letter(a, N, a->x(i)));
        m.set(a->x(i), xi);
        m.set(a->dx(i), de_rham(xi));
    }
    return m;
}

inline CyclicSeries lie_derivative(const CyclicSeries &X, const CyclicSeries &omega)
{
    return cyclic_der_apply(lie_derivative_map(X), 0, omega);
}

inline NCSeries lie_derivative(const CyclicSeries &X, const NCSeries &s) { return der_apply(lie_derivative_map(X), 0, s); }

// ---------------------------------------------------------------------------
// Gauge transformations on matrices. With the full-sum matrix convention the
// paper's Π − ΠσΠ and (1 − Πω)^{-1}Π carry a factor 4 on each product Πω.

constexpr int gauge_factor = 4;

inline SeriesMatrix gauge_transform(const SeriesMatrix &pi, const SeriesMatrix &omega)
{
    SeriesMatrix one = SeriesMatrix::identity(pi.alphabet(), pi.max_weight(), pi.dim());
    return matrix_inverse(one - pi * omega * Rational(gauge_factor)) * pi;
}

// Π ↦ Π − ΠσΠ (full-sum normalization).
inline SeriesMatrix sigma_gauge(const SeriesMatrix &pi, const SeriesMatrix &sigma)
{
    return pi - pi * sigma * pi * Rational(gauge_factor);
}

// The closed form ω with (1 − Πω)^{-1} = 1 − Πσ, so Π^ω = Π − ΠσΠ.
inline SeriesMatrix sigma_to_omega(const SeriesMatrix &pi, const SeriesMatrix &sigma)
{
    SeriesMatrix one = SeriesMatrix::identity(pi.alphabet(), pi.max_weight(), pi.dim());
    return -(sigma * matrix_inverse(one - pi * sigma * Rational(gauge_factor)));
}

// Inverse of sigma_to_omega: σ = −ω(1 − Πω)^{-1}.
inline SeriesMatrix omega_to_sigma(const SeriesMatrix &pi, const SeriesMatrix &omega)
{
    SeriesMatrix one = SeriesMatrix::identity(pi.alphabet(), pi.max_weight(), pi.dim());
    return -(omega * matrix_inverse(one - pi * omega * Rational(gauge_factor)));
}

// ---------------------------------------------------------------------------
// Bracket of one forms induced by a Poisson bivector:
// [α, β]_Π = ⟨α^Π(β_i) − β^Π(α_i), dx_i⟩ − 2 Σ ⟨α_i, Ad_{dΠ_ij} β_j⟩.

inline CyclicSeries one_form_bracket_pi(const CyclicSeries &pi, const CyclicSeries &alpha, const CyclicSeries &beta,
                                        const LieSpace &s)
{
    auto ac = one_form_components(alpha);
    auto bc = one_form_components(beta);
    CyclicSeries xa = sharp(pi, alpha);
    CyclicSeries xb = sharp(pi, beta);
    std::vector<NCSeries> comps;
    for (int i = 0; i < s.n; ++i) comps.push_back(schouten(xa, bc[i]) - schouten(xb, ac[i]));
    CyclicSeries r = components_one_form(comps, s);
    SeriesMatrix pm = bivector_matrix(pi, s);
    for (int i = 0; i < s.n; ++i)
        for (int j = 0; j < s.n; ++j) {
            if (pm(i, j).is_zero()) continue;
            NCSeries dpij = de_rham(pm(i, j));
            if (dpij.is_zero()) continue;
            r -= pair(ac[i], ad_rep(dpij, bc[j])) * Rational(2);
        }
    return r;
}

// ---------------------------------------------------------------------------
// Bracket of forms induced by Π. [α, −] is the derivation of parity |α|−1
// with x_j ↦ (−1)^{|α|−1} c_j(α) and dx_j ↦ d c_j(α) + c_j(dα), where
// c_j(α) is the p_j-coefficient of α with one dx_i replaced by [Π, x_i].
// On one forms this is one_form_bracket_pi.

namespace detail {
inline NCSeries form_contraction(const LetterMap &partial_sharp, const CyclicSeries &alpha, int j)
{
    return cyclic_derivative(cyclic_der_apply(partial_sharp, 0, alpha), alpha.alphabet()->p(j));
}
} // namespace detail

inline int max_form_degree(const CyclicSeries &f)
{
    int d = 0;
    for (const auto &kv : f.terms()) d = std::max(d, CyclicSeries::count_kind(*f.alphabet(), kv.first, LetterKind::dx));
    return d;
}

inline CyclicSeries form_bracket_pi(const CyclicSeries &pi, const CyclicSeries &alpha, const CyclicSeries &beta)
{
    pi.check_compatible(alpha);
    alpha.check_compatible(beta);
    if (!uses_only(alpha, {LetterKind::x, LetterKind::dx}) || !uses_only(beta, {LetterKind::x, LetterKind::dx}))
        throw AlgebraError("form bracket expects forms");
    const auto &a = pi.alphabet();
    LetterMap ps = sharp_map(pi);
    CyclicSeries r(beta.alphabet(), beta.max_weight());
    for (int k = 0; k <= max_form_degree(alpha); ++k) {
        CyclicSeries ak = alpha.form_degree_part(k);
        if (ak.is_zero()) continue;
        CyclicSeries dak = de_rham(ak);
        LetterMap m(a, pi.max_weight());
        Rational sx = k % 2 ? 1 : -1;
        for (int j = 0; j < a->coordinates(); ++j) {
            NCSeries c = detail::form_contraction(ps, ak, j);
            m.set(a->x(j), c * sx);
            m.set(a->dx(j), de_rham(c) + detail::form_contraction(ps, dak, j));
        }
        r += cyclic_der_apply(m, (k + 1) % 2, beta);
    }
    return r;
}

} // namespace lieworld
