#pragma once

// Poisson structures, moment maps and the constructions around them.

#include <algorithm>
#include <optional>
#include <tuple>

#include "automorphism.hpp"
#include "function_spaces.hpp"
#include "geometry.hpp"
#include "linalg.hpp"

namespace lieworld {

// Π_KKS = ½ Σ ⟨x_i, [p_i, p_i]⟩.
inline CyclicSeries pi_kks(const LieSpace &s)
{
    CyclicSeries r = s.czero();
    for (int i = 0; i < s.n; ++i) r += pair(s.x(i), lie_bracket(s.p(i), s.p(i))) * Rational(1, 2);
    return r;
}

// Σ_k ⟨p_{2k−1}, p_{2k}⟩ on an even number of coordinates.
inline CyclicSeries pi_symp(const LieSpace &s)
{
    if (s.n % 2) throw AlgebraError("symplectic bivector needs an even number of coordinates");
    CyclicSeries r = s.czero();
    for (int i = 0; i + 1 < s.n; i += 2) r += pair(s.p(i), s.p(i + 1));
    return r;
}

inline CyclicSeries poisson_residual(const CyclicSeries &pi) { return schouten(pi, pi); }

inline bool is_poisson(const CyclicSeries &pi) { return poisson_residual(pi).is_zero(); }

// [Π, μ] − ρ.
inline NCSeries moment_residual(const CyclicSeries &pi, const NCSeries &mu, const LieSpace &s)
{
    if (sgn(mu.constant_term()) != 0) throw AlgebraError("moment map must have zero constant term");
    return schouten(pi, mu) - s.rho();
}

using WordVector = SparseVector<Word, WordLess>;
using WordEchelon = ColumnEchelon<Word, WordLess>;

inline WordVector to_vector(const NCSeries &s)
{
    return WordVector(s.terms().begin(), s.terms().end());
}
inline WordVector to_vector(const CyclicSeries &f)
{
    return WordVector(f.terms().begin(), f.terms().end());
}

// Lyndon-bracket basis of the x-only Lie series of weights lo..hi.
inline std::vector<NCSeries> lie_basis_range(const LieSpace &s, int lo, int hi)
{
    std::vector<NCSeries> out;
    auto xs = x_letters(*s.alphabet);
    for (int k = lo; k <= hi; ++k)
        for (auto &b : lie_basis(s.alphabet, s.N, xs, k)) out.push_back(std::move(b));
    return out;
}

// ---------------------------------------------------------------------------
// Moment maps

struct MomentSolution {
    std::optional<NCSeries> mu;
    int failing_weight = 0; // first weight where [Π,μ] = ρ has no solution
    std::size_t kernel_dim = 0; // Lie series killed by [Π, −] inside the truncation
};

// Exact linear solve for μ with [Π, μ] = ρ over the Lyndon basis of weights
// 1..N. The weight-N part of [Π, μ] sees Π in weight N + 1, so the equation
// is imposed through weight N − 1 only.
inline MomentSolution solve_moment(const CyclicSeries &pi, const LieSpace &s)
{
    const int exact = s.N - 1;
    auto basis = lie_basis_range(s, 1, s.N);
    std::vector<NCSeries> images;
    WordEchelon e;
    // Columns whose image reaches past the exact range may look dependent
    // only because of the truncation; they are left out of the kernel count.
    int lowest = s.N + 2;
    for (const auto &kv : pi.terms()) lowest = std::min(lowest, static_cast<int>(kv.first.size()));
    const int exact_columns = exact - (lowest - 2);
    MomentSolution out;
    for (const auto &b : basis) {
        images.push_back(schouten(pi, b).truncated(exact));
        bool indep = e.add_column(to_vector(images.back()));
        if (!indep && b.min_weight() <= exact_columns) ++out.kernel_dim;
    }
    NCSeries rho = s.rho().truncated(exact);
    if (auto x = e.solve(to_vector(rho))) {
        NCSeries mu = s.zero();
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (sgn((*x)[k]) != 0) mu += basis[k] * (*x)[k];
        out.mu = mu;
        return out;
    }
    for (int w = 1; w <= exact; ++w) {
        WordEchelon ew;
        for (const auto &im : images) ew.add_column(to_vector(im.truncated(w)));
        if (!ew.solve(to_vector(rho.truncated(w)))) {
            out.failing_weight = w;
            break;
        }
    }
    return out;
}

// Ševera's construction: write μ̃ = Σ (c_w/d) [θ(prefix), x_last] by Dynkin
// rewriting and take ω = Σ (c_w/d) ⟨dθ(prefix), dx_last⟩.
inline CyclicSeries omega_from_moment(const NCSeries &mu_tilde, const LieSpace &s)
{
    if (!uses_only(mu_tilde, {LetterKind::x})) throw AlgebraError("moment target must be a series in the x letters");
    const Alphabet &a = *s.alphabet;
    std::vector<NCSeries> first(static_cast<std::size_t>(s.n), s.zero());
    for (const auto &[w, c] : mu_tilde.terms()) {
        if (w.size() < 2) throw AlgebraError("omega_from_moment needs weight >= 2");
        Word prefix(w.begin(), w.end() - 1);
        first[static_cast<std::size_t>(a.index(w.back()))] +=
            left_normed(s.alphabet, s.N, prefix) * (c / Rational(static_cast<long>(w.size())));
    }
    CyclicSeries omega = s.czero();
    for (int j = 0; j < s.n; ++j)
        if (!first[j].is_zero()) omega += pair(de_rham(first[j]), s.dx(j));
    return omega;
}

// Constant pairing, its kernel Z and the V/Z non-degeneracy of a quadratic
// moment term μ₂ (rank(Π₀ M Π₀) = rank Π₀ with M the matrix of μ₂).
struct NondegeneracyReport {
    QMatrix constant_pairing;
    std::vector<std::vector<Rational>> kernel_basis;
    bool constant_nondegenerate = false;
    bool quadratic_nondegenerate_on_quotient = true;
};

inline NondegeneracyReport nondegeneracy_report(const SeriesMatrix &pi, const NCSeries *mu2 = nullptr)
{
    NondegeneracyReport r;
    r.constant_pairing = pi.constant_part();
    r.kernel_basis = q_nullspace(r.constant_pairing);
    r.constant_nondegenerate = r.kernel_basis.empty();
    if (mu2) {
        const Alphabet &a = *mu2->alphabet();
        const std::size_t n = pi.dim();
        QMatrix m = q_zero(n, n);
        for (const auto &[w, c] : mu2->terms())
            if (w.size() == 2) m[a.index(w[0])][a.index(w[1])] = c;
        auto p0 = r.constant_pairing;
        r.quadratic_nondegenerate_on_quotient = q_rank(q_mul(q_mul(p0, m), p0)) == q_rank(p0);
    }
    return r;
}

struct GaugedStructure {
    SeriesMatrix matrix;
    CyclicSeries bivector;
    CyclicSeries omega;
};

// Π^{ω^η} = (1 − Πω^η)^{-1}Π, Poisson with moment map η, where ω^η is built
// from η − μ by Ševera's construction. Π, μ and η are taken as polynomials and
// the result is computed one order above s, since [Π^ω, η] in weight N sees
// the weight N+1 part of Π^ω.
inline GaugedStructure poisson_from_moment(const CyclicSeries &pi, const NCSeries &mu, const NCSeries &eta,
                                           const LieSpace &s)
{
    const LieSpace up = s.with_max_weight(s.N + 1);
    NCSeries mu_tilde = (eta - mu).with_max_weight(up.N);
    for (const auto &kv : mu_tilde.terms())
        if (kv.first.size() < 2) throw AlgebraError("target must agree with the moment map in weight 1");
    SeriesMatrix pm = bivector_matrix(pi.with_max_weight(up.N), up);
    NCSeries eta2 = eta.homogeneous(2);
    auto report = nondegeneracy_report(pm, &eta2);
    if (!report.quadratic_nondegenerate_on_quotient)
        throw AlgebraError("quadratic part of the target is degenerate on V/Z");
    CyclicSeries omega = omega_from_moment(mu_tilde, up);
    SeriesMatrix g = gauge_transform(pm, two_form_matrix(omega, up));
    return {g, matrix_bivector(g, up), omega};
}

// [Π^ω, η] − ρ and [Π^ω, Π^ω] through weight N.
inline NCSeries gauged_moment_residual(const GaugedStructure &g, const NCSeries &eta, const LieSpace &s)
{
    const LieSpace up = s.with_max_weight(g.bivector.max_weight());
    return moment_residual(g.bivector, eta.with_max_weight(up.N), up).with_max_weight(s.N);
}

inline CyclicSeries gauged_poisson_residual(const GaugedStructure &g, const LieSpace &s)
{
    return poisson_residual(g.bivector).with_max_weight(s.N);
}

inline GaugedStructure poisson_from_moment(const CyclicSeries &pi, const NCSeries &eta, const LieSpace &s)
{
    auto sol = solve_moment(pi, s);
    if (!sol.mu) throw AlgebraError("bivector has no moment map (fails at weight " + std::to_string(sol.failing_weight) + ")");
    return poisson_from_moment(pi, *sol.mu, eta, s);
}

// ---------------------------------------------------------------------------
// Weinstein splitting

// Rows b_1, …, b_n with B M Bᵀ = ½[[0,1],[−1,0]] ⊕ … ⊕ 0 for a skew M.
inline QMatrix symplectic_basis(const QMatrix &M, int &pairs)
{
    const std::size_t n = M.size();
    auto form = [&](const std::vector<Rational> &u, const std::vector<Rational> &v) {
        Rational r = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) r += u[i] * M[i][j] * v[j];
        return r;
    };
    std::vector<std::vector<Rational>> rest = q_identity(n);
    QMatrix out;
    pairs = 0;
    for (;;) {
        std::size_t a = 0, b = 0;
        bool found = false;
        for (a = 0; a < rest.size() && !found; ++a)
            for (b = a + 1; b < rest.size() && !found; ++b)
                if (sgn(form(rest[a], rest[b])) != 0) found = true;
        if (!found) break;
        --a;
        --b;
        auto u = rest[a];
        auto v = rest[b];
        Rational scale = Rational(1, 2) / form(u, v);
        for (auto &c : v) c *= scale;
        rest.erase(rest.begin() + static_cast<long>(b));
        rest.erase(rest.begin() + static_cast<long>(a));
        for (auto &w : rest) {
            Rational cu = -2 * form(w, v), cv = 2 * form(w, u);
            for (std::size_t k = 0; k < n; ++k) w[k] += cu * u[k] + cv * v[k];
        }
        out.push_back(std::move(u));
        out.push_back(std::move(v));
        ++pairs;
    }
    for (auto &w : rest) out.push_back(std::move(w));
    return out;
}

struct WeinsteinSplit {
    Automorphism map; // Π ↦ pushforward(Π, map) is split
    SeriesMatrix matrix;
    CyclicSeries bivector;
    int symplectic_pairs = 0;
};

namespace detail {

struct EntryKey {
    std::size_t i, j;
    Word w;
};
struct EntryLess {
    bool operator()(const EntryKey &a, const EntryKey &b) const
    {
        if (a.i != b.i || a.j != b.j) return std::tie(a.i, a.j) < std::tie(b.i, b.j);
        return WordLess{}(a.w, b.w);
    }
};
using EntryVector = SparseVector<EntryKey, EntryLess>;

// Entries of weight ≥ 1 that a split bivector may not have: anything in a row
// or column of the first 2r coordinates, and any word using one of them.
inline EntryVector non_split_part(const SeriesMatrix &m, const Alphabet &a, int sympl)
{
    EntryVector v;
    const auto s = static_cast<std::size_t>(sympl);
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            for (const auto &[w, c] : m(i, j).terms()) {
                if (w.empty()) continue;
                bool bad = i < s || j < s;
                for (Letter l : w) bad = bad || static_cast<std::size_t>(a.index(l)) < s;
                if (bad) v.emplace(EntryKey{i, j, w}, c);
            }
    return v;
}

} // namespace detail

// Linear Darboux step followed by one gauge step per weight: the weight-m
// part is removed by x_i ↦ x_i + v_i with v Lie of weight m + 1 solving
// J_v Π₀ + Π₀ J_v^† = (non-split part of Π_m).
inline WeinsteinSplit weinstein_split(const CyclicSeries &pi, const LieSpace &s)
{
    SeriesMatrix pm = bivector_matrix(pi, s);
    WeinsteinSplit out;
    QMatrix B = symplectic_basis(pm.constant_part(), out.symplectic_pairs);
    auto A = q_inverse(B);
    out.map = linear_automorphism(*A, s);
    pm = pushforward(pm, out.map, s);
    const int sympl = 2 * out.symplectic_pairs;
    const Alphabet &a = *s.alphabet;
    SeriesMatrix p0 = SeriesMatrix::from_rational(s.alphabet, s.N, pm.constant_part());
    SeriesMatrix one = s.identity();

    for (int m = 1; m <= s.N - 2; ++m) {
        auto target = detail::non_split_part(pm.homogeneous(m), a, sympl);
        if (target.empty()) continue;
        std::vector<std::pair<int, NCSeries>> unknowns;
        ColumnEchelon<detail::EntryKey, detail::EntryLess> e;
        for (int i = 0; i < s.n; ++i)
            for (auto &b : lie_basis(s.alphabet, s.N, x_letters(a), m + 1)) {
                Automorphism phi = identity_automorphism(s);
                phi.images[i] += b;
                SeriesMatrix jv = jacobian(phi, s) - one;
                e.add_column(detail::non_split_part(jv * p0 + p0 * jv.adjoint(), a, sympl));
                unknowns.emplace_back(i, std::move(b));
            }
        auto sol = e.solve(target);
        if (!sol) throw AlgebraError("no splitting gauge in weight " + std::to_string(m));
        Automorphism phi = identity_automorphism(s);
        for (std::size_t k = 0; k < unknowns.size(); ++k)
            if (sgn((*sol)[k]) != 0) phi.images[unknowns[k].first] += unknowns[k].second * (*sol)[k];
        pm = pushforward(pm, phi, s);
        out.map = compose(phi, out.map, s);
    }
    for (int m = 1; m <= s.N - 2; ++m)
        if (!detail::non_split_part(pm.homogeneous(m), a, sympl).empty())
            throw AlgebraError("splitting did not converge in weight " + std::to_string(m));
    out.matrix = pm.map([&](const NCSeries &e) { return e.truncated(s.N - 2).with_max_weight(s.N); });
    out.bivector = matrix_bivector(out.matrix, s);
    return out;
}

// ---------------------------------------------------------------------------
// Casimirs

// Basis of {f ∈ F(L) : [Π, f] = 0} in weights 2..max_weight. Π is read as a
// polynomial so [Π, f] is computed exactly.
inline std::vector<CyclicSeries> casimir_search(const CyclicSeries &pi, int max_weight, const LieSpace &s)
{
    int top = 2;
    for (const auto &kv : pi.terms()) top = std::max(top, static_cast<int>(kv.first.size()));
    const LieSpace up = s.with_max_weight(std::max(s.N, max_weight + top - 2));
    CyclicSeries p = pi.with_max_weight(up.N);
    std::vector<CyclicSeries> out;
    for (int w = 2; w <= max_weight; ++w) {
        auto basis = function_basis(up, x_letters(*s.alphabet), w);
        auto r = linear_map_report(basis, [&](const CyclicSeries &f) { return schouten(p, f); });
        for (auto &k : r.kernel) out.push_back(k.with_max_weight(s.N));
    }
    return out;
}

} // namespace lieworld
