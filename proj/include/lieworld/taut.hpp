#pragma once

// Tangential derivations u = (u_1, …, u_n), acting by x_i ↦ [x_i, u_i], and
// the group they integrate to. A group element is stored by components g_i
// with action x_i ↦ g_i x_i g_i⁻¹.

#include <optional>

#include "automorphism.hpp"
#include "hamiltonian.hpp"

namespace lieworld {

struct TDer {
    std::vector<NCSeries> comps;
};

struct TAutElem {
    std::vector<NCSeries> comps;
    std::optional<TDer> log;
};

inline TDer tder_zero(const LieSpace &s) { return {std::vector<NCSeries>(static_cast<std::size_t>(s.n), s.zero())}; }

inline LetterMap tder_map(const TDer &u, const LieSpace &s)
{
    if (static_cast<int>(u.comps.size()) != s.n) throw AlgebraError("tangential derivation needs one component per coordinate");
    LetterMap m(s.alphabet, s.N);
    for (int i = 0; i < s.n; ++i) m.set(s.alphabet->x(i), lie_bracket(s.x(i), u.comps[i].with_max_weight(s.N)));
    return m;
}

inline NCSeries tder_apply(const TDer &u, const NCSeries &f, const LieSpace &s)
{
    return der_apply(tder_map(u, s), 0, f.with_max_weight(s.N));
}

// [u, v]_i = u(v_i) − v(u_i) + [u_i, v_i]; the map to derivations turns this
// into the commutator.
inline TDer tder_bracket(const TDer &u, const TDer &v, const LieSpace &s)
{
    TDer r;
    for (int i = 0; i < s.n; ++i)
        r.comps.push_back(tder_apply(u, v.comps[i], s) - tder_apply(v, u.comps[i], s) + lie_bracket(u.comps[i], v.comps[i]));
    return r;
}

inline CyclicSeries tder_one_form(const TDer &u, const LieSpace &s) { return components_one_form(u.comps, s); }

// ---------------------------------------------------------------------------
// Group elements

inline TAutElem taut_identity(const LieSpace &s)
{
    return {std::vector<NCSeries>(static_cast<std::size_t>(s.n), s.one()), tder_zero(s)};
}

inline void require_group_like(const TAutElem &g)
{
    for (const auto &c : g.comps) {
        if (sgn(c.constant_term() - 1) != 0 || !is_lie(series_log(c)))
            throw AlgebraError("TAut component is not group-like");
    }
}

// Components of exp(u), from the flow ġ = u(g) − g·u_i, g(0) = 1:
// g_i = Σ_k (u − R_{u_i})^k (1) / k!.
inline TAutElem taut_exp(const TDer &u, const LieSpace &s)
{
    LetterMap m = tder_map(u, s);
    TAutElem g;
    for (int i = 0; i < s.n; ++i) {
        NCSeries ui = u.comps[i].with_max_weight(s.N);
        NCSeries term = s.one(), acc = s.one();
        for (int k = 1; k <= s.N; ++k) {
            term = (der_apply(m, 0, term) - term * ui) * Rational(1, k);
            if (term.is_zero()) break;
            acc += term;
        }
        g.comps.push_back(std::move(acc));
    }
    g.log = u;
    return g;
}

// The closed form x_i ↦ e^{−A_i} x_i e^{A_i}, A_i = ((e^u − 1)/u)(u_i). It
// agrees with taut_exp through weight 3; beyond that the two differ by the
// commutator terms of the flow.
inline TAutElem taut_exp_closed_form(const TDer &u, const LieSpace &s)
{
    LetterMap m = tder_map(u, s);
    TAutElem g;
    for (int i = 0; i < s.n; ++i) {
        NCSeries term = u.comps[i].with_max_weight(s.N), a = s.zero();
        Rational f = 1;
        for (int k = 1; k <= s.N + 1 && !term.is_zero(); ++k) {
            f /= k;
            a += term * f;
            term = der_apply(m, 0, term);
        }
        g.comps.push_back(series_exp(-a));
    }
    return g;
}

inline LetterMap taut_map(const TAutElem &g, const LieSpace &s)
{
    LetterMap m(s.alphabet, s.N);
    for (int i = 0; i < s.n; ++i) {
        NCSeries c = g.comps[i].with_max_weight(s.N);
        m.set(s.alphabet->x(i), c * s.x(i) * antipode(c));
    }
    return m;
}

inline NCSeries taut_apply(const TAutElem &g, const NCSeries &f, const LieSpace &s)
{
    if (static_cast<int>(g.comps.size()) != s.n) throw AlgebraError("TAut element on the wrong number of strands");
    return hom_apply(taut_map(g, s), f.with_max_weight(s.N));
}

inline Automorphism taut_automorphism(const TAutElem &g, const LieSpace &s)
{
    Automorphism a;
    for (int i = 0; i < s.n; ++i) a.images.push_back(taut_apply(g, s.x(i), s));
    return a;
}

// (g·h)(f) = g(h(f)), with components (g·h)_i = g(h_i) g_i.
inline TAutElem taut_compose(const TAutElem &g, const TAutElem &h, const LieSpace &s)
{
    TAutElem r;
    for (int i = 0; i < s.n; ++i) r.comps.push_back(taut_apply(g, h.comps[i], s) * g.comps[i].with_max_weight(s.N));
    return r;
}

// k with k(g_i) k_i = 1, by fixed-point iteration from k_i = g_i⁻¹.
inline TAutElem taut_invert(const TAutElem &g, const LieSpace &s)
{
    TAutElem k;
    for (const auto &c : g.comps) k.comps.push_back(antipode(c.with_max_weight(s.N)));
    for (int it = 0; it < s.N; ++it) {
        TAutElem next;
        for (int i = 0; i < s.n; ++i) next.comps.push_back(antipode(taut_apply(k, g.comps[i], s)));
        if (next.comps == k.comps) break;
        k = std::move(next);
    }
    if (g.log) {
        TDer neg = *g.log;
        for (auto &c : neg.comps) c = -c;
        k.log = neg;
    }
    return k;
}

// Components α_i with δ(x_i) = [x_i, α_i], weights 1..N−1, where δ = log of
// the action. The x_i-multiple in α_i is fixed to zero.
inline TDer taut_log(const TAutElem &g, const LieSpace &s)
{
    LetterMap m = taut_map(g, s);
    TDer out;
    auto basis = lie_basis_range(s, 1, s.N - 1);
    for (int i = 0; i < s.n; ++i) {
        NCSeries x = s.x(i);
        NCSeries delta = s.zero(), power = x;
        for (int k = 1; k <= s.N; ++k) {
            power = hom_apply(m, power) - power;
            if (power.is_zero()) break;
            delta += power * Rational(k % 2 ? 1 : -1, k);
        }
        WordEchelon e;
        for (const auto &b : basis) e.add_column(to_vector(lie_bracket(x, b)));
        auto sol = e.solve(to_vector(delta));
        if (!sol) throw AlgebraError("action is not tangential");
        NCSeries a = s.zero();
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (sgn((*sol)[k]) != 0) a += basis[k] * (*sol)[k];
        out.comps.push_back(std::move(a));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hamiltonian test

// ∂α/∂x_j: the words of α ending in x_j with that letter stripped, so that
// α = Σ_j (∂α/∂x_j) x_j for α without constant term.
inline NCSeries right_partial(const NCSeries &a, Letter x)
{
    NCSeries r(a.alphabet(), a.max_weight());
    for (const auto &[w, c] : a.terms())
        if (!w.empty() && w.back() == x) r.add_term(Word(w.begin(), w.end() - 1), c);
    return r;
}

// ∂α_i/∂x_j = (∂α_j/∂x_i)^* for all i, j.
inline bool closed_by_partials(const TDer &u, const LieSpace &s)
{
    for (int i = 0; i < s.n; ++i)
        for (int j = 0; j < s.n; ++j)
            if (right_partial(u.comps[i], s.alphabet->x(j)) != antipode(right_partial(u.comps[j], s.alphabet->x(i))))
                return false;
    return true;
}

struct HamVerdict {
    bool fixes_sum = false; // g(Σx_i) = Σx_i
    bool log_closed = false; // the logarithm is a closed one form
    NCSeries witness; // g(Σx_i) − Σx_i
    bool agree() const { return fixes_sum == log_closed; }
};

inline HamVerdict ham_test(const TAutElem &g, const LieSpace &s)
{
    HamVerdict v;
    v.witness = taut_apply(g, s.sum_x(), s) - s.sum_x();
    v.fixes_sum = v.witness.is_zero();
    TDer a = taut_log(g, s);
    v.log_closed = closed_by_partials(a, s);
    return v;
}

// ---------------------------------------------------------------------------
// Transitivity and F

// g with g(Σx_i) = target. Each weight's discrepancy e is rewritten as
// Σ[B_i, x_i] by left-normed brackets and removed with u_i = −B_i.
inline TAutElem transitivity_solve(const NCSeries &target, const LieSpace &s)
{
    if (target.homogeneous(1) != s.sum_x().homogeneous(1) || sgn(target.constant_term()) != 0)
        throw AlgebraError("target must be Σx_i plus terms of weight >= 2");
    const Alphabet &a = *s.alphabet;
    TAutElem g = taut_identity(s);
    for (int k = 2; k <= s.N; ++k) {
        NCSeries e = (target - taut_apply(g, s.sum_x(), s)).homogeneous(k);
        if (e.is_zero()) continue;
        TDer u = tder_zero(s);
        for (const auto &[w, c] : e.terms()) {
            Word prefix(w.begin(), w.end() - 1);
            u.comps[a.index(w.back())] -= left_normed(s.alphabet, s.N, prefix) * (c / Rational(static_cast<long>(w.size())));
        }
        g = taut_compose(taut_exp(u, s), g, s);
    }
    g.log.reset();
    return g;
}

// Per weight k, u with u(x_1 + … + x_n) = −(weight-k discrepancy), solved
// over columns (Lyndon element b, slot i) ↦ [x_i, b] in that order with the
// free variables set to zero.
inline TAutElem solve_intertwiner(const NCSeries &source, const NCSeries &target, const LieSpace &s)
{
    TAutElem g = taut_identity(s);
    for (int k = 2; k <= s.N; ++k) {
        NCSeries e = (taut_apply(g, source, s) - target).homogeneous(k);
        if (e.is_zero()) continue;
        std::vector<std::pair<int, NCSeries>> cols;
        WordEchelon ech;
        for (auto &b : lie_basis(s.alphabet, s.N, x_letters(*s.alphabet), k - 1))
            for (int i = 0; i < s.n; ++i) {
                ech.add_column(to_vector(lie_bracket(s.x(i), b)));
                cols.emplace_back(i, b);
            }
        auto sol = ech.solve(to_vector(-e));
        if (!sol) throw AlgebraError("no tangential correction in weight " + std::to_string(k));
        TDer u = tder_zero(s);
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (sgn((*sol)[c]) != 0) u.comps[cols[c].first] += cols[c].second * (*sol)[c];
        g = taut_compose(taut_exp(u, s), g, s);
    }
    g.log.reset();
    return g;
}

// F ∈ TAut_2 with F(log(e^{x_1} e^{x_2})) = x_1 + x_2.
inline TAutElem solve_F(const LieSpace &s)
{
    if (s.n != 2) throw AlgebraError("solve_F works on two strands");
    return solve_intertwiner(bch(s.x(0), s.x(1)), s.x(0) + s.x(1), s);
}

inline NCSeries f_residual(const TAutElem &F, const LieSpace &s)
{
    return taut_apply(F, bch(s.x(0), s.x(1)), s) - s.x(0) - s.x(1);
}

// F_Φ with components (Φ(x, −x−y), e^{−(x+y)/2} Φ(y, −x−y)) for Φ written in
// x_1, x_2.
inline TAutElem f_from_associator(const NCSeries &phi, const LieSpace &s)
{
    if (s.n != 2) throw AlgebraError("associator F lives on two strands");
    if (!uses_only(phi, {LetterKind::x})) throw AlgebraError("associator must be a series in x1, x2");
    if (sgn(phi.constant_term() - 1) != 0 || !is_lie(series_log(phi.with_max_weight(s.N))))
        throw AlgebraError("associator is not group-like");
    NCSeries x = s.x(0), y = s.x(1);
    auto subst = [&](const NCSeries &a, const NCSeries &b) {
        LetterMap m(s.alphabet, s.N);
        m.set(s.alphabet->x(0), a);
        m.set(s.alphabet->x(1), b);
        return hom_apply(m, phi.with_max_weight(s.N));
    };
    TAutElem F;
    F.comps.push_back(subst(x, -x - y));
    F.comps.push_back(series_exp((x + y) * Rational(-1, 2)) * subst(y, -x - y));
    return F;
}

// ---------------------------------------------------------------------------
// Cofaces

// Strand j of the target is fed by group k when j ∈ groups[k]; the k-th
// component is evaluated at the sums of the grouped x's and copied to each
// strand of the group. Strands in no group get the trivial component.
inline LetterMap coface_substitution(const std::vector<std::vector<int>> &groups, const LieSpace &from,
                                     const LieSpace &to)
{
    if (static_cast<int>(groups.size()) != from.n) throw AlgebraError("grouping must have one group per strand");
    std::vector<int> seen(static_cast<std::size_t>(to.n), 0);
    LetterMap m(from.alphabet, to.alphabet, to.N);
    for (int k = 0; k < from.n; ++k) {
        if (groups[k].empty()) throw AlgebraError("empty group in coface");
        NCSeries sum = to.zero();
        for (int j : groups[k]) {
            if (j < 0 || j >= to.n || seen[j]++) throw AlgebraError("malformed grouping");
            sum += to.x(j);
        }
        m.set(from.alphabet->x(k), sum);
        m.set(from.alphabet->dx(k), de_rham(sum));
        m.set(from.alphabet->p(k), to.zero());
    }
    m.set(from.alphabet->t(), to.t());
    return m;
}

inline TDer tder_coface(const TDer &u, const std::vector<std::vector<int>> &groups, const LieSpace &from,
                        const LieSpace &to)
{
    LetterMap m = coface_substitution(groups, from, to);
    TDer r = tder_zero(to);
    for (int k = 0; k < from.n; ++k) {
        NCSeries c = hom_apply(m, u.comps[k].with_max_weight(to.N));
        for (int j : groups[k]) r.comps[j] = c;
    }
    return r;
}

inline TAutElem taut_coface(const TAutElem &g, const std::vector<std::vector<int>> &groups, const LieSpace &from,
                            const LieSpace &to)
{
    LetterMap m = coface_substitution(groups, from, to);
    TAutElem r = taut_identity(to);
    r.log.reset();
    for (int k = 0; k < from.n; ++k) {
        NCSeries c = hom_apply(m, g.comps[k].with_max_weight(to.N));
        for (int j : groups[k]) r.comps[j] = c;
    }
    return r;
}

// Φ^F = F_{1,23} F_{2,3} F_{1,2}⁻¹ F_{12,3}⁻¹ on three strands.
inline TAutElem phi_F(const TAutElem &F, const LieSpace &two, const LieSpace &three)
{
    auto f_1_23 = taut_coface(F, {{0}, {1, 2}}, two, three);
    auto f_2_3 = taut_coface(F, {{1}, {2}}, two, three);
    auto f_1_2 = taut_coface(F, {{0}, {1}}, two, three);
    auto f_12_3 = taut_coface(F, {{0, 1}, {2}}, two, three);
    TAutElem r = taut_compose(f_1_23, f_2_3, three);
    r = taut_compose(r, taut_invert(f_1_2, three), three);
    return taut_compose(r, taut_invert(f_12_3, three), three);
}

} // namespace lieworld
