#pragma once

// The ν-twist T = ⟨dx, ν(ad_x) dx⟩, the dynamical Yang–Baxter identity and
// the fusion two form σ.

#include "hamiltonian.hpp"

namespace lieworld {

// Bernoulli numbers B_0..B_n (B_1 = +1/2), Akiyama–Tanigawa.
inline std::vector<Rational> bernoulli_numbers(int n)
{
    std::vector<Rational> b, a(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
        a[m] = Rational(1, m + 1);
        for (int j = m; j >= 1; --j) a[j - 1] = j * (a[j - 1] - a[j]);
        b.push_back(a[0]);
    }
    return b;
}

// ν(z) = 1/z − ½coth(z/2) = −Σ_{k≥1} B_{2k} z^{2k−1}/(2k)!.
struct NuSeries {
    std::vector<Rational> coeffs; // coeffs[k] multiplies z^k

    Rational coefficient(int k) const
    {
        return k >= 0 && k < static_cast<int>(coeffs.size()) ? coeffs[k] : Rational(0);
    }
    int max_power() const { return static_cast<int>(coeffs.size()) - 1; }
};

inline NuSeries nu_series(int max_power)
{
    if (max_power < 0) return {};
    NuSeries nu{std::vector<Rational>(static_cast<std::size_t>(max_power) + 1)};
    auto b = bernoulli_numbers(max_power + 1);
    Rational fact = 1;
    for (int m = 1; m <= max_power + 1; ++m) {
        fact *= m;
        if (m % 2 == 0 && m - 1 <= max_power) nu.coeffs[m - 1] = -b[m] / fact;
    }
    return nu;
}

// Σ_k c_k ⟨dx, ad_x^k dx⟩ on 𝕃_1.
inline CyclicSeries t_form(const LieSpace &one, const NuSeries &nu)
{
    if (one.n != 1) throw AlgebraError("T lives on the one-variable Lie space");
    CyclicSeries T = one.czero();
    NCSeries v = one.dx(0);
    for (int k = 1; k <= nu.max_power() && k + 2 <= one.N; ++k) {
        v = lie_bracket(one.x(0), v);
        if (sgn(nu.coefficient(k)) != 0) T += pair(one.dx(0), v) * nu.coefficient(k);
    }
    return T;
}

inline CyclicSeries t_form(const LieSpace &one) { return t_form(one, nu_series(one.N)); }

inline CyclicSeries cartan_three_form(const LieSpace &s)
{
    CyclicSeries r = s.czero();
    for (int i = 0; i < s.n; ++i) r += pair(s.dx(i), lie_bracket(s.dx(i), s.dx(i)));
    return r;
}

// −2dT + ½[T, T]_Π + (1/6)⟨dx, [dx, dx]⟩ with Π = Π_KKS. The ½ and the sign
// of the cubic term come from the normalization of Π_KKS and the left action
// of d.
inline CyclicSeries dybe_residual(const CyclicSeries &T, const LieSpace &one)
{
    return de_rham(T) * Rational(-2) + form_bracket_pi(pi_kks(one), T, T) * Rational(1, 2) +
           cartan_three_form(one) * Rational(1, 6);
}

inline CyclicSeries dybe_residual(const LieSpace &one) { return dybe_residual(t_form(one), one); }

// Substitute x ↦ image, dx ↦ dimage, p ↦ 0 into a function on 𝕃_1.
inline CyclicSeries pull_one(const CyclicSeries &f, const LieSpace &one, const LieSpace &to, const NCSeries &image,
                             const NCSeries &dimage)
{
    LetterMap m(one.alphabet, to.alphabet, to.N);
    m.set(one.alphabet->x(0), image);
    m.set(one.alphabet->dx(0), dimage);
    m.set(one.alphabet->p(0), to.zero());
    m.set(one.alphabet->t(), to.t());
    return cyclic_hom_apply(m, f.with_max_weight(to.N));
}

inline CyclicSeries pull_one(const CyclicSeries &f, const LieSpace &one, const LieSpace &to, const NCSeries &image)
{
    return pull_one(f, one, to, image, de_rham(image));
}

// σ = ½(T_12 − T_1 − T_2) − ½⟨dx_1, dx_2⟩ on 𝕃_2. T_12 evaluates T at
// bch(x_1, x_2) against the diagonal action, so its dx slots carry dx_1 + dx_2.
inline CyclicSeries fusion_sigma(const LieSpace &two, const NuSeries &nu)
{
    if (two.n != 2) throw AlgebraError("fusion lives on the two-variable Lie space");
    auto one = LieSpace::make(1, two.N);
    CyclicSeries T = t_form(one, nu);
    NCSeries b = bch(two.x(0), two.x(1));
    CyclicSeries t12 = pull_one(T, one, two, b, two.dx(0) + two.dx(1));
    CyclicSeries t1 = pull_one(T, one, two, two.x(0));
    CyclicSeries t2 = pull_one(T, one, two, two.x(1));
    return (t12 - t1 - t2) * Rational(1, 2) - pair(two.dx(0), two.dx(1)) * Rational(1, 2);
}

inline CyclicSeries fusion_sigma(const LieSpace &two) { return fusion_sigma(two, nu_series(two.N)); }

// dσ + ½[σ, σ]_Π.
inline CyclicSeries maurer_cartan_residual(const CyclicSeries &pi, const CyclicSeries &sigma)
{
    return de_rham(sigma) + form_bracket_pi(pi, sigma, sigma) * Rational(1, 2);
}

struct FusionStructure {
    CyclicSeries sigma;
    CyclicSeries bivector; // Π − ΠσΠ
    CyclicSeries omega;    // the closed form with Π^ω = Π − ΠσΠ
};

inline FusionStructure fusion_structure(const LieSpace &two)
{
    CyclicSeries sigma = fusion_sigma(two);
    SeriesMatrix pm = bivector_matrix(pi_kks(two), two);
    SeriesMatrix sm = two_form_matrix(sigma, two);
    return {sigma, matrix_bivector(sigma_gauge(pm, sm), two), matrix_two_form(sigma_to_omega(pm, sm), two)};
}

} // namespace lieworld
