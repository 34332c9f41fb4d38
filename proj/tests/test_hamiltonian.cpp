#include <gtest/gtest.h>

#include <lieworld/hamiltonian.hpp>

#include "support.hpp"

using namespace lieworld;
using lieworld::testing::letters_of;
using lieworld::testing::random_lie;

namespace {

NCSeries random_target(std::mt19937_64 &rng, const LieSpace &s)
{
    auto xs = letters_of(*s.alphabet, LetterKind::x);
    return s.sum_x() + random_lie(rng, s.alphabet, s.N, xs, 2, 4, 3);
}

} // namespace

TEST(MomentMaps, Residuals)
{
    auto s = LieSpace::make(2, 5);
    CyclicSeries K = pi_kks(s);
    EXPECT_TRUE(moment_residual(K, s.sum_x(), s).is_zero());
    EXPECT_FALSE(moment_residual(K, s.sum_x() * Rational(2), s).is_zero());

    CyclicSeries S = pi_symp(s);
    auto sol = solve_moment(S, s);
    ASSERT_TRUE(sol.mu);
    EXPECT_TRUE(moment_residual(S, *sol.mu, s).with_max_weight(s.N - 1).is_zero());
    EXPECT_EQ(sol.mu->min_weight(), 2);
    EXPECT_FALSE(moment_residual(S, s.x(0), s).is_zero());
    EXPECT_THROW(moment_residual(S, s.one(), s), AlgebraError);
}

TEST(MomentMaps, SolveKks)
{
    for (int n : {1, 2, 3}) {
        auto s = LieSpace::make(n, 5);
        auto sol = solve_moment(pi_kks(s), s);
        ASSERT_TRUE(sol.mu);
        EXPECT_EQ(*sol.mu, s.sum_x());
        EXPECT_EQ(sol.kernel_dim, 0u);
    }
}

TEST(MomentMaps, DegenerateHasNone)
{
    auto s = LieSpace::make(2, 4);
    CyclicSeries half = pair(s.x(0), lie_bracket(s.p(0), s.p(0))) * Rational(1, 2);
    auto sol = solve_moment(half, s);
    EXPECT_FALSE(sol.mu);
    EXPECT_EQ(sol.failing_weight, 2);
}

TEST(OmegaFromMoment, Examples)
{
    auto s = LieSpace::make(2, 5);
    EXPECT_EQ(omega_from_moment(lie_bracket(s.x(0), s.x(1)), s), pair(s.dx(0), s.dx(1)));
    EXPECT_TRUE(omega_from_moment(s.zero(), s).is_zero());
    EXPECT_THROW(omega_from_moment(s.x(0), s), AlgebraError);

    auto s4 = s.with_max_weight(4);
    NCSeries mt = bch(s4.x(0), s4.x(1)) - s4.x(0) - s4.x(1);
    CyclicSeries om = omega_from_moment(mt, s4);
    EXPECT_TRUE(de_rham(om).is_zero());
    EXPECT_EQ(iota_rho(om), -de_rham(mt));
}

TEST(OmegaFromMoment, RandomTargets)
{
    std::mt19937_64 rng(11);
    for (int n : {2, 3}) {
        auto s = LieSpace::make(n, 5);
        for (int k = 0; k < 4; ++k) {
            NCSeries mt = random_target(rng, s) - s.sum_x();
            CyclicSeries om = omega_from_moment(mt, s);
            EXPECT_TRUE(de_rham(om).is_zero());
            EXPECT_EQ(iota_rho(om), -de_rham(mt));
        }
    }
}

TEST(PoissonFromMoment, FixedPoint)
{
    auto s = LieSpace::make(2, 5);
    auto g = poisson_from_moment(pi_kks(s), s.sum_x(), s);
    EXPECT_TRUE(g.omega.is_zero());
    EXPECT_EQ(g.bivector.with_max_weight(s.N), pi_kks(s));
}

TEST(PoissonFromMoment, Residuals)
{
    auto s = LieSpace::make(2, 4);
    NCSeries eta = s.sum_x() + lie_bracket(s.x(0), s.x(1));
    auto g = poisson_from_moment(pi_kks(s), eta, s);
    EXPECT_TRUE(gauged_poisson_residual(g, s).is_zero());
    EXPECT_TRUE(gauged_moment_residual(g, eta, s).is_zero());
    EXPECT_EQ(g.omega, pair(s.dx(0), s.dx(1)).with_max_weight(5));

    auto s5 = LieSpace::make(2, 5);
    NCSeries b = bch(s5.x(0), s5.x(1));
    auto h = poisson_from_moment(pi_kks(s5), b, s5);
    EXPECT_TRUE(gauged_poisson_residual(h, s5).is_zero());
    EXPECT_TRUE(gauged_moment_residual(h, b, s5).is_zero());
}

TEST(PoissonFromMoment, DistinctTargetsAndUniqueness)
{
    std::mt19937_64 rng(5);
    auto s = LieSpace::make(2, 5);
    CyclicSeries K = pi_kks(s);
    std::vector<CyclicSeries> seen;
    for (int k = 0; k < 4; ++k) {
        NCSeries eta = random_target(rng, s);
        auto g = poisson_from_moment(K, eta, s);
        ASSERT_TRUE(gauged_moment_residual(g, eta, s).is_zero());
        for (const auto &o : seen) EXPECT_NE(o, g.bivector);
        seen.push_back(g.bivector);

        const LieSpace up = s.with_max_weight(s.N + 1);
        auto sol = solve_moment(g.bivector, up);
        ASSERT_TRUE(sol.mu);
        EXPECT_EQ(sol.mu->with_max_weight(s.N), eta);
        NCSeries bumped = eta + lie_bracket(s.x(0), lie_bracket(s.x(0), s.x(1)));
        EXPECT_FALSE(gauged_moment_residual(g, bumped, s).is_zero());
    }
}

TEST(Nondegeneracy, Report)
{
    auto s = LieSpace::make(2, 4);
    auto r = nondegeneracy_report(bivector_matrix(pi_symp(s), s));
    EXPECT_TRUE(r.constant_nondegenerate);
    EXPECT_TRUE(r.kernel_basis.empty());

    auto k = nondegeneracy_report(bivector_matrix(pi_kks(s), s));
    EXPECT_FALSE(k.constant_nondegenerate);
    EXPECT_EQ(k.kernel_basis.size(), 2u);

    NCSeries q = lie_bracket(s.x(0), s.x(1));
    EXPECT_TRUE(nondegeneracy_report(bivector_matrix(pi_symp(s), s), &q).quadratic_nondegenerate_on_quotient);
    NCSeries z = s.x(0) * s.x(0);
    EXPECT_FALSE(nondegeneracy_report(bivector_matrix(pi_symp(s), s), &z).quadratic_nondegenerate_on_quotient);
}

TEST(Automorphisms, ComposeInvert)
{
    auto s = LieSpace::make(2, 5);
    NCSeries x1 = s.x(0), x2 = s.x(1);
    Automorphism phi{{x1 + lie_bracket(x1, x2), x2 * Rational(2) - x1}};
    Automorphism psi = invert(phi, s);
    EXPECT_EQ(compose(psi, phi, s).images, identity_automorphism(s).images);
    EXPECT_EQ(compose(phi, psi, s).images, identity_automorphism(s).images);
    EXPECT_EQ(jacobian(identity_automorphism(s), s), s.identity());
}

TEST(Automorphisms, Pushforward)
{
    auto s = LieSpace::make(3, 5);
    NCSeries x1 = s.x(0), x2 = s.x(1), x3 = s.x(2);
    CyclicSeries K = pi_kks(s);
    Automorphism phi{{x1 + lie_bracket(x1, lie_bracket(x1, x2)), x2 * Rational(2) + x1 + lie_bracket(x3, x1), x3}};
    Automorphism psi{{x1 + lie_bracket(x2, x3), x2, x3 - x1}};
    CyclicSeries moved = pushforward(K, phi, s);
    const int below = s.N - 1;
    EXPECT_TRUE(poisson_residual(moved).with_max_weight(below).is_zero());
    EXPECT_TRUE(moment_residual(moved, apply(phi, s.sum_x(), s), s).with_max_weight(below).is_zero());
    EXPECT_TRUE((pushforward(moved, psi, s) - pushforward(K, compose(psi, phi, s), s)).with_max_weight(below).is_zero());
    EXPECT_TRUE((pushforward(moved, invert(phi, s), s) - K).with_max_weight(below).is_zero());
}

TEST(Automorphisms, MomentMapDoesNotFixBivector)
{
    auto s = LieSpace::make(3, 5);
    NCSeries x1 = s.x(0), x2 = s.x(1), x3 = s.x(2);
    NCSeries c = lie_bracket(x2, x3);
    Automorphism phi{{x1 + c, x2 - c, x3}};
    EXPECT_EQ(apply(phi, s.sum_x(), s), s.sum_x());
    CyclicSeries K = pi_kks(s);
    CyclicSeries diff = pushforward(K, phi, s) - K;
    EXPECT_TRUE(diff.homogeneous(3).is_zero());
    EXPECT_FALSE(diff.homogeneous(4).is_zero());
}

TEST(Weinstein, AlreadySplit)
{
    auto s = LieSpace::make(3, 5);
    CyclicSeries pi = pair(s.p(0), s.p(1)) + pair(s.x(2), lie_bracket(s.p(2), s.p(2))) * Rational(1, 2);
    auto r = weinstein_split(pi, s);
    EXPECT_EQ(r.symplectic_pairs, 1);
    EXPECT_EQ(r.bivector, pi);
    EXPECT_EQ(r.map.images, identity_automorphism(s).images);
}

TEST(Weinstein, LinearMix)
{
    auto s = LieSpace::make(2, 4);
    QMatrix A{{Rational(2), Rational(1)}, {Rational(-1), Rational(3)}};
    CyclicSeries mixed = pushforward(pi_symp(s), linear_automorphism(A, s), s);
    EXPECT_NE(mixed, pi_symp(s));
    auto r = weinstein_split(mixed, s);
    EXPECT_EQ(r.bivector, pi_symp(s));
}

TEST(Weinstein, CrossTermsRemoved)
{
    auto s = LieSpace::make(3, 4);
    NCSeries x1 = s.x(0), x2 = s.x(1), x3 = s.x(2);
    CyclicSeries pi = pair(s.p(0), s.p(1)) + pair(x3, lie_bracket(s.p(2), s.p(2))) * Rational(1, 2);
    Automorphism phi{{x1 + lie_bracket(x1, x3), x2 - x3, x3 + lie_bracket(x3, x2)}};
    CyclicSeries mixed = pushforward(pi, phi, s);
    SeriesMatrix m = bivector_matrix(mixed, s);
    EXPECT_FALSE(m(0, 2).homogeneous(1).is_zero() && m(1, 2).homogeneous(1).is_zero());

    auto r = weinstein_split(mixed, s);
    EXPECT_EQ(pushforward(mixed, r.map, s), r.bivector);
    EXPECT_EQ(r.symplectic_pairs, 1);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            if (i == 2 && j == 2) {
                EXPECT_TRUE(uses_only(r.matrix(i, j), {LetterKind::x}));
                for (const auto &kv : r.matrix(i, j).terms())
                    for (Letter l : kv.first) EXPECT_EQ(l, s.alphabet->x(2));
            } else {
                EXPECT_TRUE((r.matrix(i, j) - NCSeries::constant(s.alphabet, s.N, r.matrix(i, j).constant_term())).is_zero());
            }
        }
    EXPECT_TRUE(poisson_residual(r.bivector).with_max_weight(s.N - 1).is_zero());
}

TEST(Casimirs, Examples)
{
    auto s1 = LieSpace::make(1, 4);
    auto c = casimir_search(pi_kks(s1), 4, s1);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(span_rank({c[0], pair(s1.x(0), s1.x(0))}), 1u);

    auto s2 = LieSpace::make(2, 4);
    EXPECT_TRUE(casimir_search(pi_symp(s2), 4, s2).empty());
    for (const auto &f : casimir_search(pi_kks(s2), 4, s2)) EXPECT_TRUE(schouten(pi_kks(s2), f).is_zero());
}

TEST(FunctionSpaces, KernelLemma)
{
    for (int n : {1, 2}) {
        for (int w = 1; w <= 4; ++w) {
            auto s = LieSpace::make(n, w + 2);
            CyclicSeries K = pi_kks(s);
            for (int k = 0; k <= 2; ++k) {
                auto r = sharp_kernel(K, s, k, w);
                if (k == 1 && w == 2) {
                    ASSERT_EQ(r.kernel.size(), static_cast<std::size_t>(n));
                    std::vector<CyclicSeries> span = r.kernel;
                    for (int i = 0; i < n; ++i) span.push_back(pair(s.x(i), s.dx(i)));
                    EXPECT_EQ(span_rank(span), static_cast<std::size_t>(n));
                } else {
                    EXPECT_TRUE(r.kernel.empty()) << "n=" << n << " w=" << w << " k=" << k;
                }
            }
        }
    }
}

TEST(FunctionSpaces, SharpInjectiveOnTwoForms)
{
    auto s = LieSpace::make(2, 6);
    for (int w = 2; w <= 4; ++w) {
        EXPECT_TRUE(sharp_kernel(pi_kks(s), s, 2, w).kernel.empty());
        EXPECT_TRUE(sharp_kernel(pi_symp(s), s, 2, w).kernel.empty());
    }
}

TEST(FunctionSpaces, DeRhamAcyclic)
{
    auto s = LieSpace::make(2, 5);
    for (int w = 1; w <= 5; ++w)
        for (int k = 0; k <= 2; ++k) EXPECT_EQ(de_rham_cohomology(s, k, w), 0u) << "w=" << w << " k=" << k;
}

TEST(FunctionSpaces, TrivialOperations)
{
    auto s = LieSpace::make(2, 6);
    NCSeries rho = s.rho();
    CyclicSeries pi = pair(s.p(0), rho) + pair(lie_bracket(s.x(1), s.p(0)), rho);
    std::vector<CyclicSeries> fs{pair(s.x(0), s.x(0)), pair(s.x(0), s.x(1)), pair(s.x(1), lie_bracket(s.x(0), s.x(1)))};
    for (const auto &f : fs)
        for (const auto &g : fs) EXPECT_TRUE(poisson_bracket(pi, f, g).is_zero());
}
