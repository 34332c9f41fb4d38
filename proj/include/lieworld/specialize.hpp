#pragma once

// Numeric specialization of universal objects to matrix Lie algebras
// (𝔰𝔩(N), 𝔤𝔩(N) with the trace form). Odd letters are evaluated by
// polarization: the k odd letters of a word take k tangent vectors, summed
// with the sign of the assignment.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "hamiltonian.hpp"

namespace lieworld {

using Matrix = Eigen::MatrixXd;
using Point = std::vector<Matrix>; // one matrix per coordinate

struct MatrixLieContext {
    std::string name;
    int size = 0;     // matrices are size × size
    bool traceless = false;
    std::vector<Matrix> basis;
    Matrix form;      // t_{αβ} = tr(e_α e_β)
    Matrix form_inv;  // t^{αβ}
    std::vector<double> structure; // c_{αβ}^γ at (α·d + β)·d + γ

    int dim() const { return static_cast<int>(basis.size()); }
    double structure_constant(int a, int b, int c) const { return structure[(a * dim() + b) * dim() + c]; }
};

inline MatrixLieContext make_context(const std::string &name)
{
    MatrixLieContext ctx;
    ctx.name = name;
    if (name.size() != 3 || (name.rfind("sl", 0) != 0 && name.rfind("gl", 0) != 0) || name[2] < '2' || name[2] > '9')
        throw AlgebraError("unknown Lie algebra preset '" + name + "'");
    ctx.size = name[2] - '0';
    ctx.traceless = name[0] == 's';
    const int n = ctx.size;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j && ctx.traceless) continue;
            Matrix e = Matrix::Zero(n, n);
            e(i, j) = 1;
            ctx.basis.push_back(e);
        }
    if (ctx.traceless)
        for (int i = 0; i + 1 < n; ++i) {
            Matrix h = Matrix::Zero(n, n);
            h(i, i) = 1;
            h(i + 1, i + 1) = -1;
            ctx.basis.push_back(h);
        }
    const int d = ctx.dim();
    ctx.form.resize(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) ctx.form(a, b) = (ctx.basis[a] * ctx.basis[b]).trace();
    ctx.form_inv = ctx.form.inverse();
    ctx.structure.assign(static_cast<std::size_t>(d * d * d), 0.0);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            Matrix c = ctx.basis[a] * ctx.basis[b] - ctx.basis[b] * ctx.basis[a];
            for (int g = 0; g < d; ++g) {
                double s = 0;
                for (int k = 0; k < d; ++k) s += (c * ctx.basis[k]).trace() * ctx.form_inv(k, g);
                ctx.structure[(a * d + b) * d + g] = s;
            }
        }
    return ctx;
}

// Largest |⟨[e_a,e_b],e_c⟩ − ⟨e_a,[e_b,e_c]⟩|.
inline double invariance_error(const MatrixLieContext &ctx)
{
    double err = 0;
    for (const auto &a : ctx.basis)
        for (const auto &b : ctx.basis)
            for (const auto &c : ctx.basis) {
                double l = ((a * b - b * a) * c).trace(), r = (a * (b * c - c * b)).trace();
                err = std::max(err, std::abs(l - r));
            }
    return err;
}

inline double form_condition(const MatrixLieContext &ctx)
{
    Eigen::JacobiSVD<Matrix> svd(ctx.form);
    const auto &sv = svd.singularValues();
    return sv(0) / sv(sv.size() - 1);
}

// Orthogonal projection onto the algebra via t^{αβ}: Y ↦ Σ t^{αβ} tr(Y e_α) e_β.
inline Matrix project(const MatrixLieContext &ctx, const Matrix &y)
{
    Matrix r = Matrix::Zero(ctx.size, ctx.size);
    for (int a = 0; a < ctx.dim(); ++a) {
        double c = (y * ctx.basis[a]).trace();
        if (c == 0) continue;
        for (int b = 0; b < ctx.dim(); ++b) r += ctx.form_inv(a, b) * c * ctx.basis[b];
    }
    return r;
}

inline Matrix random_element(const MatrixLieContext &ctx, std::mt19937_64 &rng, double scale = 1.0)
{
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix r = Matrix::Zero(ctx.size, ctx.size);
    for (const auto &e : ctx.basis) r += g(rng) * e;
    return r * (scale / std::max(r.norm(), 1e-300));
}

inline Point random_point(const MatrixLieContext &ctx, int n, std::mt19937_64 &rng, double scale = 1.0)
{
    Point p;
    for (int i = 0; i < n; ++i) p.push_back(random_element(ctx, rng, scale));
    return p;
}

namespace detail {

inline int permutation_sign(const std::vector<int> &p)
{
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

inline bool is_odd_letter(const Alphabet &a, Letter l)
{
    return a.kind(l) == LetterKind::dx || a.kind(l) == LetterKind::p;
}

// Σ_σ sgn(σ) ∏ letters, with the j-th odd letter taking odd[σ(j)].
inline Matrix eval_word(const Alphabet &al, const Word &w, const Point &x, const std::vector<Point> &odd, int size)
{
    std::vector<int> positions;
    for (std::size_t q = 0; q < w.size(); ++q) {
        LetterKind k = al.kind(w[q]);
        if (k == LetterKind::t) throw AlgebraError("cannot evaluate the auxiliary letter t");
        if (is_odd_letter(al, w[q])) positions.push_back(static_cast<int>(q));
        else if (al.index(w[q]) >= static_cast<int>(x.size())) throw AlgebraError("point has too few coordinates");
    }
    if (positions.size() != odd.size()) throw AlgebraError("word needs one tangent vector per odd letter");
    std::vector<int> perm(positions.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    Matrix total = Matrix::Zero(size, size);
    do {
        Matrix m = Matrix::Identity(size, size);
        std::size_t j = 0;
        for (Letter l : w) {
            int idx = al.index(l);
            if (is_odd_letter(al, l)) {
                const Point &v = odd[perm[j++]];
                if (idx >= static_cast<int>(v.size())) throw AlgebraError("tangent vector has too few coordinates");
                m = m * v[idx];
            } else {
                m = m * x[idx];
            }
        }
        total += permutation_sign(perm) * m;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

} // namespace detail

// Substitute matrices into a series (U(L) acts through the matrix product).
inline Matrix eval_series(const MatrixLieContext &ctx, const NCSeries &s, const Point &x,
                          const std::vector<Point> &odd = {})
{
    Matrix r = Matrix::Zero(ctx.size, ctx.size);
    for (const auto &[w, c] : s.terms()) {
        std::size_t k = 0;
        for (Letter l : w) k += detail::is_odd_letter(*s.alphabet(), l);
        if (k != odd.size()) continue;
        r += c.get_d() * detail::eval_word(*s.alphabet(), w, x, odd, ctx.size);
    }
    return r;
}

inline Matrix eval_lie(const MatrixLieContext &ctx, const NCSeries &s, const Point &x)
{
    if (ctx.traceless)
        for (const auto &m : x)
            if (std::abs(m.trace()) > 1e-9 * std::max(1.0, m.norm())) throw AlgebraError("point is not in " + ctx.name);
    return eval_series(ctx, s, x);
}

struct ScaledValue {
    double value = 0;
    double scale = 0; // Σ |c_w| |term|
    double relative() const { return scale > 0 ? std::abs(value) / scale : std::abs(value); }
};

// Necklace ↦ trace of the evaluated word, polarized in the odd letters.
inline ScaledValue eval_function_scaled(const MatrixLieContext &ctx, const CyclicSeries &f, const Point &x,
                                       const std::vector<Point> &odd = {})
{
    ScaledValue r;
    for (const auto &[w, c] : f.terms()) {
        std::size_t k = 0;
        for (Letter l : w) k += detail::is_odd_letter(*f.alphabet(), l);
        if (k != odd.size()) continue;
        double v = c.get_d() * detail::eval_word(*f.alphabet(), w, x, odd, ctx.size).trace();
        r.value += v;
        r.scale += std::abs(v);
    }
    return r;
}

inline double eval_function(const MatrixLieContext &ctx, const CyclicSeries &f, const Point &x,
                            const std::vector<Point> &odd = {})
{
    return eval_function_scaled(ctx, f, x, odd).value;
}

// Ad_s(X)[y] = Σ c_w ad_{X_{w1}}⋯ad_{X_{wk}} y.
inline Matrix eval_ad(const MatrixLieContext &ctx, const NCSeries &s, const Point &x, const Matrix &y)
{
    (void)ctx;
    Matrix r = Matrix::Zero(y.rows(), y.cols());
    for (const auto &[w, c] : s.terms()) {
        Matrix acc = y;
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            const Matrix &m = x[s.alphabet()->index(*it)];
            acc = m * acc - acc * m;
        }
        r += c.get_d() * acc;
    }
    return r;
}

// {f, g}_Π at x by index contraction: with Π = Σ⟨∂_i, Ad_{Π_ij} ∂_j⟩ over the
// full matrix, {f, g} = −2 Σ ⟨∇_i f, Ad_{Π_ij}(x) ∇_j g⟩ where ∇_i f is the
// t^{αβ}-gradient of f in the i-th coordinate.
inline double eval_bracket(const MatrixLieContext &ctx, const CyclicSeries &pi, const CyclicSeries &f,
                           const CyclicSeries &g, const Point &x, const LieSpace &s)
{
    SeriesMatrix pm = bivector_matrix(pi, s);
    std::vector<Matrix> gf, gg;
    for (int i = 0; i < s.n; ++i) {
        gf.push_back(project(ctx, eval_series(ctx, cyclic_derivative(f, s.alphabet->x(i)), x)));
        gg.push_back(project(ctx, eval_series(ctx, cyclic_derivative(g, s.alphabet->x(i)), x)));
    }
    double r = 0;
    for (int i = 0; i < s.n; ++i)
        for (int j = 0; j < s.n; ++j)
            if (!pm(i, j).is_zero()) r += (gf[i] * eval_ad(ctx, pm(i, j), x, gg[j])).trace();
    return -2 * r;
}

// Relative error of bch truncated at N against log(exp(A) exp(B)).
inline double bch_logexp_error(const MatrixLieContext &ctx, const Matrix &a, const Matrix &b, int N)
{
    auto s = LieSpace::make(2, N);
    Matrix sym = eval_lie(ctx, bch(s.x(0), s.x(1)), {a, b});
    Matrix ea = a.exp(), eb = b.exp();
    Matrix num = (ea * eb).log();
    return (sym - num).norm() / std::max(num.norm(), 1e-300);
}

struct FaithfulnessReport {
    std::optional<int> first_nonzero; // smallest N with a nonzero specialization on 𝔰𝔩(N)
    std::vector<std::pair<int, double>> largest; // (N, largest |value| over samples)
};

// Random evaluations on 𝔰𝔩(2..n_max). A zero result is exhaustion, not a
// proof of vanishing.
inline FaithfulnessReport faithfulness_probe(const CyclicSeries &obj, int n_max, std::uint64_t seed = 1,
                                             int samples = 8)
{
    if (obj.is_zero()) throw AlgebraError("object is zero symbolically");
    const Alphabet &al = *obj.alphabet();
    int coords = al.coordinates();
    std::size_t odd_count = 0;
    for (const auto &kv : obj.terms()) {
        std::size_t k = 0;
        for (Letter l : kv.first) k += detail::is_odd_letter(al, l);
        odd_count = std::max(odd_count, k);
    }
    std::mt19937_64 rng(seed);
    FaithfulnessReport rep;
    for (int n = 2; n <= n_max; ++n) {
        auto ctx = make_context("sl" + std::to_string(n));
        double best = 0;
        for (int k = 0; k < samples; ++k) {
            Point x = random_point(ctx, coords, rng);
            for (std::size_t deg = 0; deg <= odd_count; ++deg) {
                std::vector<Point> odd;
                for (std::size_t j = 0; j < deg; ++j) odd.push_back(random_point(ctx, coords, rng));
                best = std::max(best, std::abs(eval_function(ctx, obj, x, odd)));
            }
        }
        rep.largest.emplace_back(n, best);
        if (best >= 1e-6) {
            rep.first_nonzero = n;
            break;
        }
    }
    return rep;
}

inline FaithfulnessReport faithfulness_probe(const NCSeries &obj, int n_max, std::uint64_t seed = 1, int samples = 8)
{
    if (obj.is_zero()) throw AlgebraError("object is zero symbolically");
    if (!uses_only(obj, {LetterKind::x})) throw AlgebraError("Lie series probe expects x letters only");
    std::mt19937_64 rng(seed);
    FaithfulnessReport rep;
    for (int n = 2; n <= n_max; ++n) {
        auto ctx = make_context("sl" + std::to_string(n));
        double best = 0;
        for (int k = 0; k < samples; ++k)
            best = std::max(best, eval_lie(ctx, obj, random_point(ctx, obj.alphabet()->coordinates(), rng)).norm());
        rep.largest.emplace_back(n, best);
        if (best >= 1e-6) {
            rep.first_nonzero = n;
            break;
        }
    }
    return rep;
}

} // namespace lieworld
