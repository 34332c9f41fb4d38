#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "series.hpp"

namespace lieworld {

// z1…zk ↦ (−1)^k zk…z1, extended linearly.
inline NCSeries antipode(const NCSeries &a)
{
    NCSeries r(a.alphabet(), a.max_weight());
    for (const auto &[w, c] : a.terms()) {
        Word rev(w.rbegin(), w.rend());
        r.add_term(rev, (w.size() % 2) ? Rational(-c) : c);
    }
    return r;
}

// Graded commutator ab − (−1)^{|a||b|} ba, computed termwise.
inline NCSeries lie_bracket(const NCSeries &a, const NCSeries &b)
{
    a.check_compatible(b);
    const Alphabet &al = *a.alphabet();
    NCSeries r(a.alphabet(), a.max_weight());
    for (const auto &[u, cu] : a.terms()) {
        int pu = word_parity(al, u);
        int wu = word_weight(al, u);
        for (const auto &[v, cv] : b.terms()) {
            if (wu + word_weight(al, v) > r.max_weight()) continue;
            Rational c = cu * cv;
            r.add_term(concat(u, v), c);
            r.add_term(concat(v, u), (pu && word_parity(al, v)) ? c : Rational(-c));
        }
    }
    return r;
}

// Ad_pi(b): the algebra map U(L) → End(L), z1…zk ↦ ad_{z1}∘…∘ad_{zk}.
inline NCSeries ad_rep(const NCSeries &pi, const NCSeries &b)
{
    pi.check_compatible(b);
    NCSeries r(b.alphabet(), b.max_weight());
    for (const auto &[w, c] : pi.terms()) {
        NCSeries acc = b;
        for (auto it = w.rbegin(); it != w.rend() && !acc.is_zero(); ++it) {
            acc = lie_bracket(NCSeries::letter(b.alphabet(), b.max_weight(), *it), acc);
        }
        r += acc * c;
    }
    return r;
}

inline NCSeries series_exp(const NCSeries &a)
{
    if (sgn(a.constant_term()) != 0) throw AlgebraError("exp: nonzero constant term");
    NCSeries r = NCSeries::one(a.alphabet(), a.max_weight());
    NCSeries term = r;
    for (int k = 1; k <= a.max_weight(); ++k) {
        term = term * a * Rational(1, k);
        if (term.is_zero()) break;
        r += term;
    }
    return r;
}

inline NCSeries series_log(const NCSeries &g)
{
    if (g.constant_term() != 1) throw AlgebraError("log: constant term must be 1");
    NCSeries z = g.without_constant();
    NCSeries r(g.alphabet(), g.max_weight());
    NCSeries zk = z;
    for (int k = 1; k <= g.max_weight() && !zk.is_zero(); ++k) {
        r += zk * Rational((k % 2) ? 1 : -1, k);
        zk = zk * z;
    }
    return r;
}

// log(e^a e^b), truncated.
inline NCSeries bch(const NCSeries &a, const NCSeries &b)
{
    if (sgn(a.constant_term()) != 0 || sgn(b.constant_term()) != 0)
        throw AlgebraError("bch: nonzero constant term");
    return series_log(series_exp(a) * series_exp(b));
}

// Letter images of an algebra map or derivation. Letters without an entry
// are fixed (homomorphism) or sent to zero (derivation).
class LetterMap {
public:
    LetterMap(AlphabetPtr source, AlphabetPtr target, int max_weight)
        : source_(std::move(source)), target_(std::move(target)), n_(max_weight),
          images_(source_->size())
    {
    }
    LetterMap(AlphabetPtr alphabet, int max_weight) : LetterMap(alphabet, alphabet, max_weight) {}

    LetterMap &set(Letter l, NCSeries image)
    {
        if (!same_target(image)) throw AlgebraError("letter image over the wrong alphabet");
        images_.at(l) = image.with_max_weight(n_);
        return *this;
    }
    const std::optional<NCSeries> &image(Letter l) const { return images_.at(l); }
    const AlphabetPtr &source() const { return source_; }
    const AlphabetPtr &target() const { return target_; }
    int max_weight() const { return n_; }

private:
    bool same_target(const NCSeries &s) const
    {
        return s.alphabet() == target_ || *s.alphabet() == *target_;
    }

    AlphabetPtr source_, target_;
    int n_;
    std::vector<std::optional<NCSeries>> images_;
};

namespace detail {
inline void check_parity(const NCSeries &image, int expected)
{
    const Alphabet &al = *image.alphabet();
    for (const auto &kv : image.terms()) {
        if (word_parity(al, kv.first) != expected) throw AlgebraError("parity mismatch in letter image");
    }
}
} // namespace detail

// Unique algebra-map extension of the letter images.
inline NCSeries hom_apply(const LetterMap &m, const NCSeries &s)
{
    if (!(*s.alphabet() == *m.source())) throw AlgebraError("alphabet mismatch");
    const int n = m.max_weight();
    const Alphabet &src = *m.source();
    std::vector<NCSeries> img;
    img.reserve(src.size());
    for (std::size_t l = 0; l < src.size(); ++l) {
        const auto &im = m.image(static_cast<Letter>(l));
        if (im) {
            detail::check_parity(*im, src[static_cast<Letter>(l)].parity());
            img.push_back(*im);
        } else {
            if (!(*m.source() == *m.target())) throw AlgebraError("missing image for letter " + src[l].name);
            img.push_back(NCSeries::letter(m.target(), n, static_cast<Letter>(l)));
        }
    }
    NCSeries r(m.target(), n);
    for (const auto &[w, c] : s.terms()) {
        NCSeries acc = NCSeries::constant(m.target(), n, c);
        for (Letter l : w) {
            acc = acc * img[l];
            if (acc.is_zero()) break;
        }
        r += acc;
    }
    return r;
}

// Unique graded-Leibniz extension: on a word, sum over letters with sign
// (−1)^{parity · degree of the prefix}.
inline NCSeries der_apply(const LetterMap &m, int parity, const NCSeries &s)
{
    if (!(*s.alphabet() == *m.source()) || !(*m.source() == *m.target()))
        throw AlgebraError("alphabet mismatch");
    const Alphabet &al = *m.source();
    const int n = m.max_weight();
    for (std::size_t l = 0; l < al.size(); ++l) {
        const auto &im = m.image(static_cast<Letter>(l));
        if (im) detail::check_parity(*im, (al[static_cast<Letter>(l)].parity() + parity) % 2);
    }
    NCSeries r(m.target(), n);
    for (const auto &[w, c] : s.terms()) {
        int prefix_degree = 0;
        for (std::size_t k = 0; k < w.size(); ++k) {
            const auto &im = m.image(w[k]);
            if (im && !im->is_zero()) {
                Word pre(w.begin(), w.begin() + static_cast<long>(k));
                Word post(w.begin() + static_cast<long>(k) + 1, w.end());
                Rational sc = (parity && (prefix_degree % 2)) ? Rational(-c) : c;
                r += NCSeries::monomial(m.target(), n, pre, sc) * *im * NCSeries::monomial(m.target(), n, post);
            }
            prefix_degree += al[w[k]].degree;
        }
    }
    return r;
}

// Left-normed bracketing θ(z1…zk) = [[…[z1,z2],…],zk].
inline NCSeries left_normed(const AlphabetPtr &a, int n, const Word &w)
{
    if (w.empty()) return NCSeries(a, n);
    NCSeries acc = NCSeries::letter(a, n, w[0]);
    for (std::size_t i = 1; i < w.size(); ++i) acc = lie_bracket(acc, NCSeries::letter(a, n, w[i]));
    return acc;
}

struct DynkinResult {
    NCSeries projection;
    bool was_lie = false;
};

// θ applied per weight-d component and divided by d. Fixed points are
// exactly the Lie elements.
inline DynkinResult dynkin_project(const NCSeries &a)
{
    if (sgn(a.constant_term()) != 0) throw AlgebraError("dynkin_project: nonzero constant term");
    NCSeries r(a.alphabet(), a.max_weight());
    for (const auto &[w, c] : a.terms()) {
        r += left_normed(a.alphabet(), a.max_weight(), w) * (c / Rational(static_cast<long>(w.size())));
    }
    bool lie = (r == a);
    return {std::move(r), lie};
}

inline bool is_lie(const NCSeries &a) { return sgn(a.constant_term()) == 0 && dynkin_project(a).was_lie; }

// Lyndon words of the given length over an ascending list of letters (Duval).
inline std::vector<Word> lyndon_words(const std::vector<Letter> &letters, int length)
{
    std::vector<Word> out;
    const int k = static_cast<int>(letters.size());
    if (k == 0 || length <= 0) return out;
    std::vector<int> w{-1};
    while (!w.empty()) {
        ++w.back();
        if (static_cast<int>(w.size()) == length) {
            Word word;
            for (int i : w) word.push_back(letters[static_cast<std::size_t>(i)]);
            out.push_back(word);
        }
        std::size_t m = w.size();
        while (static_cast<int>(w.size()) < length) w.push_back(w[w.size() - m]);
        while (!w.empty() && w.back() == k - 1) w.pop_back();
    }
    return out;
}

inline bool is_lyndon(const Word &w)
{
    for (std::size_t i = 1; i < w.size(); ++i) {
        Word rot(w.begin() + static_cast<long>(i), w.end());
        rot.insert(rot.end(), w.begin(), w.begin() + static_cast<long>(i));
        if (!(w < rot)) return false;
    }
    return !w.empty();
}

// Standard bracketing P_w: w = uv with v the longest proper Lyndon suffix.
inline NCSeries lyndon_bracket(const AlphabetPtr &a, int n, const Word &w)
{
    if (w.size() == 1) return NCSeries::letter(a, n, w[0]);
    for (std::size_t i = 1; i < w.size(); ++i) {
        Word v(w.begin() + static_cast<long>(i), w.end());
        if (is_lyndon(v)) {
            Word u(w.begin(), w.begin() + static_cast<long>(i));
            return lie_bracket(lyndon_bracket(a, n, u), lyndon_bracket(a, n, v));
        }
    }
    throw AlgebraError("not a Lyndon word");
}

// Basis of the weight-k part of the free Lie algebra on the given even letters.
inline std::vector<NCSeries> lie_basis(const AlphabetPtr &a, int n, const std::vector<Letter> &letters, int k)
{
    std::vector<NCSeries> out;
    for (const Word &w : lyndon_words(letters, k)) out.push_back(lyndon_bracket(a, n, w));
    return out;
}

struct LyndonTerm {
    Word word;
    Rational coeff;
};

// Expansion of a Lie series in the Lyndon basis, or nullopt when the input is
// not triangular-decomposable (not Lie, or odd letters spoil triangularity).
inline std::optional<std::vector<LyndonTerm>> lyndon_decompose(const NCSeries &s)
{
    std::vector<LyndonTerm> out;
    NCSeries rest = s;
    if (sgn(rest.constant_term()) != 0) return std::nullopt;
    while (!rest.is_zero()) {
        const auto &[w, c] = *rest.terms().begin();
        if (!is_lyndon(w)) return std::nullopt;
        NCSeries pw = lyndon_bracket(s.alphabet(), s.max_weight(), w);
        Rational lead = pw.coefficient(w);
        if (sgn(lead) == 0) return std::nullopt;
        Rational k = c / lead;
        out.push_back({w, k});
        rest -= pw * k;
    }
    return out;
}

// Letters of the alphabet's x block.
inline std::vector<Letter> x_letters(const Alphabet &a)
{
    std::vector<Letter> v;
    for (int i = 0; i < a.coordinates(); ++i) v.push_back(a.x(i));
    return v;
}

inline NCSeries sum_x(const AlphabetPtr &a, int n)
{
    NCSeries s(a, n);
    for (int i = 0; i < a->coordinates(); ++i) s += NCSeries::letter(a, n, a->x(i));
    return s;
}

} // namespace lieworld
