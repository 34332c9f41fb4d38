#pragma once

// Functions on a Lie space: the quotient A/[A,A] of the free algebra by
// graded commutators, stored as sign-normalized necklaces.

#include <optional>
#include <utility>

#include "lie.hpp"

namespace lieworld {

struct NormalNecklace {
    Word word;
    int sign = 1;
};

// Minimal rotation of w under WordLess. Rotating uv ↦ vu costs
// (−1)^{|u||v|}; returns nullopt when the class is zero (some rotation maps
// the word to itself with sign −1).
inline std::optional<NormalNecklace> normalize_necklace(const Alphabet &a, const Word &w)
{
    const std::size_t L = w.size();
    if (L == 0) return NormalNecklace{w, 1};
    std::vector<int> prefix_degree(L + 1, 0);
    for (std::size_t i = 0; i < L; ++i) prefix_degree[i + 1] = prefix_degree[i] + a[w[i]].degree;
    const int total = prefix_degree[L];
    std::optional<NormalNecklace> best;
    for (std::size_t r = 0; r < L; ++r) {
        Word rot(w.begin() + static_cast<long>(r), w.end());
        rot.insert(rot.end(), w.begin(), w.begin() + static_cast<long>(r));
        int du = prefix_degree[r];
        int sign = ((du % 2) && ((total - du) % 2)) ? -1 : 1;
        if (!best || rot < best->word) {
            best = NormalNecklace{std::move(rot), sign};
        } else if (rot == best->word && sign != best->sign) {
            return std::nullopt;
        }
    }
    return best;
}

class CyclicSeries {
public:
    using Terms = std::map<Word, Rational, WordLess>;

    CyclicSeries() = default;
    CyclicSeries(AlphabetPtr alphabet, int max_weight) : alpha_(std::move(alphabet)), max_weight_(max_weight)
    {
        if (!alpha_) throw AlgebraError("series without alphabet");
    }

    const AlphabetPtr &alphabet() const { return alpha_; }
    int max_weight() const { return max_weight_; }
    const Terms &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    // Adds c·[w] for an arbitrary (not necessarily canonical) word.
    void add_word(const Word &w, const Rational &c)
    {
        if (sgn(c) == 0 || word_weight(*alpha_, w) > max_weight_) return;
        auto nn = normalize_necklace(*alpha_, w);
        if (!nn) return;
        Rational v = nn->sign > 0 ? c : Rational(-c);
        auto [it, fresh] = terms_.try_emplace(nn->word, v);
        if (!fresh) {
            it->second += v;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }
    Rational coefficient(const Word &w) const
    {
        auto nn = normalize_necklace(*alpha_, w);
        if (!nn) return 0;
        auto it = terms_.find(nn->word);
        if (it == terms_.end()) return 0;
        return nn->sign > 0 ? it->second : Rational(-it->second);
    }

    CyclicSeries &operator+=(const CyclicSeries &o)
    {
        check_compatible(o);
        for (const auto &[w, c] : o.terms_) add_canonical(w, c);
        return *this;
    }
    CyclicSeries &operator-=(const CyclicSeries &o)
    {
        check_compatible(o);
        for (const auto &[w, c] : o.terms_) add_canonical(w, -c);
        return *this;
    }
    CyclicSeries &operator*=(const Rational &c)
    {
        if (sgn(c) == 0) terms_.clear();
        for (auto &kv : terms_) kv.second *= c;
        return *this;
    }
    friend CyclicSeries operator+(CyclicSeries a, const CyclicSeries &b) { return a += b; }
    friend CyclicSeries operator-(CyclicSeries a, const CyclicSeries &b) { return a -= b; }
    friend CyclicSeries operator-(CyclicSeries a) { return a *= Rational(-1); }
    friend CyclicSeries operator*(CyclicSeries a, const Rational &c) { return a *= c; }
    friend CyclicSeries operator*(const Rational &c, CyclicSeries a) { return a *= c; }
    friend bool operator==(const CyclicSeries &a, const CyclicSeries &b)
    {
        return a.max_weight_ == b.max_weight_ && a.same_alphabet(b) && a.terms_ == b.terms_;
    }
    friend bool operator!=(const CyclicSeries &a, const CyclicSeries &b) { return !(a == b); }

    // The canonical words as an element of the free algebra.
    NCSeries representative() const
    {
        NCSeries s(alpha_, max_weight_);
        for (const auto &[w, c] : terms_) s.add_term(w, c);
        return s;
    }

    CyclicSeries homogeneous(int weight) const
    {
        CyclicSeries r(alpha_, max_weight_);
        for (const auto &[w, c] : terms_)
            if (word_weight(*alpha_, w) == weight) r.terms_.emplace(w, c);
        return r;
    }
    CyclicSeries truncated(int n) const
    {
        CyclicSeries r(alpha_, std::min(n, max_weight_));
        for (const auto &[w, c] : terms_)
            if (word_weight(*alpha_, w) <= r.max_weight_) r.terms_.emplace(w, c);
        return r;
    }
    CyclicSeries with_max_weight(int n) const
    {
        CyclicSeries r(alpha_, n);
        for (const auto &[w, c] : terms_)
            if (word_weight(*alpha_, w) <= n) r.terms_.emplace(w, c);
        return r;
    }
    // Part with the given number of letters of the given kind.
    CyclicSeries kind_count_part(LetterKind k, int count) const
    {
        CyclicSeries r(alpha_, max_weight_);
        for (const auto &[w, c] : terms_)
            if (count_kind(*alpha_, w, k) == count) r.terms_.emplace(w, c);
        return r;
    }
    CyclicSeries form_degree_part(int k) const { return kind_count_part(LetterKind::dx, k); }
    CyclicSeries polyvector_degree_part(int k) const { return kind_count_part(LetterKind::p, k); }

    static int count_kind(const Alphabet &a, const Word &w, LetterKind k)
    {
        int c = 0;
        for (Letter l : w)
            if (a.kind(l) == k) ++c;
        return c;
    }

    bool same_alphabet(const CyclicSeries &o) const
    {
        return alpha_ == o.alpha_ || (alpha_ && o.alpha_ && *alpha_ == *o.alpha_);
    }
    void check_compatible(const CyclicSeries &o) const
    {
        if (!same_alphabet(o)) throw AlgebraError("alphabet mismatch");
        if (max_weight_ != o.max_weight_) throw AlgebraError("truncation order mismatch");
    }

private:
    void add_canonical(const Word &w, const Rational &c)
    {
        auto [it, fresh] = terms_.try_emplace(w, c);
        if (!fresh) {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    AlphabetPtr alpha_;
    int max_weight_ = 0;
    Terms terms_;
};

inline CyclicSeries project_cyclic(const NCSeries &s)
{
    CyclicSeries r(s.alphabet(), s.max_weight());
    for (const auto &[w, c] : s.terms()) r.add_word(w, c);
    return r;
}

// ⟨a,b⟩ = class of ab.
inline CyclicSeries pair(const NCSeries &a, const NCSeries &b) { return project_cyclic(a * b); }

// Left cyclic derivative: an occurrence w = u z v contributes
// (−1)^{|u|(|z|+|v|)} v u (rotate z to the front, then delete it).
inline NCSeries cyclic_derivative(const CyclicSeries &f, Letter z)
{
    const Alphabet &a = *f.alphabet();
    NCSeries r(f.alphabet(), f.max_weight());
    for (const auto &[w, c] : f.terms()) {
        int total = word_degree(a, w);
        int du = 0;
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (w[k] == z) {
                int rest = total - du;
                Word vu(w.begin() + static_cast<long>(k) + 1, w.end());
                vu.insert(vu.end(), w.begin(), w.begin() + static_cast<long>(k));
                r.add_term(vu, ((du % 2) && (rest % 2)) ? Rational(-c) : c);
            }
            du += a[w[k]].degree;
        }
    }
    return r;
}

// A derivation of the free algebra descends to functions.
inline CyclicSeries cyclic_der_apply(const LetterMap &m, int parity, const CyclicSeries &f)
{
    return project_cyclic(der_apply(m, parity, f.representative()));
}

inline CyclicSeries cyclic_hom_apply(const LetterMap &m, const CyclicSeries &f)
{
    return project_cyclic(hom_apply(m, f.representative()));
}

} // namespace lieworld
