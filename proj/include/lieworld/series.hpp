#pragma once

// Truncated formal series over a graded alphabet with exact rational
// coefficients. Elements of the free associative algebra U(L) on the letters
// x_i, dx_i, p_i (= ∂_i) and t all live here; Lie elements are kept in their
// associative expansion.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace lieworld {

using Rational = mpq_class;
using Letter = std::uint8_t;
using Word = std::vector<Letter>;

class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Generator {
    std::string name;
    int degree = 0; // cohomological degree
    int weight = 1; // truncation grading
    int parity() const { return ((degree % 2) + 2) % 2; }
};

enum class LetterKind { x, dx, p, t };

// Ordered list of generators. The standard alphabet of a Lie space with n
// coordinates is x1..xn, dx1..dxn, p1..pn, t in that order.
class Alphabet {
public:
    explicit Alphabet(std::vector<Generator> gens) : gens_(std::move(gens))
    {
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (gens_[i].name == gens_[j].name) {
                    throw AlgebraError("duplicate generator name '" + gens_[i].name + "'");
                }
            }
            if (gens_[i].weight <= 0) {
                throw AlgebraError("generator weight must be positive");
            }
        }
        if (gens_.size() > 200) {
            throw AlgebraError("alphabet too large");
        }
    }

    static std::shared_ptr<const Alphabet> lie_space(int n)
    {
        if (n <= 0) {
            throw AlgebraError("a Lie space needs at least one coordinate");
        }
        std::vector<Generator> g;
        for (int i = 1; i <= n; ++i) g.push_back({"x" + std::to_string(i), 0, 1});
        for (int i = 1; i <= n; ++i) g.push_back({"dx" + std::to_string(i), 1, 1});
        for (int i = 1; i <= n; ++i) g.push_back({"p" + std::to_string(i), 1, 1});
        g.push_back({"t", 0, 1});
        auto a = std::make_shared<Alphabet>(std::move(g));
        a->n_ = n;
        return a;
    }

    std::size_t size() const { return gens_.size(); }
    const Generator &operator[](Letter l) const { return gens_.at(l); }
    const std::vector<Generator> &generators() const { return gens_; }

    // Number of coordinates when built by lie_space(), 0 otherwise.
    int coordinates() const { return n_; }

    Letter x(int i) const { return checked(i, 0); }
    Letter dx(int i) const { return checked(i, n_); }
    Letter p(int i) const { return checked(i, 2 * n_); }
    Letter t() const
    {
        require_space();
        return static_cast<Letter>(3 * n_);
    }

    LetterKind kind(Letter l) const
    {
        require_space();
        if (l < n_) return LetterKind::x;
        if (l < 2 * n_) return LetterKind::dx;
        if (l < 3 * n_) return LetterKind::p;
        return LetterKind::t;
    }
    // 0-based coordinate index of an x, dx or p letter.
    int index(Letter l) const
    {
        require_space();
        return l % n_;
    }

    std::optional<Letter> find(const std::string &name) const
    {
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i].name == name) return static_cast<Letter>(i);
        }
        return std::nullopt;
    }

    bool operator==(const Alphabet &o) const
    {
        if (gens_.size() != o.gens_.size()) return false;
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i].name != o.gens_[i].name || gens_[i].degree != o.gens_[i].degree
                || gens_[i].weight != o.gens_[i].weight)
                return false;
        }
        return true;
    }

private:
    Letter checked(int i, int offset) const
    {
        require_space();
        if (i < 0 || i >= n_) throw AlgebraError("coordinate index out of range");
        return static_cast<Letter>(offset + i);
    }
    void require_space() const
    {
        if (n_ == 0) throw AlgebraError("alphabet is not a Lie-space alphabet");
    }

    std::vector<Generator> gens_;
    int n_ = 0;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

inline int word_weight(const Alphabet &a, const Word &w)
{
    int s = 0;
    for (Letter l : w) s += a[l].weight;
    return s;
}

inline int word_degree(const Alphabet &a, const Word &w)
{
    int s = 0;
    for (Letter l : w) s += a[l].degree;
    return s;
}

inline int word_parity(const Alphabet &a, const Word &w) { return ((word_degree(a, w) % 2) + 2) % 2; }

inline Word concat(const Word &a, const Word &b)
{
    Word r;
    r.reserve(a.size() + b.size());
    r.insert(r.end(), a.begin(), a.end());
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

// Graded lexicographic order: shorter words first, then letter indices.
struct WordLess {
    bool operator()(const Word &a, const Word &b) const
    {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

inline std::string rational_string(const Rational &q) { return q.get_str(); }

class NCSeries {
public:
    using Terms = std::map<Word, Rational, WordLess>;

    NCSeries() = default;
    NCSeries(AlphabetPtr alphabet, int max_weight) : alpha_(std::move(alphabet)), max_weight_(max_weight)
    {
        if (!alpha_) throw AlgebraError("series without alphabet");
        if (max_weight_ < 0) throw AlgebraError("negative truncation order");
    }

    static NCSeries constant(AlphabetPtr a, int n, const Rational &c)
    {
        NCSeries s(std::move(a), n);
        s.add_term({}, c);
        return s;
    }
    static NCSeries one(AlphabetPtr a, int n) { return constant(std::move(a), n, 1); }
    static NCSeries letter(AlphabetPtr a, int n, Letter l, const Rational &c = 1)
    {
        NCSeries s(std::move(a), n);
        s.add_term({l}, c);
        return s;
    }
    static NCSeries monomial(AlphabetPtr a, int n, Word w, const Rational &c = 1)
    {
        NCSeries s(std::move(a), n);
        s.add_term(std::move(w), c);
        return s;
    }

    const AlphabetPtr &alphabet() const { return alpha_; }
    int max_weight() const { return max_weight_; }
    const Terms &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coefficient(const Word &w) const
    {
        auto it = terms_.find(w);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    Rational constant_term() const { return coefficient({}); }

    // Adds c·w, dropping it when its weight exceeds the truncation order.
    void add_term(const Word &w, const Rational &c)
    {
        if (sgn(c) == 0) return;
        if (word_weight(*alpha_, w) > max_weight_) return;
        auto [it, fresh] = terms_.try_emplace(w, c);
        if (!fresh) {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    NCSeries &operator+=(const NCSeries &o)
    {
        check_compatible(o);
        for (const auto &[w, c] : o.terms_) add_term(w, c);
        return *this;
    }
    NCSeries &operator-=(const NCSeries &o)
    {
        check_compatible(o);
        for (const auto &[w, c] : o.terms_) add_term(w, -c);
        return *this;
    }
    NCSeries &operator*=(const Rational &c)
    {
        if (sgn(c) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto &kv : terms_) kv.second *= c;
        return *this;
    }
    friend NCSeries operator+(NCSeries a, const NCSeries &b) { return a += b; }
    friend NCSeries operator-(NCSeries a, const NCSeries &b) { return a -= b; }
    friend NCSeries operator-(NCSeries a)
    {
        for (auto &kv : a.terms_) kv.second = -kv.second;
        return a;
    }
    friend NCSeries operator*(NCSeries a, const Rational &c) { return a *= c; }
    friend NCSeries operator*(const Rational &c, NCSeries a) { return a *= c; }

    // Concatenation product, truncated. Word concatenation carries no sign.
    friend NCSeries operator*(const NCSeries &a, const NCSeries &b)
    {
        a.check_compatible(b);
        NCSeries r(a.alpha_, a.max_weight_);
        const Alphabet &al = *a.alpha_;
        for (const auto &[wa, ca] : a.terms_) {
            int wta = word_weight(al, wa);
            for (const auto &[wb, cb] : b.terms_) {
                if (wta + word_weight(al, wb) > r.max_weight_) {
                    // b's terms are ordered by length; with unit weights nothing later fits.
                    continue;
                }
                r.add_term(concat(wa, wb), ca * cb);
            }
        }
        return r;
    }

    friend bool operator==(const NCSeries &a, const NCSeries &b)
    {
        return a.max_weight_ == b.max_weight_ && same_alphabet(a, b) && a.terms_ == b.terms_;
    }
    friend bool operator!=(const NCSeries &a, const NCSeries &b) { return !(a == b); }

    NCSeries truncated(int n) const
    {
        NCSeries r(alpha_, std::min(n, max_weight_));
        for (const auto &[w, c] : terms_) r.add_term(w, c);
        return r;
    }
    // Same terms, different truncation order (may raise it).
    NCSeries with_max_weight(int n) const
    {
        NCSeries r(alpha_, n);
        for (const auto &[w, c] : terms_) r.add_term(w, c);
        return r;
    }
    NCSeries homogeneous(int weight) const
    {
        NCSeries r(alpha_, max_weight_);
        for (const auto &[w, c] : terms_)
            if (word_weight(*alpha_, w) == weight) r.terms_.emplace(w, c);
        return r;
    }
    NCSeries without_constant() const
    {
        NCSeries r = *this;
        r.terms_.erase(Word{});
        return r;
    }
    // Part of cohomological degree d.
    NCSeries degree_part(int d) const
    {
        NCSeries r(alpha_, max_weight_);
        for (const auto &[w, c] : terms_)
            if (word_degree(*alpha_, w) == d) r.terms_.emplace(w, c);
        return r;
    }
    int min_weight() const
    {
        int m = -1;
        for (const auto &kv : terms_) {
            int w = word_weight(*alpha_, kv.first);
            if (m < 0 || w < m) m = w;
        }
        return m;
    }
    // True when every term uses only letters accepted by pred.
    template <class Pred>
    bool letters_satisfy(Pred pred) const
    {
        for (const auto &kv : terms_)
            for (Letter l : kv.first)
                if (!pred(l)) return false;
        return true;
    }

    friend bool same_alphabet(const NCSeries &a, const NCSeries &b)
    {
        return a.alpha_ == b.alpha_ || (a.alpha_ && b.alpha_ && *a.alpha_ == *b.alpha_);
    }

    void check_compatible(const NCSeries &o) const
    {
        if (!same_alphabet(*this, o)) throw AlgebraError("alphabet mismatch");
        if (max_weight_ != o.max_weight_) throw AlgebraError("truncation order mismatch");
    }

private:
    AlphabetPtr alpha_;
    int max_weight_ = 0;
    Terms terms_;
};

inline NCSeries power(const NCSeries &a, int k)
{
    NCSeries r = NCSeries::one(a.alphabet(), a.max_weight());
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
}

inline Rational factorial(int k)
{
    mpz_class f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return Rational(f);
}

} // namespace lieworld
