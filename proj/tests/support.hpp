#pragma once

#include <random>

#include <lieworld/lie.hpp>

namespace lieworld::testing {

// Random series with small integer coefficients over the given letters.
inline NCSeries random_series(std::mt19937_64 &rng, const AlphabetPtr &a, int n, const std::vector<Letter> &letters,
                              int min_len, int max_len, int terms)
{
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> len(min_len, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
    NCSeries s(a, n);
    for (int k = 0; k < terms; ++k) {
        Word w;
        int l = len(rng);
        for (int i = 0; i < l; ++i) w.push_back(letters[pick(rng)]);
        s.add_term(w, coeff(rng));
    }
    return s;
}

// Random Lie series: integer combination of left-normed brackets.
inline NCSeries random_lie(std::mt19937_64 &rng, const AlphabetPtr &a, int n, const std::vector<Letter> &letters,
                           int min_len, int max_len, int terms)
{
    NCSeries s = random_series(rng, a, n, letters, min_len, max_len, terms);
    NCSeries r(a, n);
    for (const auto &[w, c] : s.terms()) r += left_normed(a, n, w) * c;
    return r;
}

inline std::vector<Letter> letters_of(const Alphabet &a, LetterKind k)
{
    std::vector<Letter> v;
    for (std::size_t l = 0; l < a.size(); ++l)
        if (a.kind(static_cast<Letter>(l)) == k) v.push_back(static_cast<Letter>(l));
    return v;
}

} // namespace lieworld::testing
