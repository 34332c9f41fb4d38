#pragma once

// Text expressions and JSON documents for series, functions and matrices.
//
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor (['*'] factor)*
//   factor  := primary ['^' k]
//   primary := number | p/q | name | '(' expr ')' | '[' expr ',' expr ']'
//            | '<' expr ',' expr '>' | 'ad(' expr ')' ['^' k] factor
//            | 'bch(' expr ',' expr ')' | 'exp(' expr ')' | 'd(' expr ')'
//
// Names are the generators of the alphabet (x1, dx1, p1, t). A pairing
// yields a function; everything else is a series in the free algebra.

#include <cctype>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "geometry.hpp"

namespace lieworld {

class ParseError : public AlgebraError {
public:
    ParseError(const std::string &msg, std::size_t pos)
        : AlgebraError("column " + std::to_string(pos + 1) + ": " + msg), position(pos)
    {
    }
    std::size_t position;
};

using Expression = std::variant<NCSeries, CyclicSeries>;

namespace detail {

class Parser {
public:
    Parser(const std::string &text, AlphabetPtr a, int N) : src_(text), alpha_(std::move(a)), N_(N) {}

    Expression run()
    {
        Expression e = expr();
        skip();
        if (pos_ < src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string &msg) const { throw ParseError(msg, pos_); }
    [[noreturn]] void fail_at(const std::string &msg, std::size_t p) const { throw ParseError(msg, p); }

    void skip()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool peek(char c)
    {
        skip();
        return pos_ < src_.size() && src_[pos_] == c;
    }
    bool accept(char c)
    {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }
    void expect(char c)
    {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    bool starts_primary()
    {
        skip();
        if (pos_ >= src_.size()) return false;
        char c = src_[pos_];
        return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '[' || c == '<';
    }

    NCSeries scalar(const Rational &c) const { return NCSeries::constant(alpha_, N_, c); }

    static bool is_scalar(const NCSeries &s)
    {
        return s.is_zero() || (s.size() == 1 && s.terms().begin()->first.empty());
    }

    NCSeries series(Expression e, std::size_t at) const
    {
        if (auto *s = std::get_if<NCSeries>(&e)) return std::move(*s);
        fail_at("a function cannot be used as a series here", at);
    }

    Expression add(Expression a, Expression b, bool minus, std::size_t at) const
    {
        if (std::holds_alternative<NCSeries>(a) && std::holds_alternative<NCSeries>(b)) {
            auto &x = std::get<NCSeries>(a);
            const auto &y = std::get<NCSeries>(b);
            return minus ? x - y : x + y;
        }
        auto as_function = [&](Expression &e) -> CyclicSeries {
            if (auto *f = std::get_if<CyclicSeries>(&e)) return *f;
            const auto &s = std::get<NCSeries>(e);
            if (!s.is_zero()) fail_at("cannot add a function and a series", at);
            return CyclicSeries(alpha_, N_);
        };
        CyclicSeries x = as_function(a), y = as_function(b);
        return minus ? x - y : x + y;
    }

    Expression mul(Expression a, Expression b, std::size_t at) const
    {
        auto *sa = std::get_if<NCSeries>(&a);
        auto *sb = std::get_if<NCSeries>(&b);
        if (sa && sb) return *sa * *sb;
        if (sa && is_scalar(*sa)) return std::get<CyclicSeries>(b) * sa->constant_term();
        if (sb && is_scalar(*sb)) return std::get<CyclicSeries>(a) * sb->constant_term();
        fail_at("functions only multiply by scalars", at);
    }

    Expression expr()
    {
        std::size_t at = pos_;
        bool minus = false;
        if (accept('-'))
            minus = true;
        else
            accept('+');
        Expression e = term();
        if (minus) e = add(scalar(0), std::move(e), true, at);
        for (;;) {
            at = pos_;
            if (accept('+'))
                e = add(std::move(e), term(), false, at);
            else if (accept('-'))
                e = add(std::move(e), term(), true, at);
            else
                return e;
        }
    }

    Expression term()
    {
        Expression e = factor();
        for (;;) {
            std::size_t at = pos_;
            if (accept('*'))
                e = mul(std::move(e), factor(), at);
            else if (starts_primary())
                e = mul(std::move(e), factor(), at);
            else
                return e;
        }
    }

    int exponent()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a nonnegative integer exponent");
        return std::stoi(src_.substr(start, pos_ - start));
    }

    Expression factor()
    {
        std::size_t at = pos_;
        Expression e = primary();
        if (accept('^')) {
            int k = exponent();
            NCSeries s = series(std::move(e), at);
            e = power(s, k);
        }
        return e;
    }

    Rational number()
    {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        std::string text = src_.substr(start, pos_ - start);
        if (pos_ < src_.size() && src_[pos_] == '/') {
            ++pos_;
            std::size_t d = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            if (d == pos_) fail("expected a denominator");
            text += "/" + src_.substr(d, pos_ - d);
        }
        Rational q(text);
        if (sgn(q.get_den()) == 0) fail_at("zero denominator", start);
        q.canonicalize();
        return q;
    }

    std::string identifier()
    {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        return src_.substr(start, pos_ - start);
    }

    static int parity_of(const NCSeries &s)
    {
        int p = -1;
        for (const auto &kv : s.terms()) {
            int q = word_parity(*s.alphabet(), kv.first);
            if (p >= 0 && p != q) return -1;
            p = q;
        }
        return p < 0 ? 0 : p;
    }

    Expression primary()
    {
        skip();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        std::size_t at = pos_;
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return scalar(number());
        if (accept('(')) {
            Expression e = expr();
            expect(')');
            return e;
        }
        if (accept('[')) {
            NCSeries a = series(expr(), at);
            expect(',');
            NCSeries b = series(expr(), at);
            expect(']');
            return lie_bracket(a, b);
        }
        if (accept('<')) {
            NCSeries a = series(expr(), at);
            expect(',');
            NCSeries b = series(expr(), at);
            expect('>');
            if (parity_of(a) < 0 || parity_of(b) < 0) fail_at("pairing arguments must have a definite parity", at);
            return pair(a, b);
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
        std::string name = identifier();
        if (peek('(') && (name == "ad" || name == "bch" || name == "exp" || name == "d")) {
            expect('(');
            Expression a = expr();
            if (name == "d") {
                expect(')');
                if (auto *s = std::get_if<NCSeries>(&a)) return de_rham(*s);
                return de_rham(std::get<CyclicSeries>(a));
            }
            NCSeries sa = series(std::move(a), at);
            if (name == "exp") {
                expect(')');
                if (sgn(sa.constant_term()) != 0) fail_at("exp needs a series without constant term", at);
                return series_exp(sa);
            }
            if (name == "bch") {
                expect(',');
                NCSeries sb = series(expr(), at);
                expect(')');
                if (sgn(sa.constant_term()) != 0 || sgn(sb.constant_term()) != 0)
                    fail_at("bch needs series without constant term", at);
                return bch(sa, sb);
            }
            expect(')');
            int k = 1;
            if (accept('^')) k = exponent();
            NCSeries b = series(factor(), at);
            for (int i = 0; i < k; ++i) b = lie_bracket(sa, b);
            return b;
        }
        auto l = alpha_->find(name);
        if (!l) fail_at("unknown identifier '" + name + "'", at);
        return NCSeries::letter(alpha_, N_, *l);
    }

    const std::string &src_;
    AlphabetPtr alpha_;
    int N_;
    std::size_t pos_ = 0;
};

inline std::string word_string(const Alphabet &a, const Word &w, const char *sep)
{
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += sep;
        out += a[w[i]].name;
    }
    return out;
}

inline std::string lyndon_string(const Alphabet &a, const Word &w)
{
    if (w.size() == 1) return a[w[0]].name;
    for (std::size_t i = 1; i < w.size(); ++i) {
        Word v(w.begin() + static_cast<long>(i), w.end());
        if (is_lyndon(v)) {
            Word u(w.begin(), w.begin() + static_cast<long>(i));
            return "[" + lyndon_string(a, u) + "," + lyndon_string(a, v) + "]";
        }
    }
    throw AlgebraError("not a Lyndon word");
}

// Joins signed terms; a unit coefficient is dropped unless the body is empty.
inline std::string join_terms(const std::vector<std::pair<Rational, std::string>> &terms, bool bracket_style)
{
    if (terms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto &[c, body] = terms[i];
        bool neg = sgn(c) < 0;
        Rational m = neg ? Rational(-c) : c;
        if (i == 0)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (body.empty()) {
            out += m.get_str();
        } else if (m == 1) {
            out += body;
        } else {
            out += m.get_str();
            out += (bracket_style && (body[0] == '[' || body[0] == '<')) ? "" : "*";
            out += body;
        }
    }
    return out;
}

} // namespace detail

inline Expression parse(const std::string &text, const AlphabetPtr &a, int N)
{
    return detail::Parser(text, a, N).run();
}

inline Expression parse(const std::string &text, const LieSpace &s) { return parse(text, s.alphabet, s.N); }

inline NCSeries parse_series(const std::string &text, const LieSpace &s)
{
    Expression e = parse(text, s);
    if (auto *f = std::get_if<CyclicSeries>(&e)) {
        if (!f->is_zero()) throw ParseError("expected a series, got a function", 0);
        return s.zero();
    }
    return std::get<NCSeries>(e);
}

inline CyclicSeries parse_function(const std::string &text, const LieSpace &s)
{
    Expression e = parse(text, s);
    if (auto *n = std::get_if<NCSeries>(&e)) {
        if (!n->is_zero()) throw ParseError("expected a function (use <a,b>), got a series", 0);
        return s.czero();
    }
    return std::get<CyclicSeries>(e);
}

// Lie series print in the Lyndon basis, anything else as words.
inline std::string print(const NCSeries &s)
{
    const Alphabet &a = *s.alphabet();
    std::vector<std::pair<Rational, std::string>> terms;
    if (!s.is_zero() && sgn(s.constant_term()) == 0) {
        if (auto ly = lyndon_decompose(s)) {
            std::vector<LyndonTerm> v = *ly;
            std::stable_sort(v.begin(), v.end(), [](const LyndonTerm &x, const LyndonTerm &y) { return WordLess{}(x.word, y.word); });
            for (const auto &t : v) terms.emplace_back(t.coeff, detail::lyndon_string(a, t.word));
            return detail::join_terms(terms, true);
        }
    }
    for (const auto &[w, c] : s.terms()) terms.emplace_back(c, detail::word_string(a, w, "*"));
    return detail::join_terms(terms, false);
}

// A canonical necklace z1 z2…zk prints as <z1,z2*…*zk>.
inline std::string print(const CyclicSeries &f)
{
    const Alphabet &a = *f.alphabet();
    std::vector<std::pair<Rational, std::string>> terms;
    for (const auto &[w, c] : f.terms()) {
        std::string body;
        if (w.empty())
            body = "<1,1>";
        else if (w.size() == 1)
            body = "<1," + a[w[0]].name + ">";
        else
            body = "<" + a[w[0]].name + "," + detail::word_string(a, Word(w.begin() + 1, w.end()), "*") + ">";
        terms.emplace_back(c, body);
    }
    return detail::join_terms(terms, true);
}

inline std::string print(const Expression &e)
{
    return std::visit([](const auto &v) { return print(v); }, e);
}

inline std::string print(const SeriesMatrix &m)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        os << "[";
        for (std::size_t j = 0; j < m.dim(); ++j) os << (j ? " | " : "") << print(m(i, j));
        os << "]\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Documents

using Json = nlohmann::json;

inline Json alphabet_doc(const Alphabet &a)
{
    Json g = Json::array();
    for (const auto &x : a.generators()) g.push_back({{"name", x.name}, {"degree", x.degree}, {"weight", x.weight}});
    return g;
}

// Rebuilds the standard Lie space alphabet when the layout matches, so that
// letter kinds stay available.
inline AlphabetPtr alphabet_from_doc(const Json &j)
{
    std::vector<Generator> gens;
    for (const auto &g : j) gens.push_back({g.at("name").get<std::string>(), g.at("degree").get<int>(), g.at("weight").get<int>()});
    if (gens.size() >= 4 && gens.size() % 3 == 1) {
        auto std_alpha = Alphabet::lie_space(static_cast<int>(gens.size() / 3));
        if (*std_alpha == Alphabet(gens)) return std_alpha;
    }
    return std::make_shared<Alphabet>(std::move(gens));
}

namespace detail {

template <class Terms>
Json terms_doc(const Alphabet &a, const Terms &terms)
{
    Json t = Json::array();
    for (const auto &[w, c] : terms) {
        Json word = Json::array();
        for (Letter l : w) word.push_back(a[l].name);
        t.push_back({{"coeff", c.get_str()}, {"word", word}});
    }
    return t;
}

template <class Add>
void read_terms(const Json &j, const Alphabet &a, Add add)
{
    for (const auto &t : j) {
        Word w;
        for (const auto &name : t.at("word")) {
            auto l = a.find(name.get<std::string>());
            if (!l) throw AlgebraError("document: unknown generator '" + name.get<std::string>() + "'");
            w.push_back(*l);
        }
        Rational c(t.at("coeff").get<std::string>());
        if (sgn(c.get_den()) == 0) throw AlgebraError("document: zero denominator");
        c.canonicalize();
        add(w, c);
    }
}

inline void require_type(const Json &j, const char *type)
{
    if (!j.contains("type") || j.at("type") != type) throw AlgebraError(std::string("document: expected type ") + type);
}

} // namespace detail

inline Json to_doc(const NCSeries &s)
{
    return {{"type", "series"},
            {"alphabet", alphabet_doc(*s.alphabet())},
            {"max_weight", s.max_weight()},
            {"terms", detail::terms_doc(*s.alphabet(), s.terms())}};
}

inline Json to_doc(const CyclicSeries &f)
{
    return {{"type", "function"},
            {"alphabet", alphabet_doc(*f.alphabet())},
            {"max_weight", f.max_weight()},
            {"terms", detail::terms_doc(*f.alphabet(), f.terms())}};
}

inline Json to_doc(const SeriesMatrix &m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(to_doc(m(i, j)));
        rows.push_back(row);
    }
    return {{"type", "matrix"},
            {"alphabet", alphabet_doc(*m.alphabet())},
            {"max_weight", m.max_weight()},
            {"dim", m.dim()},
            {"entries", rows}};
}

inline NCSeries series_from_doc(const Json &j, AlphabetPtr a = nullptr)
{
    detail::require_type(j, "series");
    if (!a) a = alphabet_from_doc(j.at("alphabet"));
    NCSeries s(a, j.at("max_weight").get<int>());
    detail::read_terms(j.at("terms"), *a, [&](const Word &w, const Rational &c) { s.add_term(w, c); });
    return s;
}

inline CyclicSeries function_from_doc(const Json &j, AlphabetPtr a = nullptr)
{
    detail::require_type(j, "function");
    if (!a) a = alphabet_from_doc(j.at("alphabet"));
    CyclicSeries f(a, j.at("max_weight").get<int>());
    detail::read_terms(j.at("terms"), *a, [&](const Word &w, const Rational &c) { f.add_word(w, c); });
    return f;
}

inline SeriesMatrix matrix_from_doc(const Json &j)
{
    detail::require_type(j, "matrix");
    AlphabetPtr a = alphabet_from_doc(j.at("alphabet"));
    std::size_t n = j.at("dim").get<std::size_t>();
    SeriesMatrix m(a, j.at("max_weight").get<int>(), n);
    const auto &rows = j.at("entries");
    if (rows.size() != n) throw AlgebraError("document: matrix row count");
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw AlgebraError("document: matrix column count");
        for (std::size_t k = 0; k < n; ++k) m(i, k) = series_from_doc(rows[i][k], a);
    }
    return m;
}

} // namespace lieworld
