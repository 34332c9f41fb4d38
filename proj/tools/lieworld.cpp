// Command-line front end for the lieworld library.
//
// Exit codes: 0 success, 1 nonzero residual from a check, 2 usage or input
// error, 3 internal invariant violation.

#include <iostream>
#include <regex>

#include <CLI11.hpp>

#include <lieworld/io.hpp>
#include <lieworld/quasi.hpp>
#include <lieworld/specialize.hpp>
#include <lieworld/taut.hpp>

using namespace lieworld;

namespace {

struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    int max_degree = 6;
    int vars = 0;
    std::string format = "text";
    std::uint64_t seed = 1;
    std::string algebra = "sl2";
    int n_max = 4;
    std::vector<std::string> args;
};

using Item = std::variant<std::string, NCSeries, CyclicSeries, SeriesMatrix, Json>;

class Report {
public:
    void add(std::string name, Item v) { items_.emplace_back(std::move(name), std::move(v)); }

    void emit(const std::string &command, const Options &o) const
    {
        if (o.format == "doc") {
            Json results = Json::object();
            for (const auto &[name, v] : items_)
                results[name.empty() ? command : name] = std::visit([](const auto &x) { return doc(x); }, v);
            Json out = {{"command", command}, {"max_degree", o.max_degree}, {"results", results}};
            std::cout << out.dump(2) << "\n";
            return;
        }
        for (const auto &[name, v] : items_) {
            std::string body = std::visit([](const auto &x) { return text(x); }, v);
            if (name.empty())
                std::cout << body << "\n";
            else if (body.find('\n') != std::string::npos)
                std::cout << name << ":\n" << body;
            else
                std::cout << name << ": " << body << "\n";
        }
    }

private:
    static Json doc(const std::string &s) { return s; }
    static Json doc(const Json &j) { return j; }
    template <class T>
    static Json doc(const T &x)
    {
        return to_doc(x);
    }
    static std::string text(const std::string &s) { return s; }
    static std::string text(const Json &j) { return j.dump(); }
    template <class T>
    static std::string text(const T &x)
    {
        return print(x);
    }

    std::vector<std::pair<std::string, Item>> items_;
};

// Largest coordinate index named in the arguments, so that --vars can be left
// out.
int vars_for(const Options &o, int fallback)
{
    if (o.vars > 0) return o.vars;
    static const std::regex id("(?:^|[^A-Za-z0-9])(?:dx|x|p)([0-9]+)");
    int n = 0;
    for (const auto &a : o.args)
        for (auto it = std::sregex_iterator(a.begin(), a.end(), id); it != std::sregex_iterator(); ++it)
            n = std::max(n, std::stoi((*it)[1]));
    return std::max(n, fallback);
}

LieSpace space(const Options &o, int fallback) { return LieSpace::make(vars_for(o, fallback), o.max_degree); }

const std::string &arg(const Options &o, std::size_t i, const char *what)
{
    if (i >= o.args.size()) throw CLI::ValidationError(std::string("missing argument: ") + what);
    return o.args[i];
}

CyclicSeries bivector_arg(const Options &o, std::size_t i, const LieSpace &s, const char *fallback)
{
    std::string text = i < o.args.size() ? o.args[i] : fallback;
    if (text.empty()) throw CLI::ValidationError("missing argument: bivector");
    if (text == "kks") return pi_kks(s);
    if (text == "symp") return pi_symp(s);
    CyclicSeries pi = parse_function(text, s);
    if (pi != pi.polyvector_degree_part(2) || !uses_only(pi, {LetterKind::x, LetterKind::p}))
        throw AlgebraError("expected a bivector in x and p letters");
    return pi;
}

std::string tuple_text(const std::vector<NCSeries> &v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + print(v[i]);
    return out + ")";
}

Json tuple_doc(const std::vector<NCSeries> &v)
{
    Json j = Json::array();
    for (const auto &x : v) j.push_back(to_doc(x));
    return j;
}

void add_tuple(Report &r, const Options &o, const std::string &name, const std::vector<NCSeries> &v)
{
    if (o.format == "doc")
        r.add(name, tuple_doc(v));
    else
        r.add(name, tuple_text(v));
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

int residual_status(Report &r, const std::string &name, const CyclicSeries &res)
{
    r.add(name, res);
    return res.is_zero() ? 0 : 1;
}

// ---------------------------------------------------------------------------

int cmd_bch(const Options &o, Report &r)
{
    auto s = space(o, 2);
    NCSeries a = parse_series(o.args.size() > 0 ? o.args[0] : "x1", s);
    NCSeries b = parse_series(o.args.size() > 1 ? o.args[1] : "x2", s);
    r.add("", bch(a, b));
    return 0;
}

int cmd_d(const Options &o, Report &r)
{
    auto s = space(o, 1);
    Expression e = parse(arg(o, 0, "expression"), s);
    if (auto *f = std::get_if<CyclicSeries>(&e))
        r.add("", de_rham(*f));
    else
        r.add("", de_rham(std::get<NCSeries>(e)));
    return 0;
}

int cmd_schouten(const Options &o, Report &r)
{
    auto s = space(o, 1);
    CyclicSeries a = parse_function(arg(o, 0, "first polyvector"), s);
    Expression b = parse(arg(o, 1, "second polyvector or series"), s);
    if (auto *f = std::get_if<CyclicSeries>(&b))
        r.add("", schouten(a, *f));
    else
        r.add("", schouten(a, std::get<NCSeries>(b)));
    return 0;
}

int cmd_check_poisson(const Options &o, Report &r)
{
    auto s = space(o, 2);
    return residual_status(r, "residual", poisson_residual(bivector_arg(o, 0, s, "kks")));
}

int cmd_gauge(const Options &o, Report &r)
{
    auto s = space(o, 2);
    CyclicSeries pi = bivector_arg(o, 0, s, "");
    CyclicSeries omega = parse_function(arg(o, 1, "two form"), s);
    r.add("closed", yes_no(de_rham(omega).is_zero()));
    SeriesMatrix g = gauge_transform(bivector_matrix(pi, s), two_form_matrix(omega, s));
    r.add("bivector", matrix_bivector(g, s));
    r.add("matrix", g);
    return 0;
}

int cmd_moment_solve(const Options &o, Report &r)
{
    auto s = space(o, 2);
    auto sol = solve_moment(bivector_arg(o, 0, s, "kks"), s);
    if (!sol.mu) {
        r.add("status", "no moment map: fails at weight " + std::to_string(sol.failing_weight));
        return 1;
    }
    r.add("mu", *sol.mu);
    r.add("kernel dimension", std::to_string(sol.kernel_dim));
    return 0;
}

int cmd_omega_from_moment(const Options &o, Report &r)
{
    auto s = space(o, 2);
    NCSeries eta = o.args.empty() ? bch(s.x(0), s.x(1)) : parse_series(o.args[0], s);
    if (o.args.empty() && s.n != 2) throw CLI::ValidationError("give a target series for n != 2");
    CyclicSeries pi = pi_kks(s);
    auto g = poisson_from_moment(pi, eta, s);
    r.add("omega", g.omega);
    r.add("bivector", g.bivector.with_max_weight(s.N));
    r.add("closed", yes_no(de_rham(g.omega).is_zero()));
    CyclicSeries pr = gauged_poisson_residual(g, s);
    NCSeries mr = gauged_moment_residual(g, eta, s);
    r.add("poisson residual", pr);
    r.add("moment residual", mr);
    if (!pr.is_zero() || !mr.is_zero() || !de_rham(g.omega).is_zero())
        throw InvariantError("gauged structure fails its residual checks");
    return 0;
}

int cmd_solve_F(const Options &o, Report &r)
{
    auto s = LieSpace::make(2, o.max_degree);
    TAutElem F = solve_F(s);
    TDer u = taut_log(F, s);
    std::vector<NCSeries> lo;
    for (const auto &c : u.comps) lo.push_back(c.truncated(std::max(0, s.N - 1)).with_max_weight(s.N));
    add_tuple(r, o, "log F", lo);
    add_tuple(r, o, "F", F.comps);
    NCSeries res = f_residual(F, s);
    r.add("residual", res);
    if (!res.is_zero()) throw InvariantError("F(bch(x1,x2)) != x1 + x2");
    return 0;
}

int cmd_f_from_assoc(const Options &o, Report &r)
{
    auto s = LieSpace::make(2, o.max_degree);
    NCSeries phi = parse_series(arg(o, 0, "associator"), s);
    TAutElem F = f_from_associator(phi, s);
    add_tuple(r, o, "F", F.comps);
    r.add("residual", f_residual(F, s));
    return 0;
}

int cmd_phi_F(const Options &o, Report &r)
{
    auto two = LieSpace::make(2, o.max_degree), three = LieSpace::make(3, o.max_degree);
    TAutElem F = solve_F(two);
    TAutElem phi = phi_F(F, two, three);
    add_tuple(r, o, "Phi", phi.comps);
    auto v = ham_test(phi, three);
    r.add("fixes x1+x2+x3", yes_no(v.fixes_sum));
    r.add("log closed", yes_no(v.log_closed));
    if (!v.agree()) throw InvariantError("ham_test verdicts disagree");
    return 0;
}

int cmd_check_dybe(const Options &o, Report &r)
{
    auto one = LieSpace::make(1, o.max_degree);
    return residual_status(r, "residual", dybe_residual(one));
}

int cmd_fusion_sigma(const Options &o, Report &r)
{
    auto two = LieSpace::make(2, o.max_degree);
    auto f = fusion_structure(two);
    r.add("sigma", f.sigma);
    r.add("bivector", f.bivector);
    r.add("omega", f.omega);
    return residual_status(r, "maurer-cartan residual", maurer_cartan_residual(pi_kks(two), f.sigma));
}

int cmd_weinstein_split(const Options &o, Report &r)
{
    auto s = space(o, 2);
    auto w = weinstein_split(bivector_arg(o, 0, s, ""), s);
    add_tuple(r, o, "map", w.map.images);
    r.add("symplectic pairs", std::to_string(w.symplectic_pairs));
    r.add("bivector", w.bivector);
    return 0;
}

int cmd_casimirs(const Options &o, Report &r)
{
    auto s = space(o, 2);
    auto basis = casimir_search(bivector_arg(o, 0, s, "kks"), s.N, s);
    r.add("count", std::to_string(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) r.add("casimir " + std::to_string(i + 1), basis[i]);
    return 0;
}

int cmd_specialize(const Options &o, Report &r)
{
    auto s = space(o, 1);
    auto ctx = make_context(o.algebra);
    std::mt19937_64 rng(o.seed);
    Point x = random_point(ctx, s.n, rng);
    Expression e = parse(arg(o, 0, "expression"), s);
    if (auto *n = std::get_if<NCSeries>(&e)) {
        if (!uses_only(*n, {LetterKind::x})) throw AlgebraError("series must use x letters only");
        std::ostringstream os;
        os << eval_lie(ctx, *n, x) << "\n";
        r.add("value", os.str());
        return 0;
    }
    const auto &f = std::get<CyclicSeries>(e);
    std::size_t k = 0;
    for (const auto &kv : f.terms()) {
        std::size_t c = 0;
        for (Letter l : kv.first) c += detail::is_odd_letter(*s.alphabet, l);
        k = std::max(k, c);
    }
    std::vector<Point> odd;
    for (std::size_t i = 0; i < k; ++i) odd.push_back(random_point(ctx, s.n, rng));
    auto v = eval_function_scaled(ctx, f, x, odd);
    std::ostringstream os;
    os.precision(17);
    os << v.value;
    r.add("value", os.str());
    os.str("");
    os << v.scale;
    r.add("scale", os.str());
    return 0;
}

int cmd_probe_faith(const Options &o, Report &r)
{
    auto s = space(o, 1);
    Expression e = parse(arg(o, 0, "expression"), s);
    FaithfulnessReport rep = std::visit([&](const auto &v) { return faithfulness_probe(v, o.n_max, o.seed); }, e);
    r.add("first nonzero", rep.first_nonzero ? "sl" + std::to_string(*rep.first_nonzero) : std::string("none"));
    for (const auto &[n, v] : rep.largest) {
        std::ostringstream os;
        os << v;
        r.add("sl" + std::to_string(n), os.str());
    }
    return 0;
}

void emit_error(int code, const std::string &kind, const std::string &msg, std::optional<std::size_t> pos = {})
{
    Json e = {{"exit_code", code}, {"kind", kind}, {"message", msg}};
    if (pos) e["position"] = *pos;
    std::cerr << Json{{"error", e}}.dump() << "\n";
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"lieworld: exact computations on Lie spaces"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--max-degree", o.max_degree, "truncation order N")->check(CLI::Range(1, 16));
    app.add_option("--vars", o.vars, "number of coordinates (default: inferred)")->check(CLI::Range(1, 9));
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "doc"}));

    using Handler = int (*)(const Options &, Report &);
    const std::vector<std::tuple<std::string, std::string, Handler>> commands{
        {"bch", "log(e^a e^b), default a = x1, b = x2", cmd_bch},
        {"d", "de Rham differential of an expression", cmd_d},
        {"schouten", "Schouten bracket of two polyvectors", cmd_schouten},
        {"check-poisson", "[Pi,Pi] for a bivector (kks, symp or an expression)", cmd_check_poisson},
        {"gauge", "(1 - Pi omega)^-1 Pi for a bivector and a two form", cmd_gauge},
        {"moment-solve", "solve [Pi,mu] = rho", cmd_moment_solve},
        {"omega-from-moment", "closed form and bivector with moment map eta (default bch)", cmd_omega_from_moment},
        {"solve-F", "F in TAut_2 with F(bch(x1,x2)) = x1 + x2", cmd_solve_F},
        {"f-from-assoc", "F built from an associator in x1, x2", cmd_f_from_assoc},
        {"phi-F", "associator Phi^F derived from F", cmd_phi_F},
        {"check-dybe", "dynamical Yang-Baxter residual of T", cmd_check_dybe},
        {"fusion-sigma", "fusion two form sigma and its Poisson structure", cmd_fusion_sigma},
        {"weinstein-split", "split a bivector into symplectic and degenerate parts", cmd_weinstein_split},
        {"casimirs", "basis of Casimir functions up to the truncation order", cmd_casimirs},
        {"specialize", "evaluate on a random point of a matrix Lie algebra", cmd_specialize},
        {"probe-faith", "smallest sl(N) where an object is nonzero", cmd_probe_faith},
    };
    std::vector<std::pair<CLI::App *, Handler>> subs;
    for (const auto &[name, help, h] : commands) {
        CLI::App *sub = app.add_subcommand(name, help);
        sub->add_option("args", o.args, "expressions");
        if (name == "specialize" || name == "probe-faith") {
            sub->add_option("--seed", o.seed, "random seed");
            sub->add_option("--algebra", o.algebra, "sl2..sl9, gl2..gl9");
        }
        if (name == "probe-faith") sub->add_option("--n-max", o.n_max, "largest N to try")->check(CLI::Range(2, 9));
        subs.emplace_back(sub, h);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        emit_error(2, "usage", e.what());
        return 2;
    }

    for (const auto &[sub, handler] : subs) {
        if (!sub->parsed()) continue;
        try {
            Report r;
            int code = handler(o, r);
            r.emit(sub->get_name(), o);
            return code;
        } catch (const ParseError &e) {
            emit_error(2, "parse", e.what(), e.position);
            return 2;
        } catch (const CLI::Error &e) {
            emit_error(2, "usage", e.what());
            return 2;
        } catch (const InvariantError &e) {
            emit_error(3, "invariant", e.what());
            return 3;
        } catch (const AlgebraError &e) {
            emit_error(2, "input", e.what());
            return 2;
        } catch (const std::exception &e) {
            emit_error(3, "internal", e.what());
            return 3;
        }
    }
    return 2;
}
